#ifndef COMBIMOTS_BANDIT_HPP
#define COMBIMOTS_BANDIT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "combimots/types.hpp"

namespace combimots {

/// Flat multi-objective bandit: the depth-1 special case of the tree
/// engine's selection.
struct BanditArm {
    ObjectiveVector mean;   // reward expectation, in [0,1]^D
    ObjectiveVector drift;  // residual drift amplitude, decays as 1/(1+t)
};

struct BanditInstance {
    std::vector<BanditArm> arms;
    double noise_half_width = 0.05;  // uniform +-h per dimension, clamped

    std::size_t num_arms() const { return arms.size(); }
    Index dim() const { return arms.empty() ? 0 : arms.front().mean.size(); }

    /// Pareto-optimal arms by mean vector.
    std::vector<bool> optimal_mask() const;

    void validate() const;
    static BanditInstance from_json_file(const std::string& path);
};

enum class BanditPolicy { ParetoPucb, ScalarizedUcb };

struct RegretTrace {
    std::vector<int> selected;          // arm index per step, size = horizon
    std::vector<long long> final_counts;
    std::vector<bool> failure;          // selected arm not Pareto-optimal
};

/// Deterministic per seed. With zero noise and zero drift the Pareto
/// policy consumes exactly one RNG draw per step, matching the tree
/// engine's selection stream on a depth-1 tree.
RegretTrace run_bandit(const BanditInstance& instance, BanditPolicy policy,
                       long long horizon, std::uint64_t seed,
                       double exploration_c = 1.0);

struct ArmFit {
    std::size_t arm = 0;
    bool dominated = false;
    double log_coefficient = 0.0;   // a in a*ln(n)+b
    double log_r2 = 0.0;
    double linear_r2 = 0.0;
    double sup_ratio = 0.0;         // sup_n T_k(n)/ln(n)
    bool passed = false;            // dominated arms: ln fit beats linear
};

struct LogBoundReport {
    std::vector<ArmFit> fits;
    bool passed = false;  // every dominated arm passed
};

/// Cross-seed mean T_k(n) at log-spaced n in [1000, horizon], fit against
/// a*ln(n)+b and against a*n+b; a dominated arm passes when the log model
/// explains its counts better than the linear one.
LogBoundReport check_log_bound(const std::vector<RegretTrace>& traces,
                               const BanditInstance& instance);

struct DecayReport {
    std::vector<long long> decade_t;
    std::vector<double> estimates;  // P(I_t not in P*), windowed over (t/10, t]
    double baseline = 0.0;          // failure rate over the first K steps
    double loglog_slope = 0.0;
    bool strictly_decreasing = false;
    bool passed = false;
};

/// Estimates the failure probability at decade horizons by cross-seed
/// averaging; passes on a negative log-log slope with the horizon
/// estimate below the baseline (or identically zero failures).
DecayReport check_failure_decay(const std::vector<RegretTrace>& traces,
                                const BanditInstance& instance);

void write_trace_csv(const std::string& path, const RegretTrace& trace);

}  // namespace combimots

#endif
