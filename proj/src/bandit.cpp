#include "combimots/bandit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "combimots/engine.hpp"
#include "combimots/pareto.hpp"
#include "combimots/rng.hpp"

namespace combimots {

std::vector<bool> BanditInstance::optimal_mask() const {
    std::vector<bool> optimal(arms.size(), true);
    for (std::size_t i = 0; i < arms.size(); ++i) {
        for (std::size_t j = 0; j < arms.size(); ++j) {
            if (i != j && dominates(arms[j].mean, arms[i].mean)) {
                optimal[i] = false;
                break;
            }
        }
    }
    return optimal;
}

void BanditInstance::validate() const {
    if (arms.size() < 2) throw ConfigError("bandit instance needs K >= 2 arms");
    for (const auto& arm : arms) {
        if (arm.mean.size() != dim()) {
            throw DimensionError("bandit arm mean dimensions are inconsistent");
        }
        if ((arm.mean < 0.0).any() || (arm.mean > 1.0).any()) {
            throw ValueError("bandit arm means must lie in [0,1]");
        }
    }
    if (noise_half_width < 0.0) {
        throw ValueError("noise half-width must be non-negative");
    }
}

BanditInstance BanditInstance::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open bandit instance file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("bandit instance parse failure in " + path + ": " +
                          e.what());
    }
    BanditInstance instance;
    instance.noise_half_width = doc.value("noise", 0.05);
    for (const auto& item : doc.at("arms")) {
        BanditArm arm;
        const auto& mean = item.at("mean");
        arm.mean = ObjectiveVector(static_cast<Index>(mean.size()));
        for (std::size_t d = 0; d < mean.size(); ++d) {
            arm.mean[static_cast<Index>(d)] = mean[d].get<double>();
        }
        arm.drift = ObjectiveVector::Zero(arm.mean.size());
        if (item.contains("drift")) {
            const auto& drift = item.at("drift");
            for (std::size_t d = 0; d < drift.size() &&
                                    d < static_cast<std::size_t>(arm.mean.size());
                 ++d) {
                arm.drift[static_cast<Index>(d)] = drift[d].get<double>();
            }
        }
        instance.arms.push_back(std::move(arm));
    }
    instance.validate();
    return instance;
}

RegretTrace run_bandit(const BanditInstance& instance, BanditPolicy policy,
                       long long horizon, std::uint64_t seed,
                       double exploration_c) {
    instance.validate();
    const auto num_arms = instance.num_arms();
    if (horizon < static_cast<long long>(num_arms)) {
        throw InsufficientInputError(
            "bandit horizon must allow every arm to be selected once");
    }
    const Index dim = instance.dim();
    Rng rng(seed);

    std::vector<long long> counts(num_arms, 0);
    std::vector<ObjectiveVector> reward_sums(num_arms,
                                             ObjectiveVector::Zero(dim));
    const std::vector<bool> optimal = instance.optimal_mask();
    const ObjectiveVector equal_weights =
        ObjectiveVector::Constant(dim, 1.0 / static_cast<double>(dim));

    RegretTrace trace;
    trace.selected.reserve(static_cast<std::size_t>(horizon));
    trace.failure.reserve(static_cast<std::size_t>(horizon));

    for (long long t = 0; t < horizon; ++t) {
        const long long parent_visits = t;
        std::vector<ObjectiveVector> scores;
        scores.reserve(num_arms);
        for (std::size_t k = 0; k < num_arms; ++k) {
            scores.push_back(pucb(reward_sums[k], counts[k], parent_visits,
                                  exploration_c, instance.arms[k].mean));
        }
        std::size_t pick;
        if (t < static_cast<long long>(num_arms)) {
            // initialization sweep: every arm selected once
            pick = static_cast<std::size_t>(t);
        } else if (policy == BanditPolicy::ParetoPucb) {
            pick = select_from_front(scores, rng);
        } else {
            std::vector<double> scalar(num_arms);
            for (std::size_t k = 0; k < num_arms; ++k) {
                scalar[k] = (scores[k] * equal_weights).sum();
            }
            pick = select_argmax(scalar, rng);
        }

        ObjectiveVector reward =
            instance.arms[pick].mean +
            instance.arms[pick].drift / (1.0 + static_cast<double>(counts[pick]));
        if (instance.noise_half_width > 0.0) {
            for (Index d = 0; d < dim; ++d) {
                reward[d] += instance.noise_half_width * (2.0 * rng.uniform01() - 1.0);
            }
        }
        reward = reward.min(1.0).max(0.0);

        counts[pick] += 1;
        reward_sums[pick] += reward;
        trace.selected.push_back(static_cast<int>(pick));
        trace.failure.push_back(!optimal[pick]);
    }
    trace.final_counts = std::move(counts);
    return trace;
}

namespace {

struct Fit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

Fit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<Index>(x.size());
    Eigen::MatrixXd design(n, 2);
    Eigen::VectorXd target(n);
    for (Index i = 0; i < n; ++i) {
        design(i, 0) = x[static_cast<std::size_t>(i)];
        design(i, 1) = 1.0;
        target(i) = y[static_cast<std::size_t>(i)];
    }
    const Eigen::Vector2d coef =
        design.colPivHouseholderQr().solve(target);
    const double ss_res = (design * coef - target).squaredNorm();
    const double mean = target.mean();
    const double ss_tot = (target.array() - mean).matrix().squaredNorm();
    Fit fit;
    fit.slope = coef(0);
    fit.intercept = coef(1);
    fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

std::vector<long long> log_spaced(long long lo, long long hi, int points) {
    std::vector<long long> out;
    for (int i = 0; i < points; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(points - 1);
        const auto n = static_cast<long long>(std::llround(
            static_cast<double>(lo) *
            std::pow(static_cast<double>(hi) / static_cast<double>(lo), f)));
        if (out.empty() || n > out.back()) out.push_back(n);
    }
    return out;
}

}  // namespace

LogBoundReport check_log_bound(const std::vector<RegretTrace>& traces,
                               const BanditInstance& instance) {
    if (traces.empty()) throw EmptyInputError("check_log_bound: no traces");
    const auto horizon = static_cast<long long>(traces.front().selected.size());
    if (horizon < 1000) {
        throw InsufficientInputError(
            "check_log_bound needs a horizon of at least 1000 steps");
    }
    const auto num_arms = instance.num_arms();
    const std::vector<bool> optimal = instance.optimal_mask();
    const std::vector<long long> samples = log_spaced(1000, horizon, 30);

    // cross-seed mean T_k(n) at the sample points
    std::vector<std::vector<double>> mean_counts(
        num_arms, std::vector<double>(samples.size(), 0.0));
    for (const auto& trace : traces) {
        std::vector<long long> counts(num_arms, 0);
        std::size_t si = 0;
        for (long long t = 0; t < horizon && si < samples.size(); ++t) {
            counts[static_cast<std::size_t>(trace.selected[static_cast<std::size_t>(t)])]++;
            while (si < samples.size() && t + 1 == samples[si]) {
                for (std::size_t k = 0; k < num_arms; ++k) {
                    mean_counts[k][si] += static_cast<double>(counts[k]);
                }
                ++si;
            }
        }
    }
    for (auto& row : mean_counts) {
        for (double& v : row) v /= static_cast<double>(traces.size());
    }

    LogBoundReport report;
    report.passed = true;
    std::vector<double> log_x, lin_x;
    for (long long n : samples) {
        log_x.push_back(std::log(static_cast<double>(n)));
        lin_x.push_back(static_cast<double>(n));
    }
    for (std::size_t k = 0; k < num_arms; ++k) {
        ArmFit fit;
        fit.arm = k;
        fit.dominated = !optimal[k];
        const Fit log_fit = least_squares(log_x, mean_counts[k]);
        const Fit lin_fit = least_squares(lin_x, mean_counts[k]);
        fit.log_coefficient = log_fit.slope;
        fit.log_r2 = log_fit.r2;
        fit.linear_r2 = lin_fit.r2;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            fit.sup_ratio = std::max(fit.sup_ratio, mean_counts[k][i] / log_x[i]);
        }
        fit.passed = fit.log_r2 > fit.linear_r2;
        if (fit.dominated && !fit.passed) report.passed = false;
        report.fits.push_back(fit);
    }
    return report;
}

DecayReport check_failure_decay(const std::vector<RegretTrace>& traces,
                                const BanditInstance& instance) {
    if (traces.size() < 100) {
        throw InsufficientInputError(
            "check_failure_decay needs at least 100 seeds");
    }
    const auto horizon = static_cast<long long>(traces.front().selected.size());
    const auto num_arms = static_cast<long long>(instance.num_arms());

    DecayReport report;
    for (long long t = 100; t <= horizon; t *= 10) report.decade_t.push_back(t);
    if (report.decade_t.empty()) {
        throw InsufficientInputError("check_failure_decay horizon below 100");
    }

    // failure rate over the window (t/10, t], averaged across seeds
    for (long long t : report.decade_t) {
        const long long lo = t / 10;
        long long failures = 0;
        long long steps = 0;
        for (const auto& trace : traces) {
            for (long long s = lo; s < t; ++s) {
                failures += trace.failure[static_cast<std::size_t>(s)] ? 1 : 0;
                ++steps;
            }
        }
        report.estimates.push_back(static_cast<double>(failures) /
                                   static_cast<double>(steps));
    }
    {
        long long failures = 0;
        long long steps = 0;
        for (const auto& trace : traces) {
            for (long long s = 0; s < num_arms; ++s) {
                failures += trace.failure[static_cast<std::size_t>(s)] ? 1 : 0;
                ++steps;
            }
        }
        report.baseline = static_cast<double>(failures) / static_cast<double>(steps);
    }

    const bool all_zero = std::all_of(report.estimates.begin(),
                                      report.estimates.end(),
                                      [](double p) { return p == 0.0; });
    report.strictly_decreasing = true;
    for (std::size_t i = 1; i < report.estimates.size(); ++i) {
        if (!(report.estimates[i] < report.estimates[i - 1])) {
            report.strictly_decreasing = false;
            break;
        }
    }
    if (all_zero && report.baseline == 0.0) {
        // every arm optimal: nothing to decay
        report.strictly_decreasing = true;
        report.passed = true;
        return report;
    }

    std::vector<double> log_t, log_p;
    for (std::size_t i = 0; i < report.estimates.size(); ++i) {
        if (report.estimates[i] > 0.0) {
            log_t.push_back(std::log(static_cast<double>(report.decade_t[i])));
            log_p.push_back(std::log(report.estimates[i]));
        }
    }
    if (log_t.size() >= 2) {
        report.loglog_slope = least_squares(log_t, log_p).slope;
    }
    report.passed = report.loglog_slope < 0.0 &&
                    report.estimates.back() < report.baseline;
    return report;
}

void write_trace_csv(const std::string& path, const RegretTrace& trace) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open trace file for writing: " + path);
    out << "step,arm,failure\n";
    for (std::size_t t = 0; t < trace.selected.size(); ++t) {
        out << (t + 1) << "," << trace.selected[t] << ","
            << (trace.failure[t] ? 1 : 0) << "\n";
    }
}

}  // namespace combimots
