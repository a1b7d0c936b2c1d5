#ifndef COMBIMOTS_ORACLE_HPP
#define COMBIMOTS_ORACLE_HPP

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "combimots/fingerprint.hpp"
#include "combimots/objective.hpp"
#include "combimots/types.hpp"

namespace combimots {

struct OracleRequest {
    std::string entity_id;
    Fingerprint fingerprint;
    std::vector<std::string> block_ids;
};

struct OracleResult {
    ObjectiveVector raw;
    ObjectiveVector transformed;
};

/// One slot of a batch reply: either a result or a positional error.
struct BatchOutcome {
    std::optional<OracleResult> result;
    std::string error;

    bool ok() const { return result.has_value(); }
};

/// Vector-scoring abstraction. Raw backend values pass through the
/// objective spec's transforms; results are cached by entity id, so an
/// entity is deterministic within one run regardless of backend.
class Oracle {
public:
    explicit Oracle(ObjectiveSpec spec) : spec_(std::move(spec)) {}
    virtual ~Oracle() = default;

    OracleResult evaluate(const OracleRequest& request);
    std::vector<BatchOutcome> batch_evaluate(const std::vector<OracleRequest>& requests);

    const ObjectiveSpec& spec() const { return spec_; }
    std::size_t call_count() const { return calls_; }

    /// Fraction of backend calls that ended in a protocol error; drives
    /// the CLI's environment-fault exit.
    double protocol_failure_rate() const {
        return attempts_ == 0 ? 0.0
                              : static_cast<double>(protocol_failures_) /
                                    static_cast<double>(attempts_);
    }

protected:
    virtual ObjectiveVector evaluate_raw(const OracleRequest& request) = 0;

private:
    ObjectiveSpec spec_;
    std::mutex mutex_;
    std::unordered_map<std::string, OracleResult> cache_;
    std::size_t calls_ = 0;
    std::size_t attempts_ = 0;
    std::size_t protocol_failures_ = 0;
};

/// Precomputed lookup table keyed by entity id. Unknown ids throw
/// UnknownEntityError.
class TableOracle final : public Oracle {
public:
    TableOracle(ObjectiveSpec spec,
                std::unordered_map<std::string, ObjectiveVector> rows);

    /// CSV with header `id,raw_1,...,raw_D`.
    static std::unique_ptr<TableOracle> from_csv(ObjectiveSpec spec,
                                                 const std::string& path);

    void insert(const std::string& id, ObjectiveVector raw);

protected:
    ObjectiveVector evaluate_raw(const OracleRequest& request) override;

private:
    std::unordered_map<std::string, ObjectiveVector> rows_;
};

/// Pure function of the fingerprint. "bit-fraction" splits the width
/// into D equal windows and scores each as popcount/window-width.
class BitFractionOracle final : public Oracle {
public:
    explicit BitFractionOracle(ObjectiveSpec spec) : Oracle(std::move(spec)) {}

protected:
    ObjectiveVector evaluate_raw(const OracleRequest& request) override;
};

/// Piecewise landscape over the fingerprint's overall bit fraction f:
/// the first segment with f <= upper_bound supplies the raw vector.
class DeceptiveFrontOracle final : public Oracle {
public:
    struct Segment {
        double upper_bound;
        ObjectiveVector raw;
    };

    DeceptiveFrontOracle(ObjectiveSpec spec, std::vector<Segment> segments);

    /// Concave two-objective front: corners (1,0), (0,1) and a balanced
    /// middle at (0.45,0.45).
    static std::unique_ptr<DeceptiveFrontOracle> concave_default(ObjectiveSpec spec);

protected:
    ObjectiveVector evaluate_raw(const OracleRequest& request) override;

private:
    std::vector<Segment> segments_;
};

/// Child-process backend speaking a line protocol over stdio:
///   request: EVAL <id> <fp-hex> <block-ids-comma-separated>\n
///   reply:   <id> <v1> ... <vD>\n   |   ERR <id> <message>\n
class ExternalOracle final : public Oracle {
public:
    ExternalOracle(ObjectiveSpec spec, std::string command, int timeout_ms = 30'000);
    ~ExternalOracle() override;

    ExternalOracle(const ExternalOracle&) = delete;
    ExternalOracle& operator=(const ExternalOracle&) = delete;

protected:
    ObjectiveVector evaluate_raw(const OracleRequest& request) override;

private:
    void spawn();
    void shutdown();

    std::string command_;
    int timeout_ms_;
    int child_pid_ = -1;
    int to_child_ = -1;
    int from_child_ = -1;
    std::string buffer_;
};

}  // namespace combimots

#endif
