#include "combimots/oracle.hpp"

#include <fstream>
#include <sstream>

namespace combimots {

OracleResult Oracle::evaluate(const OracleRequest& request) {
    if (request.entity_id.empty()) {
        throw ValueError("oracle request has an empty entity id");
    }
    {
        std::lock_guard lock(mutex_);
        auto it = cache_.find(request.entity_id);
        if (it != cache_.end()) return it->second;
    }
    {
        std::lock_guard lock(mutex_);
        ++attempts_;
    }
    ObjectiveVector raw;
    try {
        raw = evaluate_raw(request);
    } catch (const OracleProtocolError&) {
        std::lock_guard lock(mutex_);
        ++protocol_failures_;
        throw;
    }
    if (raw.size() != spec_.count()) {
        throw OracleProtocolError("backend returned " + std::to_string(raw.size()) +
                                  " values, expected " + std::to_string(spec_.count()));
    }
    OracleResult result{raw, spec_.transform(raw)};
    std::lock_guard lock(mutex_);
    ++calls_;
    cache_.emplace(request.entity_id, result);
    return result;
}

std::vector<BatchOutcome> Oracle::batch_evaluate(
    const std::vector<OracleRequest>& requests) {
    if (requests.empty()) {
        throw EmptyInputError("batch_evaluate: empty request list");
    }
    std::vector<BatchOutcome> outcomes;
    outcomes.reserve(requests.size());
    for (const auto& request : requests) {
        BatchOutcome outcome;
        try {
            outcome.result = evaluate(request);
        } catch (const Error& e) {
            outcome.error = e.what();
        }
        outcomes.push_back(std::move(outcome));
    }
    return outcomes;
}

TableOracle::TableOracle(ObjectiveSpec spec,
                         std::unordered_map<std::string, ObjectiveVector> rows)
    : Oracle(std::move(spec)), rows_(std::move(rows)) {}

std::unique_ptr<TableOracle> TableOracle::from_csv(ObjectiveSpec spec,
                                                   const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open oracle table: " + path);
    }
    const Index dim = spec.count();
    std::unordered_map<std::string, ObjectiveVector> rows;
    std::string line;
    bool header = true;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (header) {  // `id,raw_1,...,raw_D`
            header = false;
            continue;
        }
        std::stringstream ss(line);
        std::string cell;
        if (!std::getline(ss, cell, ',')) continue;
        const std::string id = cell;
        ObjectiveVector raw(dim);
        for (Index d = 0; d < dim; ++d) {
            if (!std::getline(ss, cell, ',')) {
                throw ConfigError(path + ":" + std::to_string(lineno) +
                                  ": expected " + std::to_string(dim) + " raw values");
            }
            raw[d] = std::stod(cell);
        }
        rows[id] = std::move(raw);
    }
    return std::make_unique<TableOracle>(std::move(spec), std::move(rows));
}

void TableOracle::insert(const std::string& id, ObjectiveVector raw) {
    rows_[id] = std::move(raw);
}

ObjectiveVector TableOracle::evaluate_raw(const OracleRequest& request) {
    auto it = rows_.find(request.entity_id);
    if (it == rows_.end()) {
        throw UnknownEntityError("no table row for entity: " + request.entity_id);
    }
    return it->second;
}

ObjectiveVector BitFractionOracle::evaluate_raw(const OracleRequest& request) {
    const Index dim = spec().count();
    const std::size_t width = request.fingerprint.width();
    ObjectiveVector raw = ObjectiveVector::Zero(dim);
    if (width == 0) return raw;
    const std::size_t window = width / static_cast<std::size_t>(dim);
    for (Index d = 0; d < dim; ++d) {
        const std::size_t lo = static_cast<std::size_t>(d) * window;
        // last window absorbs the remainder
        const std::size_t hi = (d + 1 == dim) ? width : lo + window;
        if (hi == lo) continue;
        std::size_t count = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            if (request.fingerprint.test(i)) ++count;
        }
        raw[d] = static_cast<double>(count) / static_cast<double>(hi - lo);
    }
    return raw;
}

DeceptiveFrontOracle::DeceptiveFrontOracle(ObjectiveSpec spec,
                                           std::vector<Segment> segments)
    : Oracle(std::move(spec)), segments_(std::move(segments)) {
    if (segments_.empty()) {
        throw ConfigError("deceptive-front oracle needs at least one segment");
    }
}

std::unique_ptr<DeceptiveFrontOracle> DeceptiveFrontOracle::concave_default(
    ObjectiveSpec spec) {
    if (spec.count() != 2) {
        throw ConfigError("concave deceptive front is two-objective");
    }
    std::vector<Segment> segments;
    ObjectiveVector a(2), b(2), c(2);
    a << 1.0, 0.0;
    b << 0.45, 0.45;
    c << 0.0, 1.0;
    segments.push_back({1.0 / 3.0, a});
    segments.push_back({2.0 / 3.0, b});
    segments.push_back({1.0, c});
    return std::make_unique<DeceptiveFrontOracle>(std::move(spec),
                                                  std::move(segments));
}

ObjectiveVector DeceptiveFrontOracle::evaluate_raw(const OracleRequest& request) {
    const std::size_t width = request.fingerprint.width();
    const double f =
        width == 0 ? 0.0
                   : static_cast<double>(request.fingerprint.popcount()) /
                         static_cast<double>(width);
    for (const auto& segment : segments_) {
        if (f <= segment.upper_bound) return segment.raw;
    }
    return segments_.back().raw;
}

}  // namespace combimots
