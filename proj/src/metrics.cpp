#include "combimots/metrics.hpp"

#include <unordered_set>

#include "combimots/pareto.hpp"

namespace combimots {

double uniqueness(const GenerationSet& set) {
    if (set.empty()) throw EmptyInputError("uniqueness: empty generation set");
    std::unordered_set<std::string> ids;
    for (const auto& entry : set) ids.insert(entry.id);
    return static_cast<double>(ids.size()) / static_cast<double>(set.size());
}

double novelty(const GenerationSet& set, const std::vector<Fingerprint>& reference,
               double threshold) {
    if (set.empty()) throw EmptyInputError("novelty: empty generation set");
    if (reference.empty()) throw EmptyInputError("novelty: empty reference set");
    std::size_t novel = 0;
    for (const auto& entry : set) {
        double best = 0.0;
        for (const auto& ref : reference) {
            best = std::max(best, tanimoto(entry.fingerprint, ref));
            if (best >= threshold) break;
        }
        if (best < threshold) ++novel;
    }
    return static_cast<double>(novel) / static_cast<double>(set.size());
}

double diversity(const GenerationSet& set) {
    if (set.size() < 2) {
        throw InsufficientInputError("diversity needs at least two entries");
    }
    double total = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < set.size(); ++i) {
        for (std::size_t j = i + 1; j < set.size(); ++j) {
            total += tanimoto(set[i].fingerprint, set[j].fingerprint);
            ++pairs;
        }
    }
    return 1.0 - total / static_cast<double>(pairs);
}

double activity_success_rate(const GenerationSet& set,
                             const std::vector<Index>& activity_indices,
                             double cutoff) {
    if (set.empty()) {
        throw EmptyInputError("activity_success_rate: empty generation set");
    }
    for (Index idx : activity_indices) {
        if (idx < 0 || idx >= set.front().objectives.size()) {
            throw DimensionError("activity index out of range: " +
                                 std::to_string(idx));
        }
    }
    std::size_t active = 0;
    for (const auto& entry : set) {
        bool all = true;
        for (Index idx : activity_indices) {
            if (!(entry.objectives[idx] > cutoff)) {  // strict: 0.5 is not active
                all = false;
                break;
            }
        }
        if (all) ++active;
    }
    return static_cast<double>(active) / static_cast<double>(set.size());
}

ParetoConsistency pareto_consistency(const GenerationSet& set,
                                     const ObjectiveVector& utopia) {
    if (set.empty()) {
        throw EmptyInputError("pareto_consistency: empty generation set");
    }
    std::vector<ObjectiveVector> objectives;
    objectives.reserve(set.size());
    for (const auto& entry : set) objectives.push_back(entry.objectives);
    const auto fronts = pareto_partition(objectives);

    ParetoConsistency out;
    out.front1_size = fronts.front().size();
    double total = 0.0;
    for (std::size_t i : fronts.front()) {
        total += r2_distance(objectives[i], utopia);
    }
    out.mean_front1_r2 = total / static_cast<double>(out.front1_size);
    for (const auto& front : fronts) out.rank_histogram.push_back(front.size());
    return out;
}

}  // namespace combimots
