#ifndef COMBIMOTS_METRICS_HPP
#define COMBIMOTS_METRICS_HPP

#include <string>
#include <vector>

#include "combimots/fingerprint.hpp"
#include "combimots/types.hpp"

namespace combimots {

struct GenerationEntry {
    std::string id;
    Fingerprint fingerprint;
    ObjectiveVector objectives;
};

using GenerationSet = std::vector<GenerationEntry>;

/// |distinct ids| / |entries|.
double uniqueness(const GenerationSet& set);

/// Fraction of entries whose max Tanimoto to any reference fingerprint
/// stays below the threshold.
double novelty(const GenerationSet& set, const std::vector<Fingerprint>& reference,
               double threshold = 0.4);

/// 1 - mean pairwise Tanimoto over all unordered pairs.
double diversity(const GenerationSet& set);

/// Fraction with every designated activity component strictly above the
/// cutoff.
double activity_success_rate(const GenerationSet& set,
                             const std::vector<Index>& activity_indices,
                             double cutoff = 0.5);

struct ParetoConsistency {
    double mean_front1_r2 = 0.0;
    std::size_t front1_size = 0;
    std::vector<std::size_t> rank_histogram;  // per-rank front sizes
};

ParetoConsistency pareto_consistency(const GenerationSet& set,
                                     const ObjectiveVector& utopia);

}  // namespace combimots

#endif
