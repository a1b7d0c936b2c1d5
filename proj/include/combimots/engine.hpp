#ifndef COMBIMOTS_ENGINE_HPP
#define COMBIMOTS_ENGINE_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "combimots/oracle.hpp"
#include "combimots/pareto.hpp"
#include "combimots/rng.hpp"
#include "combimots/space.hpp"

namespace combimots {

struct SearchSpace {
    std::vector<BuildingBlock> blocks;
    std::vector<ReactionTemplate> templates;
};

struct SearchConfig {
    long long rollouts = 1000;
    double exploration_c = 1.0;
    int max_blocks = 3;  // tuple size limit, in [2,4]
    std::uint64_t seed = 0;
    int max_dead_retries = 8;

    void validate() const;
};

struct SearchNode {
    std::vector<std::size_t> block_idx;  // tuple, indices into the space
    std::optional<Product> product;      // set => terminal node
    long long visits = 0;
    ObjectiveVector reward_sum;  // component-wise sums, unnormalized
    ObjectiveVector ora;         // frozen at creation
    std::vector<std::unique_ptr<SearchNode>> children;
    bool expanded = false;
    bool dead = false;

    bool is_product() const { return product.has_value(); }
};

/// Component-wise Pareto UCB:
///   W/N + C * Ora * sqrt((ln D + 4 ln(1 + N_parent)) / (1 + N))
/// with W/N taken as the zero vector while N = 0.
ObjectiveVector pucb(const ObjectiveVector& reward_sum, long long visits,
                     long long parent_visits, double exploration_c,
                     const ObjectiveVector& ora);

/// First Pareto front of the score vectors, then one uniform draw from it.
std::size_t select_from_front(const std::vector<ObjectiveVector>& scores, Rng& rng);

/// Argmax with uniform tie-breaking, the scalarized counterpart.
std::size_t select_argmax(const std::vector<double>& scores, Rng& rng);

struct DiscoveredProduct {
    std::string id;
    std::vector<std::string> blocks;
    std::vector<std::string> template_path;
    std::string fp_hex;
    ObjectiveVector objectives;
    long long visits = 0;
    int pareto_rank = 0;  // 1-based over the discovered set
};

struct SearchReport {
    std::vector<DiscoveredProduct> products;  // deduplicated by product id
    long long rollouts = 0;
    long long barren_rollouts = 0;
    std::uint64_t seed = 0;
    std::string diagnostic;
    double wall_time_s = 0.0;  // informational, not serialized
};

class SearchEngine {
public:
    SearchEngine(SearchConfig config, const SearchSpace& space, Oracle& oracle);

    SearchReport run();

    /// Same tree mechanics; selection maximizes the weighted scalar UCB.
    SearchReport run_scalarized(const ObjectiveVector& weights);

    const SearchNode& root() const { return *root_; }

private:
    SearchReport run_impl(const ObjectiveVector* weights);
    std::optional<ObjectiveVector> rollout(SearchNode& node,
                                           const ObjectiveVector* weights);
    void expand(SearchNode& node);
    const ObjectiveVector& block_vector(std::size_t idx);
    SearchReport collect() const;

    SearchConfig config_;
    const SearchSpace& space_;
    Oracle& oracle_;
    Rng rng_;
    std::unique_ptr<SearchNode> root_;
    std::vector<std::optional<ObjectiveVector>> block_cache_;
};

SearchReport run_search(const SearchConfig& config, const SearchSpace& space,
                        Oracle& oracle);

SearchReport run_scalarized(const SearchConfig& config,
                            const ObjectiveVector& weights,
                            const SearchSpace& space, Oracle& oracle);

/// JSON-lines: one product record per line plus a trailing summary record.
void write_report(const std::string& path, const SearchReport& report);
SearchReport read_report(const std::string& path);

}  // namespace combimots

#endif
