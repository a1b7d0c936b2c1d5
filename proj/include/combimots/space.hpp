#ifndef COMBIMOTS_SPACE_HPP
#define COMBIMOTS_SPACE_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "combimots/fingerprint.hpp"
#include "combimots/types.hpp"

namespace combimots {

struct BuildingBlock {
    std::string id;
    std::set<std::string> tags;
    Fingerprint fingerprint;
    std::optional<ObjectiveVector> precomputed;  // raw scores, untransformed
};

enum class CombineRule { BitwiseOr };

struct ReactionTemplate {
    std::string id;
    std::vector<std::set<std::string>> slots;  // arity 1..3, required tag-sets
    std::string product_tag;
    CombineRule combine = CombineRule::BitwiseOr;

    std::size_t arity() const { return slots.size(); }
};

struct Product {
    std::string id;  // stable digest of template id + sorted reactant ids
    std::vector<std::string> reactant_ids;
    std::string template_id;
    Fingerprint fingerprint;
};

/// Feasible slot assignment: slot_of_block[i] is the slot index taken by
/// the i-th block of the tuple.
struct SlotAssignment {
    std::vector<std::size_t> slot_of_block;
};

/// Injective assignment of blocks to distinct slots, each block's tags
/// intersecting its slot's tag-set. Tuples larger than the arity never
/// match. Returns the canonical (lexicographically smallest by slot
/// index, then block id) assignment, or nullopt.
std::optional<SlotAssignment> compatible(
    const ReactionTemplate& tmpl,
    const std::vector<const BuildingBlock*>& blocks);

/// Full application: tuple size must equal the arity and be compatible.
Product derive_product(const ReactionTemplate& tmpl,
                       const std::vector<const BuildingBlock*>& blocks);

/// Keep blocks whose max Tanimoto to any fragment reaches the threshold.
/// Input order is preserved.
std::vector<BuildingBlock> reduce_space(const std::vector<Fingerprint>& fragments,
                                        const std::vector<BuildingBlock>& blocks,
                                        double threshold);

/// Exact count of distinct product ids reachable in at most max_steps
/// template applications (max_steps in {1,2}). Step-2 reactant pools
/// include step-1 products, typed by their product_tag. Throws
/// CapacityError carrying the partial lower bound past `cap` products.
long long count_possible_products(const std::vector<BuildingBlock>& blocks,
                                  const std::vector<ReactionTemplate>& templates,
                                  int max_steps,
                                  long long cap = 10'000'000);

struct ParseError : Error {
    ParseError(const std::string& msg, int line) : Error(msg), line(line) {}
    int line;
};

// File formats: blocks and fragments are JSON-lines, templates one JSON
// document holding a list.
std::vector<BuildingBlock> load_blocks(const std::string& path);
void write_blocks(const std::string& path, const std::vector<BuildingBlock>& blocks);
std::vector<ReactionTemplate> load_templates(const std::string& path);
std::vector<Fingerprint> load_fragments(const std::string& path);

}  // namespace combimots

#endif
