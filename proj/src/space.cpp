#include "combimots/space.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_set>

namespace combimots {

namespace {

bool tags_match(const BuildingBlock& block, const std::set<std::string>& slot) {
    for (const auto& tag : block.tags) {
        if (slot.count(tag)) return true;
    }
    return false;
}

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    constexpr char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

using AssignKey = std::vector<std::pair<std::size_t, std::string>>;

void enumerate_assignments(const ReactionTemplate& tmpl,
                           const std::vector<const BuildingBlock*>& blocks,
                           std::size_t next_block,
                           std::vector<std::size_t>& slot_of_block,
                           std::vector<bool>& slot_used,
                           std::optional<AssignKey>& best,
                           std::optional<SlotAssignment>& best_assignment) {
    if (next_block == blocks.size()) {
        AssignKey key;
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            key.emplace_back(slot_of_block[i], blocks[i]->id);
        }
        std::sort(key.begin(), key.end());
        if (!best || key < *best) {
            best = key;
            best_assignment = SlotAssignment{slot_of_block};
        }
        return;
    }
    for (std::size_t s = 0; s < tmpl.arity(); ++s) {
        if (slot_used[s]) continue;
        if (!tags_match(*blocks[next_block], tmpl.slots[s])) continue;
        slot_used[s] = true;
        slot_of_block[next_block] = s;
        enumerate_assignments(tmpl, blocks, next_block + 1, slot_of_block,
                              slot_used, best, best_assignment);
        slot_used[s] = false;
    }
}

}  // namespace

std::optional<SlotAssignment> compatible(
    const ReactionTemplate& tmpl,
    const std::vector<const BuildingBlock*>& blocks) {
    if (blocks.size() > tmpl.arity()) return std::nullopt;
    std::vector<std::size_t> slot_of_block(blocks.size(), 0);
    std::vector<bool> slot_used(tmpl.arity(), false);
    std::optional<AssignKey> best;
    std::optional<SlotAssignment> best_assignment;
    enumerate_assignments(tmpl, blocks, 0, slot_of_block, slot_used, best,
                          best_assignment);
    return best_assignment;
}

Product derive_product(const ReactionTemplate& tmpl,
                       const std::vector<const BuildingBlock*>& blocks) {
    if (blocks.size() != tmpl.arity() || !compatible(tmpl, blocks)) {
        throw CompatibilityError("derive_product: tuple is not a full match for template " +
                                 tmpl.id);
    }
    Product product;
    product.template_id = tmpl.id;
    for (const auto* block : blocks) product.reactant_ids.push_back(block->id);
    std::sort(product.reactant_ids.begin(), product.reactant_ids.end());

    std::string material = tmpl.id;
    for (const auto& rid : product.reactant_ids) {
        material.push_back('\x1f');
        material += rid;
    }
    product.id = "p" + fnv1a_hex(material);

    Fingerprint fp = blocks.front()->fingerprint;
    for (std::size_t i = 1; i < blocks.size(); ++i) {
        fp = fp | blocks[i]->fingerprint;  // CombineRule::BitwiseOr
    }
    product.fingerprint = fp;
    return product;
}

std::vector<BuildingBlock> reduce_space(const std::vector<Fingerprint>& fragments,
                                        const std::vector<BuildingBlock>& blocks,
                                        double threshold) {
    if (fragments.empty()) {
        throw EmptyInputError("reduce_space: fragment list is empty");
    }
    if (threshold < 0.0 || threshold > 1.0) {
        throw ValueError("reduce_space: threshold must lie in [0,1]");
    }
    std::vector<BuildingBlock> kept;
    for (const auto& block : blocks) {
        double best = 0.0;
        for (const auto& frag : fragments) {
            best = std::max(best, tanimoto(block.fingerprint, frag));
            if (best >= threshold) break;
        }
        if (best >= threshold) kept.push_back(block);
    }
    return kept;
}

namespace {

bool next_combination(std::vector<std::size_t>& comb, std::size_t n) {
    const std::size_t k = comb.size();
    for (std::size_t i = k; i-- > 0;) {
        if (comb[i] < n - k + i) {
            ++comb[i];
            for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
            return true;
        }
    }
    return false;
}

void enumerate_step(const std::vector<BuildingBlock>& pool,
                    const std::vector<ReactionTemplate>& templates,
                    std::unordered_set<std::string>& seen,
                    std::vector<Product>* out,
                    long long cap) {
    std::vector<const BuildingBlock*> tuple;
    for (const auto& tmpl : templates) {
        const std::size_t k = tmpl.arity();
        if (k == 0 || pool.size() < k) continue;
        std::vector<std::size_t> comb(k);
        for (std::size_t i = 0; i < k; ++i) comb[i] = i;
        do {
            tuple.clear();
            for (std::size_t i = 0; i < k; ++i) tuple.push_back(&pool[comb[i]]);
            if (compatible(tmpl, tuple)) {
                Product p = derive_product(tmpl, tuple);
                if (seen.insert(p.id).second) {
                    if (static_cast<long long>(seen.size()) > cap) {
                        throw CapacityError("count_possible_products: cap exceeded",
                                            cap);
                    }
                    if (out) out->push_back(std::move(p));
                }
            }
        } while (next_combination(comb, pool.size()));
    }
}

}  // namespace

long long count_possible_products(const std::vector<BuildingBlock>& blocks,
                                  const std::vector<ReactionTemplate>& templates,
                                  int max_steps,
                                  long long cap) {
    if (max_steps < 1 || max_steps > 2) {
        throw ConfigError("count_possible_products: max_steps must be 1 or 2");
    }
    std::unordered_set<std::string> seen;
    std::vector<Product> step1;
    enumerate_step(blocks, templates, seen, &step1, cap);
    if (max_steps == 2) {
        std::vector<BuildingBlock> pool = blocks;
        for (const auto& p : step1) {
            BuildingBlock pseudo;
            pseudo.id = p.id;
            // A product participates in further reactions through its
            // product_tag only.
            for (const auto& tmpl : templates) {
                if (tmpl.id == p.template_id) {
                    pseudo.tags = {tmpl.product_tag};
                    break;
                }
            }
            pseudo.fingerprint = p.fingerprint;
            pool.push_back(std::move(pseudo));
        }
        enumerate_step(pool, templates, seen, nullptr, cap);
    }
    return static_cast<long long>(seen.size());
}

}  // namespace combimots
