#include "combimots/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <unordered_map>

#include <json.hpp>

namespace combimots {

void SearchConfig::validate() const {
    if (rollouts < 1) throw ConfigError("rollouts must be >= 1");
    if (!(exploration_c > 0.0)) throw ConfigError("exploration constant must be > 0");
    if (max_blocks < 2 || max_blocks > 4) {
        throw ConfigError("max blocks per node must lie in [2,4]");
    }
}

ObjectiveVector pucb(const ObjectiveVector& reward_sum, long long visits,
                     long long parent_visits, double exploration_c,
                     const ObjectiveVector& ora) {
    const auto dim = static_cast<double>(reward_sum.size());
    ObjectiveVector exploit = ObjectiveVector::Zero(reward_sum.size());
    if (visits > 0) exploit = reward_sum / static_cast<double>(visits);
    const double bonus =
        std::sqrt((std::log(dim) + 4.0 * std::log(1.0 + static_cast<double>(parent_visits))) /
                  (1.0 + static_cast<double>(visits)));
    return exploit + exploration_c * ora * bonus;
}

std::size_t select_from_front(const std::vector<ObjectiveVector>& scores, Rng& rng) {
    const auto fronts = pareto_partition(scores);
    const auto& front = fronts.front();
    return front[rng.below(front.size())];
}

std::size_t select_argmax(const std::vector<double>& scores, Rng& rng) {
    const double best = *std::max_element(scores.begin(), scores.end());
    std::vector<std::size_t> ties;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (scores[i] == best) ties.push_back(i);
    }
    return ties[rng.below(ties.size())];
}

SearchEngine::SearchEngine(SearchConfig config, const SearchSpace& space,
                           Oracle& oracle)
    : config_(config), space_(space), oracle_(oracle), rng_(config.seed) {
    config_.validate();
    block_cache_.resize(space_.blocks.size());
}

const ObjectiveVector& SearchEngine::block_vector(std::size_t idx) {
    auto& slot = block_cache_[idx];
    if (!slot) {
        const BuildingBlock& block = space_.blocks[idx];
        if (block.precomputed) {
            slot = oracle_.spec().transform(*block.precomputed);
        } else {
            slot = oracle_
                       .evaluate({block.id, block.fingerprint, {block.id}})
                       .transformed;
        }
    }
    return *slot;
}

void SearchEngine::expand(SearchNode& node) {
    node.expanded = true;
    const Index dim = oracle_.spec().count();

    std::vector<const BuildingBlock*> tuple;
    for (std::size_t idx : node.block_idx) tuple.push_back(&space_.blocks[idx]);

    // (a) one product child per template fully satisfied by the tuple
    for (const auto& tmpl : space_.templates) {
        if (tmpl.arity() != tuple.size() || tuple.empty()) continue;
        if (!compatible(tmpl, tuple)) continue;
        auto child = std::make_unique<SearchNode>();
        child->block_idx = node.block_idx;
        child->product = derive_product(tmpl, tuple);
        child->reward_sum = ObjectiveVector::Zero(dim);
        try {
            child->ora = oracle_
                             .evaluate({child->product->id,
                                        child->product->fingerprint,
                                        child->product->reactant_ids})
                             .transformed;
        } catch (const Error&) {
            // oracle failure must not stall the search
            child->ora = ObjectiveVector::Zero(dim);
            child->dead = true;
        }
        node.children.push_back(std::move(child));
    }

    // (b) one tuple child per block that keeps the tuple partially
    // compatible with some template
    if (static_cast<int>(tuple.size()) < config_.max_blocks) {
        for (std::size_t b = 0; b < space_.blocks.size(); ++b) {
            if (std::find(node.block_idx.begin(), node.block_idx.end(), b) !=
                node.block_idx.end()) {
                continue;
            }
            auto extended = tuple;
            extended.push_back(&space_.blocks[b]);
            bool feasible = false;
            for (const auto& tmpl : space_.templates) {
                if (compatible(tmpl, extended)) {
                    feasible = true;
                    break;
                }
            }
            if (!feasible) continue;
            auto child = std::make_unique<SearchNode>();
            child->block_idx = node.block_idx;
            child->block_idx.push_back(b);
            child->reward_sum = ObjectiveVector::Zero(dim);
            try {
                ObjectiveVector ora = ObjectiveVector::Zero(dim);
                for (std::size_t idx : child->block_idx) {
                    ora = ora.max(block_vector(idx));
                }
                child->ora = ora;
            } catch (const Error&) {
                child->ora = ObjectiveVector::Zero(dim);
                child->dead = true;
            }
            node.children.push_back(std::move(child));
        }
    }

    if (node.children.empty()) node.dead = true;
}

std::optional<ObjectiveVector> SearchEngine::rollout(SearchNode& node,
                                                     const ObjectiveVector* weights) {
    if (node.is_product()) return node.ora;
    if (!node.expanded) expand(node);
    if (node.dead) return std::nullopt;

    int retries = 0;
    while (true) {
        std::vector<SearchNode*> live;
        long long parent_visits = 0;
        for (const auto& child : node.children) {
            parent_visits += child->visits;
            if (!child->dead) live.push_back(child.get());
        }
        if (live.empty()) {
            node.dead = true;
            return std::nullopt;
        }

        std::vector<ObjectiveVector> scores;
        scores.reserve(live.size());
        for (const SearchNode* child : live) {
            scores.push_back(pucb(child->reward_sum, child->visits, parent_visits,
                                  config_.exploration_c, child->ora));
        }
        std::size_t pick;
        if (weights) {
            std::vector<double> scalar(scores.size());
            for (std::size_t i = 0; i < scores.size(); ++i) {
                scalar[i] = (scores[i] * (*weights)).sum();
            }
            pick = select_argmax(scalar, rng_);
        } else {
            pick = select_from_front(scores, rng_);
        }
        SearchNode* selected = live[pick];

        ObjectiveVector v;
        if (selected->is_product()) {
            v = selected->ora;
        } else {
            auto sub = rollout(*selected, weights);
            if (!sub) {
                if (++retries > config_.max_dead_retries) return std::nullopt;
                continue;
            }
            v = *sub;
        }
        if (selected->is_product()) v = v.max(selected->ora);
        selected->visits += 1;
        selected->reward_sum += v;
        return v;
    }
}

SearchReport SearchEngine::run() { return run_impl(nullptr); }

SearchReport SearchEngine::run_scalarized(const ObjectiveVector& weights) {
    if (weights.size() != oracle_.spec().count()) {
        throw ConfigError("scalarization weights must have one entry per objective");
    }
    if ((weights < 0.0).any()) {
        throw ConfigError("scalarization weights must be non-negative");
    }
    if (std::abs(weights.sum() - 1.0) > 1e-9) {
        throw ConfigError("scalarization weights must sum to 1");
    }
    return run_impl(&weights);
}

SearchReport SearchEngine::run_impl(const ObjectiveVector* weights) {
    const auto start = std::chrono::steady_clock::now();
    const Index dim = oracle_.spec().count();
    rng_ = Rng(config_.seed);
    root_ = std::make_unique<SearchNode>();
    root_->reward_sum = ObjectiveVector::Zero(dim);
    root_->ora = ObjectiveVector::Zero(dim);

    SearchReport report;
    report.seed = config_.seed;
    for (long long i = 0; i < config_.rollouts; ++i) {
        auto v = rollout(*root_, weights);
        report.rollouts += 1;
        if (v) {
            root_->visits += 1;
            root_->reward_sum += *v;
        } else {
            report.barren_rollouts += 1;
            if (root_->dead) break;  // whole space exhausted or incompatible
        }
    }

    SearchReport collected = collect();
    report.products = std::move(collected.products);
    if (report.products.empty()) {
        report.diagnostic = "no reaction products reachable from the given space";
    }
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return report;
}

SearchReport SearchEngine::collect() const {
    SearchReport report;
    std::unordered_map<std::string, std::size_t> by_id;

    // Deterministic DFS in child-creation order; transposition paths fold
    // into the first-discovered record.
    std::vector<const SearchNode*> stack{root_.get()};
    while (!stack.empty()) {
        const SearchNode* node = stack.back();
        stack.pop_back();
        if (node->is_product() && node->visits > 0) {
            auto it = by_id.find(node->product->id);
            if (it == by_id.end()) {
                DiscoveredProduct p;
                p.id = node->product->id;
                p.blocks = node->product->reactant_ids;
                p.template_path = {node->product->template_id};
                p.fp_hex = node->product->fingerprint.to_hex();
                p.objectives = node->ora;
                p.visits = node->visits;
                by_id.emplace(p.id, report.products.size());
                report.products.push_back(std::move(p));
            } else {
                report.products[it->second].visits += node->visits;
            }
        }
        for (auto it = node->children.rbegin(); it != node->children.rend(); ++it) {
            stack.push_back(it->get());
        }
    }

    if (!report.products.empty()) {
        std::vector<ObjectiveVector> objectives;
        for (const auto& p : report.products) objectives.push_back(p.objectives);
        const auto fronts = pareto_partition(objectives);
        for (std::size_t k = 0; k < fronts.size(); ++k) {
            for (std::size_t i : fronts[k]) {
                report.products[i].pareto_rank = static_cast<int>(k) + 1;
            }
        }
    }
    return report;
}

SearchReport run_search(const SearchConfig& config, const SearchSpace& space,
                        Oracle& oracle) {
    SearchEngine engine(config, space, oracle);
    return engine.run();
}

SearchReport run_scalarized(const SearchConfig& config,
                            const ObjectiveVector& weights,
                            const SearchSpace& space, Oracle& oracle) {
    SearchEngine engine(config, space, oracle);
    return engine.run_scalarized(weights);
}

void write_report(const std::string& path, const SearchReport& report) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open report file for writing: " + path);
    using nlohmann::json;
    for (const auto& p : report.products) {
        json j;
        j["id"] = p.id;
        j["blocks"] = p.blocks;
        j["template_path"] = p.template_path;
        j["fp"] = p.fp_hex;
        j["objectives"] = std::vector<double>(p.objectives.data(),
                                              p.objectives.data() + p.objectives.size());
        j["visits"] = p.visits;
        j["pareto_rank"] = p.pareto_rank;
        out << j.dump() << "\n";
    }
    json summary;
    summary["summary"] = true;
    summary["rollouts"] = report.rollouts;
    summary["barren_rollouts"] = report.barren_rollouts;
    summary["seed"] = report.seed;
    summary["products"] = report.products.size();
    if (!report.diagnostic.empty()) summary["diagnostic"] = report.diagnostic;
    out << summary.dump() << "\n";
}

SearchReport read_report(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open report file: " + path);
    using nlohmann::json;
    SearchReport report;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what(),
                             lineno);
        }
        if (j.value("summary", false)) {
            report.rollouts = j.value("rollouts", 0LL);
            report.barren_rollouts = j.value("barren_rollouts", 0LL);
            report.seed = j.value("seed", std::uint64_t{0});
            report.diagnostic = j.value("diagnostic", std::string());
            continue;
        }
        DiscoveredProduct p;
        p.id = j.at("id").get<std::string>();
        p.blocks = j.value("blocks", std::vector<std::string>{});
        p.template_path = j.value("template_path", std::vector<std::string>{});
        p.fp_hex = j.value("fp", std::string());
        const auto& vals = j.at("objectives");
        p.objectives = ObjectiveVector(static_cast<Index>(vals.size()));
        for (std::size_t d = 0; d < vals.size(); ++d) {
            p.objectives[static_cast<Index>(d)] = vals[d].get<double>();
        }
        p.visits = j.value("visits", 0LL);
        p.pareto_rank = j.value("pareto_rank", 0);
        report.products.push_back(std::move(p));
    }
    return report;
}

}  // namespace combimots
