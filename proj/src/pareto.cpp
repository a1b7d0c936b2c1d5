#include "combimots/pareto.hpp"

#include <cmath>

namespace combimots {

bool weakly_dominates(const ObjectiveVector& x, const ObjectiveVector& y) {
    require_same_dim(x, y);
    return (x >= y).all();
}

bool dominates(const ObjectiveVector& x, const ObjectiveVector& y) {
    require_same_dim(x, y);
    return (x >= y).all() && (x > y).any();
}

std::vector<std::vector<std::size_t>> pareto_partition(
    const std::vector<ObjectiveVector>& set) {
    if (set.empty()) {
        throw EmptyInputError("pareto_partition: empty input set");
    }
    const std::size_t n = set.size();
    for (std::size_t i = 1; i < n; ++i) {
        require_same_dim(set[0], set[i]);
    }

    // Classic peel: repeatedly extract the non-dominated remainder.
    std::vector<bool> assigned(n, false);
    std::vector<std::vector<std::size_t>> fronts;
    std::size_t remaining = n;
    while (remaining > 0) {
        std::vector<std::size_t> front;
        for (std::size_t i = 0; i < n; ++i) {
            if (assigned[i]) continue;
            bool dominated = false;
            for (std::size_t j = 0; j < n; ++j) {
                if (assigned[j] || j == i) continue;
                if (dominates(set[j], set[i])) {
                    dominated = true;
                    break;
                }
            }
            if (!dominated) front.push_back(i);
        }
        for (std::size_t i : front) assigned[i] = true;
        remaining -= front.size();
        fronts.push_back(std::move(front));
    }
    return fronts;
}

double r2_distance(const ObjectiveVector& y, const ObjectiveVector& utopia) {
    require_same_dim(y, utopia);
    if ((utopia <= 0.0).any()) {
        throw ValueError("r2_distance: utopia components must be strictly positive");
    }
    const ObjectiveVector deficit = (utopia - y).max(0.0) / utopia;
    return std::sqrt(deficit.square().sum());
}

}  // namespace combimots
