#ifndef COMBIMOTS_PARETO_HPP
#define COMBIMOTS_PARETO_HPP

#include <vector>

#include "combimots/types.hpp"

namespace combimots {

/// Strict Pareto dominance: x >= y everywhere and x > y somewhere.
bool dominates(const ObjectiveVector& x, const ObjectiveVector& y);

/// Weak dominance: x >= y component-wise (identical vectors qualify).
bool weakly_dominates(const ObjectiveVector& x, const ObjectiveVector& y);

/// Non-dominated sort. Returns fronts as index lists into `set`: front 0
/// holds the non-dominated elements, front k the non-dominated elements
/// once fronts 0..k-1 are removed. Indices within a front keep input order.
std::vector<std::vector<std::size_t>> pareto_partition(
    const std::vector<ObjectiveVector>& set);

/// Normalized distance to the utopia point:
/// sqrt(sum_d (max(0, u_d - y_d) / u_d)^2). Components of y at or above
/// utopia contribute nothing.
double r2_distance(const ObjectiveVector& y, const ObjectiveVector& utopia);

}  // namespace combimots

#endif
