#ifndef COMBIMOTS_OBJECTIVE_HPP
#define COMBIMOTS_OBJECTIVE_HPP

#include <string>
#include <vector>

#include "combimots/types.hpp"

namespace combimots {

enum class RawDirection { Maximize, Minimize };

enum class TransformKind { Identity, Docking, SyntheticAccessibility, Affine };

/// Maps a raw oracle value into [0,1] maximize-space.
///   identity:  x
///   docking:   -x / 20          (lower raw docking score is better)
///   sa:        (10 - x) / 9     (lower raw SA score is better)
///   affine:    a * x + b        (a != 0)
/// All results are clamped into [0,1].
struct Transform {
    TransformKind kind = TransformKind::Identity;
    double a = 1.0;  // affine only
    double b = 0.0;

    static Transform identity() { return {}; }
    static Transform docking() { return {TransformKind::Docking}; }
    static Transform synthetic_accessibility() {
        return {TransformKind::SyntheticAccessibility};
    }
    static Transform affine(double a, double b);

    double operator()(double raw) const;
};

struct Objective {
    std::string name;
    RawDirection raw_direction = RawDirection::Maximize;
    Transform transform;
    double utopia = 1.0;  // transformed-space ideal
};

struct ObjectiveSpec {
    std::vector<Objective> objectives;

    Index count() const { return static_cast<Index>(objectives.size()); }

    /// Transform a full raw vector; throws ValueError on non-finite input.
    ObjectiveVector transform(const ObjectiveVector& raw) const;

    ObjectiveVector utopia() const;

    /// Two identity activities plus two docking objectives.
    static ObjectiveSpec default_four();

    static ObjectiveSpec from_json_file(const std::string& path);
};

}  // namespace combimots

#endif
