#ifndef COMBIMOTS_TYPES_HPP
#define COMBIMOTS_TYPES_HPP

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace combimots {

/// Objective vectors live in transformed maximize-space [0,1]^D.
/// Array (not Matrix) so comparisons and min/max are element-wise.
using ObjectiveVector = Eigen::ArrayXd;

using Index = Eigen::Index;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
    using Error::Error;
};

struct EmptyInputError : Error {
    using Error::Error;
};

struct ValueError : Error {
    using Error::Error;
};

struct CapacityError : Error {
    CapacityError(const std::string& msg, long long lower_bound)
        : Error(msg), lower_bound(lower_bound) {}
    long long lower_bound;
};

struct CompatibilityError : Error {
    using Error::Error;
};

struct UnknownEntityError : Error {
    using Error::Error;
};

struct OracleProtocolError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct InsufficientInputError : Error {
    using Error::Error;
};

inline void require_same_dim(const ObjectiveVector& a, const ObjectiveVector& b) {
    if (a.size() != b.size()) {
        throw DimensionError("objective vectors have dimensions " +
                             std::to_string(a.size()) + " and " +
                             std::to_string(b.size()));
    }
}

}  // namespace combimots

#endif
