#pragma once

#include "geosub/types.hpp"

#include <cstdint>
#include <string>
#include <utility>

namespace geosub {

/// Continuous-time LTI system dx/dt = A x + B u, y = C x + D u.
struct StateSpaceSystem {
    Matrix A;  // n x n
    Matrix B;  // n x m
    Matrix C;  // p x n
    Matrix D;  // p x m

    Index n() const { return A.rows(); }
    Index m() const { return B.cols(); }
    Index p() const { return C.rows(); }
};

/// Throws ShapeMismatch or NonFiniteEntry when the system is malformed.
void validate(const StateSpaceSystem& sys);

/// Deterministic random system with integer entries drawn uniformly from
/// entry_range (inclusive). Same arguments, same system.
StateSpaceSystem random_system(Index n, Index m, Index p, std::uint64_t seed,
                               std::pair<int, int> entry_range = {-3, 3});

/// JSON file round trip; load(save(sys)) == sys bit-exactly for finite doubles.
StateSpaceSystem load_system(const std::string& path);
void save_system(const StateSpaceSystem& sys, const std::string& path);

}  // namespace geosub
