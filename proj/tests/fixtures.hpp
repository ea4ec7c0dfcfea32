#pragma once

#include "geosub/sysmodel.hpp"

// Hand-computed fixture systems shared across the test suites.
namespace fixtures {

using geosub::Matrix;
using geosub::StateSpaceSystem;

// G(s) = 1/s^2. Every impulsive input a*delta + b*delta' is admissible and
// the strongly reachable subspace is the whole plane.
inline StateSpaceSystem double_integrator() {
    StateSpaceSystem sys;
    sys.A = (Matrix(2, 2) << 0, 1, 0, 0).finished();
    sys.B = (Matrix(2, 1) << 0, 1).finished();
    sys.C = (Matrix(1, 2) << 1, 0).finished();
    sys.D = Matrix::Zero(1, 1);
    return sys;
}

// G(s) = (s+2)/(s+1): biproper scalar system, no admissible impulses,
// one-dimensional slow space with pencil eigenvalue -2.
inline StateSpaceSystem scalar_biproper() {
    StateSpaceSystem sys;
    sys.A = (Matrix(1, 1) << -1).finished();
    sys.B = (Matrix(1, 1) << 1).finished();
    sys.C = (Matrix(1, 1) << 1).finished();
    sys.D = (Matrix(1, 1) << 1).finished();
    return sys;
}

// Tall single-input system, G(s) = [1/(s+1); 1]: left-invertible, not square.
inline StateSpaceSystem tall_single_input() {
    StateSpaceSystem sys;
    sys.A = (Matrix(1, 1) << -1).finished();
    sys.B = (Matrix(1, 1) << 1).finished();
    sys.C = (Matrix(2, 1) << 1, 0).finished();
    sys.D = (Matrix(2, 1) << 0, 1).finished();
    return sys;
}

// G(s) identically zero: every Markov parameter vanishes, the admissible
// impulsive input space is infinite-dimensional and the pencil is singular.
inline StateSpaceSystem zero_transfer() {
    StateSpaceSystem sys;
    sys.A = Matrix::Zero(2, 2);
    sys.B = (Matrix(2, 1) << 1, 0).finished();
    sys.C = (Matrix(1, 2) << 0, 1).finished();
    sys.D = Matrix::Zero(1, 1);
    return sys;
}

// G(s) = s/(s-1), det(s*U1 - U2) = -s: a root exactly on the imaginary
// axis, so the good slow space cannot be classified.
inline StateSpaceSystem axis_root() {
    StateSpaceSystem sys;
    sys.A = (Matrix(1, 1) << 1).finished();
    sys.B = (Matrix(1, 1) << 1).finished();
    sys.C = (Matrix(1, 1) << 1).finished();
    sys.D = (Matrix(1, 1) << 1).finished();
    return sys;
}

}  // namespace fixtures
