#pragma once

#include "geosub/sysmodel.hpp"
#include "geosub/types.hpp"

namespace geosub {

/// Pencil pair of a square system: U1 = [[I_n, 0], [0, 0]], U2 = [[A, B], [C, D]].
struct RosenbrockPencil {
    Matrix U1;
    Matrix U2;
};

/// Requires p == m (throws NotSquare otherwise).
RosenbrockPencil build_pencil(const StateSpaceSystem& sys);

struct SlowSpaceResult {
    SubspaceBasis space;
    PencilEigenspace eig;
};

/// Weakly unobservable subspace O_w = img V1 from the all-finite eigenspace
/// of the pencil; dim O_w = deg det(s*U1 - U2).
SlowSpaceResult weakly_unobservable(const StateSpaceSystem& sys, double tol = kDefaultTol);

/// Good weakly unobservable subspace: same construction restricted to the
/// open-left-half-plane eigenvalues. Eigenvalues within tol of the imaginary
/// axis raise BoundaryAmbiguity instead of being classified arbitrarily.
SlowSpaceResult good_weakly_unobservable(const StateSpaceSystem& sys, double tol = kDefaultTol);

/// Feedback F with F * V1 = V2 (minimum-norm extension off img V1), so that
/// (A + B F) V1 = V1 J and (C + D F) V1 = 0.
Matrix friend_feedback(const PencilEigenspace& eig);

}  // namespace geosub
