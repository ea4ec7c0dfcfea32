#include "geosub/slowspace.hpp"

#include "geosub/linalg.hpp"

#include <string>

namespace geosub {

RosenbrockPencil build_pencil(const StateSpaceSystem& sys) {
    validate(sys);
    if (sys.p() != sys.m()) {
        throw NotSquare("the pencil construction requires p == m, got p = " +
                        std::to_string(sys.p()) + ", m = " + std::to_string(sys.m()));
    }
    const Index n = sys.n();
    const Index m = sys.m();
    RosenbrockPencil pen;
    pen.U1 = Matrix::Zero(n + m, n + m);
    pen.U1.topLeftCorner(n, n) = Matrix::Identity(n, n);
    pen.U2 = Matrix::Zero(n + m, n + m);
    pen.U2.topLeftCorner(n, n) = sys.A;
    pen.U2.topRightCorner(n, m) = sys.B;
    pen.U2.bottomLeftCorner(m, n) = sys.C;
    pen.U2.bottomRightCorner(m, m) = sys.D;
    return pen;
}

namespace {

SlowSpaceResult slow_space_in_region(const StateSpaceSystem& sys, EigRegion region, double tol) {
    const RosenbrockPencil pen = build_pencil(sys);
    PencilEigenspace eig = ordered_pencil_eigenspace(pen.U1, pen.U2, region, tol, sys.n());
    if (rank(eig.V1, tol, 1.0) != eig.r()) {
        throw NumericalInconsistency("V1 is not of full column rank; the subspace basis "
                                     "cannot be trusted at this tolerance");
    }
    SubspaceBasis space = image_basis(eig.V1, tol, 1.0);
    return {std::move(space), std::move(eig)};
}

}  // namespace

SlowSpaceResult weakly_unobservable(const StateSpaceSystem& sys, double tol) {
    return slow_space_in_region(sys, EigRegion::AllFinite, tol);
}

SlowSpaceResult good_weakly_unobservable(const StateSpaceSystem& sys, double tol) {
    return slow_space_in_region(sys, EigRegion::OpenLeftHalfPlane, tol);
}

Matrix friend_feedback(const PencilEigenspace& eig) {
    const Index r = eig.r();
    const Index n = eig.V1.rows();
    const Index m = eig.V2.rows();
    if (r == 0) {
        return Matrix::Zero(m, n);
    }
    if (rank(eig.V1, kDefaultTol, 1.0) < r) {
        throw NumericalInconsistency("V1 is rank deficient; no feedback satisfies F V1 = V2");
    }
    // Minimum-norm solution of F * V1 = V2.
    return eig.V2 * eig.V1.completeOrthogonalDecomposition().pseudoInverse();
}

}  // namespace geosub
