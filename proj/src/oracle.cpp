#include "geosub/oracle.hpp"

#include "geosub/linalg.hpp"
#include "geosub/markov.hpp"
#include "geosub/slowspace.hpp"
#include "geosub/transferdim.hpp"

#include <string>
#include <utility>

namespace geosub {

namespace {

// Rows spanning the orthogonal complement of img(basis) in R^ambient.
Matrix left_annihilator(const Matrix& basis, Index ambient, double tol) {
    if (basis.cols() == 0) return Matrix::Identity(ambient, ambient);
    return nullspace_basis(basis.transpose(), tol).basis.transpose();
}

std::string dim_string(const SubspaceBasis& s) { return "dim " + std::to_string(s.dim()); }

}  // namespace

SubspaceBasis recursive_fast_space(const StateSpaceSystem& sys, double tol) {
    validate(sys);
    const Index n = sys.n();
    const Index m = sys.m();
    const Index p = sys.p();
    Matrix AB(n, n + m);
    AB << sys.A, sys.B;
    Matrix CD(p, n + m);
    CD << sys.C, sys.D;

    SubspaceBasis R = SubspaceBasis::zero(n, tol);
    for (Index iter = 0; iter < n + 2; ++iter) {
        // (R x R^m) intersect ker [C D] as one nullspace: stack [C D] with a
        // left annihilator of R acting on the state coordinates.
        const Matrix Q = left_annihilator(R.basis, n, tol);
        Matrix K(p + Q.rows(), n + m);
        K.topRows(p) = CD;
        K.bottomLeftCorner(Q.rows(), n) = Q;
        K.bottomRightCorner(Q.rows(), m).setZero();
        const SubspaceBasis S = nullspace_basis(K, tol);
        // The product inherits error at the scale of [A B], not of itself.
        SubspaceBasis next = image_basis(AB * S.basis, tol, std::max(1.0, AB.norm()));
        if (subspace_equal(next, R, tol)) return next;
        R = std::move(next);
    }
    return R;
}

SubspaceBasis recursive_weakly_unobservable(const StateSpaceSystem& sys, double tol) {
    validate(sys);
    const Index n = sys.n();
    const Index m = sys.m();
    const Index p = sys.p();

    SubspaceBasis V = SubspaceBasis::full(n, tol);
    for (Index iter = 0; iter < n + 2; ++iter) {
        // x in V_next iff some u solves Q(Ax + Bu) = 0 and Cx + Du = 0, where
        // Q annihilates V; project the joint (x, u) nullspace onto x.
        const Matrix Q = left_annihilator(V.basis, n, tol);
        Matrix K(Q.rows() + p, n + m);
        K.topLeftCorner(Q.rows(), n) = Q * sys.A;
        K.topRightCorner(Q.rows(), m) = Q * sys.B;
        K.bottomLeftCorner(p, n) = sys.C;
        K.bottomRightCorner(p, m) = sys.D;
        const SubspaceBasis S = nullspace_basis(K, tol);
        // Slice of an orthonormal basis: noise sits at unit scale.
        SubspaceBasis next = image_basis(S.basis.topRows(n), tol, 1.0);
        if (subspace_equal(next, V, tol)) return next;
        V = std::move(next);
    }
    return V;
}

CrossCheckReport cross_check(const StateSpaceSystem& sys, double tol) {
    validate(sys);
    CrossCheckReport report;
    const Index n = sys.n();

    const SubspaceBasis oracle_fast = recursive_fast_space(sys, tol);
    const SubspaceBasis oracle_slow = recursive_weakly_unobservable(sys, tol);

    // Closed-form fast space and impulsive input space.
    std::optional<ImpulsiveInputBasis> imp;
    std::optional<SubspaceBasis> fast;
    std::string fast_status;
    try {
        imp = impulsive_space(sys, tol);
        fast = fast_space(sys, tol);
    } catch (const InfiniteImpulsiveSpace&) {
        fast_status = "inapplicable (InfiniteImpulsiveSpace)";
    } catch (const Error& e) {
        fast_status = std::string("error (") + e.what() + ")";
    }

    {
        CheckEntry e;
        e.quantity = "fast_space";
        e.oracle = dim_string(oracle_fast) + " (recursive)";
        if (fast) {
            e.closed_form = dim_string(*fast);
            e.agree = subspace_equal(*fast, oracle_fast, tol);
        } else {
            e.closed_form = fast_status;
        }
        report.entries.push_back(std::move(e));
    }

    // Closed-form slow space (square systems with a regular pencil only).
    std::optional<SlowSpaceResult> slow;
    std::string slow_status;
    try {
        slow = weakly_unobservable(sys, tol);
    } catch (const NotSquare&) {
        slow_status = "inapplicable (NotSquare)";
    } catch (const SingularPencil&) {
        slow_status = "inapplicable (SingularPencil)";
    } catch (const Error& e) {
        slow_status = std::string("error (") + e.what() + ")";
    }

    {
        CheckEntry e;
        e.quantity = "slow_space";
        e.oracle = dim_string(oracle_slow) + " (recursive)";
        if (slow) {
            e.closed_form = dim_string(slow->space);
            e.agree = subspace_equal(slow->space, oracle_slow, tol);
        } else {
            e.closed_form = slow_status;
        }
        report.entries.push_back(std::move(e));
    }

    // dim of the admissible impulsive input space vs dim of the fast space.
    {
        CheckEntry e;
        e.quantity = "uimp_dim_vs_fast_dim";
        e.oracle = dim_string(oracle_fast) + " (recursive fast space)";
        if (imp) {
            e.closed_form = "f = " + std::to_string(imp->f);
            e.agree = imp->f == oracle_fast.dim() && fast && fast->dim() == imp->f;
        } else {
            e.closed_form = fast_status;
        }
        report.entries.push_back(std::move(e));
    }

    // Transfer-matrix dimension formula vs the Markov route.
    {
        CheckEntry e;
        e.quantity = "transfer_nf_vs_f";
        const bool left_inv = is_left_invertible(sys, tol);
        if (!left_inv) {
            e.closed_form = "inapplicable (NotLeftInvertible)";
            e.oracle = imp ? "f = " + std::to_string(imp->f) : fast_status;
        } else {
            std::string dims_text;
            std::optional<Index> n_f;
            try {
                const TransferDims dims = dims_from_transfer(sys, tol);
                n_f = dims.n_f;
                dims_text = "n_f = " + std::to_string(dims.n_f);
            } catch (const Error& err) {
                dims_text = std::string("error (") + err.what() + ")";
            }
            e.closed_form = dims_text;
            if (imp) {
                e.oracle = "f = " + std::to_string(imp->f);
                e.agree = n_f.has_value() && *n_f == imp->f;
            } else {
                // Left-invertible transfer matrices must have a finite
                // impulsive input space; disagreement, not inapplicability.
                e.oracle = fast_status;
                e.agree = false;
            }
        }
        report.entries.push_back(std::move(e));
    }

    // Direct sum O_w (+) R_s = R^n for square systems with invertible
    // transfer matrix (equivalently: regular pencil).
    {
        CheckEntry e;
        e.quantity = "slow_fast_direct_sum";
        e.oracle = "n = " + std::to_string(n);
        if (slow && fast) {
            Matrix joint(n, slow->space.dim() + fast->dim());
            joint << slow->space.basis, fast->basis;
            const Index joint_rank = rank(joint, tol);
            e.closed_form = "dim O_w + dim R_s = " +
                            std::to_string(slow->space.dim() + fast->dim()) +
                            ", rank [O_w R_s] = " + std::to_string(joint_rank);
            e.agree = slow->space.dim() + fast->dim() == n && joint_rank == n;
        } else {
            e.closed_form = "inapplicable (needs closed-form slow and fast spaces)";
        }
        report.entries.push_back(std::move(e));
    }

    return report;
}

}  // namespace geosub
