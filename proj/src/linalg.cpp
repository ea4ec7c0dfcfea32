#include "geosub/linalg.hpp"

#include <lapacke.h>

#include <algorithm>
#include <limits>
#include <cmath>
#include <string>
#include <vector>

namespace geosub {

namespace {

void require_finite(const Matrix& M, const char* what) {
    if (!M.allFinite()) {
        throw InvalidMatrix(std::string(what) + " has a NaN or Inf entry");
    }
}

Index count_above(const Eigen::VectorXd& sv, double tol, double scale_floor) {
    if (sv.size() == 0) return 0;
    const double thresh = tol * std::max(sv(0), scale_floor);  // sv is sorted descending
    Index r = 0;
    for (Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > thresh) ++r;
    }
    return r;
}

}  // namespace

Index rank(const Matrix& M, double tol, double scale_floor) {
    require_finite(M, "matrix");
    if (M.rows() == 0 || M.cols() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(M);
    return count_above(svd.singularValues(), tol, scale_floor);
}

SubspaceBasis nullspace_basis(const Matrix& M, double tol, double scale_floor) {
    require_finite(M, "matrix");
    const Index n = M.cols();
    if (n == 0) return SubspaceBasis::zero(0, tol);
    if (M.rows() == 0) return SubspaceBasis::full(n, tol);
    Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeFullV);
    const Index r = count_above(svd.singularValues(), tol, scale_floor);
    return SubspaceBasis{svd.matrixV().rightCols(n - r), tol};
}

SubspaceBasis image_basis(const Matrix& M, double tol, double scale_floor) {
    require_finite(M, "matrix");
    if (M.rows() == 0 || M.cols() == 0) return SubspaceBasis::zero(M.rows(), tol);
    Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeThinU);
    const Index r = count_above(svd.singularValues(), tol, scale_floor);
    return SubspaceBasis{svd.matrixU().leftCols(r), tol};
}

bool subspace_equal(const SubspaceBasis& U, const SubspaceBasis& V, double tol) {
    if (U.ambient_dim() != V.ambient_dim()) {
        throw DimensionMismatch("subspace_equal: ambient dimensions differ (" +
                                std::to_string(U.ambient_dim()) + " vs " +
                                std::to_string(V.ambient_dim()) + ")");
    }
    if (U.dim() != V.dim()) return false;
    if (U.dim() == 0) return true;
    const Matrix& A = U.basis;
    const Matrix& B = V.basis;
    const double res_a = (A - B * (B.transpose() * A)).colwise().norm().maxCoeff();
    const double res_b = (B - A * (A.transpose() * B)).colwise().norm().maxCoeff();
    return res_a <= tol && res_b <= tol;
}

bool pencil_is_regular(const Matrix& U1, const Matrix& U2, double tol) {
    if (U1.rows() != U1.cols() || U2.rows() != U2.cols() || U1.rows() != U2.rows()) {
        throw DimensionMismatch("pencil matrices must be square and of equal size");
    }
    require_finite(U1, "pencil matrix U1");
    require_finite(U2, "pencil matrix U2");
    const Index size = U1.rows();
    if (size == 0) return true;
    for (Index k = 1; k <= size + 1; ++k) {
        if (rank(static_cast<double>(k) * U1 - U2, tol) == size) return true;
    }
    return false;
}

PencilEigenspace ordered_pencil_eigenspace(const Matrix& U1, const Matrix& U2,
                                           EigRegion region, double tol, Index v1_rows) {
    if (U1.rows() != U1.cols() || U2.rows() != U2.cols() || U1.rows() != U2.rows()) {
        throw DimensionMismatch("pencil matrices must be square and of equal size");
    }
    require_finite(U1, "pencil matrix U1");
    require_finite(U2, "pencil matrix U2");
    const Index size = U1.rows();
    if (v1_rows < 0 || v1_rows > size) {
        throw DimensionMismatch("row split of the deflating basis is out of range");
    }
    if (!pencil_is_regular(U1, U2, tol)) {
        throw SingularPencil("det(s*U1 - U2) is identically zero");
    }

    const auto n = static_cast<lapack_int>(size);
    Matrix S = U2;  // generalized problem U2 x = lambda U1 x
    Matrix T = U1;
    Matrix Q(size, size), Z(size, size);
    std::vector<double> ar(size), ai(size), be(size);
    lapack_int sdim = 0;
    lapack_int info =
        LAPACKE_dgges(LAPACK_COL_MAJOR, 'V', 'V', 'N', nullptr, n, S.data(), n, T.data(), n,
                      &sdim, ar.data(), ai.data(), be.data(), Q.data(), n, Z.data(), n);
    if (info != 0) {
        throw NumericalInconsistency("generalized Schur decomposition failed (info = " +
                                     std::to_string(info) + ")");
    }

    const Matrix S0 = S, T0 = T, Z0 = Z;
    const std::vector<double> ar0 = ar, ai0 = ai, be0 = be;

    // Classify eigenvalues (alphar + i*alphai) / beta, reorder the selected
    // ones to the leading block, and accept only when the deflating-subspace
    // residual certificate holds. An eigenvalue at infinity perturbed by a
    // Jordan chain can surface with |beta| as large as eps^(1/chain length),
    // so the infinity floor is raised adaptively until the certificate
    // passes: a wrongly kept infinite eigenvalue makes T11 numerically
    // singular and blows up the residual.
    const double alpha_floor = tol * std::max(1.0, U2.norm());
    double beta_floor = tol * std::max(1.0, U1.norm());
    const double u1_scale = std::max(U1.norm(), 1e-300);
    const double u2_scale = std::max(U2.norm(), 1e-300);
    // Beyond this normalized magnitude an eigenvalue cannot be told apart
    // from one at infinity at the working precision (a Jordan chain of
    // length j at infinity surfaces as eigenvalues of magnitude ~eps^(-1/j)).
    const double lambda_cut = std::pow(tol, -2.0 / 3.0);
    std::string last_failure;
    for (Index attempt = 0; attempt <= size; ++attempt) {
        std::vector<lapack_logical> select(size, 0);
        Index count = 0;
        double smallest_kept_beta = -1.0;
        for (Index j = 0; j < size;) {
            const bool pair = ai0[j] != 0.0;
            const double abs_alpha = std::hypot(ar0[j], ai0[j]);
            const double abs_beta = std::abs(be0[j]);
            const double lambda_hat =
                (abs_alpha / u2_scale) / std::max(abs_beta / u1_scale, 1e-300);
            bool keep = false;
            if (abs_beta <= beta_floor || lambda_hat > lambda_cut) {
                if (abs_beta <= beta_floor && abs_alpha <= alpha_floor) {
                    throw NumericalInconsistency(
                        "indeterminate generalized eigenvalue (alpha and beta both ~ 0)");
                }
                keep = false;  // eigenvalue at infinity
            } else if (region == EigRegion::AllFinite) {
                keep = true;
            } else {
                // Re(lambda) = alphar / beta; ambiguous when |Re| <= tol * max(1, |lambda|).
                if (std::abs(ar0[j]) <= tol * std::max(abs_beta, abs_alpha)) {
                    throw BoundaryAmbiguity(
                        "generalized eigenvalue within tol of the imaginary axis");
                }
                keep = ar0[j] * be0[j] < 0.0;
            }
            if (keep) {
                smallest_kept_beta =
                    smallest_kept_beta < 0.0 ? abs_beta : std::min(smallest_kept_beta, abs_beta);
            }
            select[j] = keep ? 1 : 0;
            if (pair && j + 1 < size) {
                select[j + 1] = select[j];
                count += keep ? 2 : 0;
                j += 2;
            } else {
                count += keep ? 1 : 0;
                j += 1;
            }
        }

        S = S0;
        T = T0;
        Z = Z0;
        ar = ar0;
        ai = ai0;
        be = be0;
        if (count > 0 && count < size) {
            lapack_int m_sel = 0;
            double pl = 0.0, pr = 0.0, dif[2] = {0.0, 0.0};
            // Workspace managed by hand: this LAPACKE build's dtgsen
            // convenience wrapper crashes in its own workspace query.
            const lapack_int lwork = 4 * n + 16;
            std::vector<double> work(static_cast<std::size_t>(lwork));
            lapack_int iwork_stub = 0;  // iwork is not referenced when ijob == 0
            info = LAPACKE_dtgsen_work(LAPACK_COL_MAJOR, 0, 1, 1, select.data(), n, S.data(), n,
                                       T.data(), n, ar.data(), ai.data(), be.data(), Q.data(), n,
                                       Z.data(), n, &m_sel, &pl, &pr, dif, work.data(), lwork,
                                       &iwork_stub, 1);
            if (info != 0) {
                throw NumericalInconsistency("generalized Schur reordering failed (info = " +
                                             std::to_string(info) + ")");
            }
            if (m_sel != static_cast<lapack_int>(count)) {
                throw NumericalInconsistency("generalized Schur reordering lost eigenvalues");
            }
        }

        const Index r = count;
        const Matrix W = Z.leftCols(r);
        Matrix J(r, r);
        if (r > 0) {
            // U2*W = Q1*S11 and U1*W = Q1*T11, so J = T11^{-1} * S11 satisfies
            // U2*W = U1*W*J; T11 is invertible when only finite eigenvalues
            // are selected.
            J = T.topLeftCorner(r, r)
                    .triangularView<Eigen::Upper>()
                    .solve(S.topLeftCorner(r, r));
        }

        const double residual = J.allFinite() ? (U2 * W - U1 * W * J).norm()
                                              : std::numeric_limits<double>::infinity();
        if (residual <= tol * (1.0 + U2.norm())) {
            PencilEigenspace out;
            out.V1 = W.topRows(v1_rows);
            out.V2 = W.bottomRows(size - v1_rows);
            out.J = J;
            return out;
        }
        last_failure = "pencil eigenspace residual " + std::to_string(residual) +
                       " exceeds tolerance";
        if (count == 0) break;  // nothing left to drop
        beta_floor = smallest_kept_beta * (1.0 + 1e-9);
    }
    throw NumericalInconsistency(last_failure.empty() ? "pencil eigenspace computation failed"
                                                      : last_failure);
}

}  // namespace geosub
