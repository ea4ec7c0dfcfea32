#include "geosub/markov.hpp"

#include "geosub/linalg.hpp"

#include <algorithm>
#include <string>

namespace geosub {

namespace {

// Markov parameter blocks D, CB, CAB, ..., C A^(count-2) B.
std::vector<Matrix> markov_params(const StateSpaceSystem& sys, Index count) {
    std::vector<Matrix> params;
    params.reserve(static_cast<std::size_t>(count));
    params.push_back(sys.D);
    Matrix CA = sys.C;
    for (Index t = 1; t < count; ++t) {
        params.push_back(CA * sys.B);
        CA = CA * sys.A;
    }
    return params;
}

// Anti-triangular assembly from a shared parameter list (params.size() >= k).
Matrix assemble(const std::vector<Matrix>& params, Index k, Index p, Index m) {
    Matrix M = Matrix::Zero(k * p, k * m);
    for (Index i = 0; i < k; ++i) {
        for (Index j = 0; j < k; ++j) {
            const Index idx = i + j - k + 1;  // 0 -> D, t -> C A^(t-1) B
            if (idx >= 0) {
                M.block(i * p, j * m, p, m) = params[static_cast<std::size_t>(idx)];
            }
        }
    }
    return M;
}

Vector stack_coeffs(const std::vector<Vector>& coeffs, Index m) {
    Vector u(static_cast<Index>(coeffs.size()) * m);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i].size() != m) {
            throw DimensionMismatch("input coefficient " + std::to_string(i) + " must have " +
                                    std::to_string(m) + " entries");
        }
        u.segment(static_cast<Index>(i) * m, m) = coeffs[i];
    }
    return u;
}

// [B AB ... A^(blocks-1) B], n x (blocks*m).
Matrix reachability_blocks(const StateSpaceSystem& sys, Index blocks) {
    Matrix K(sys.n(), blocks * sys.m());
    Matrix AB = sys.B;
    for (Index i = 0; i < blocks; ++i) {
        K.middleCols(i * sys.m(), sys.m()) = AB;
        AB = sys.A * AB;
    }
    return K;
}

}  // namespace

MarkovMatrix build_markov(const StateSpaceSystem& sys, Index k) {
    validate(sys);
    if (k < 1) {
        throw InvalidOrder("Markov matrix order must be >= 1");
    }
    MarkovMatrix out;
    out.k = k;
    out.params = markov_params(sys, k);
    out.assembled = assemble(out.params, k, sys.p(), sys.m());
    return out;
}

std::vector<Index> kernel_dim_sequence(const StateSpaceSystem& sys, Index k_max, double tol) {
    validate(sys);
    if (k_max < 1) {
        throw InvalidOrder("k_max must be >= 1");
    }
    const auto params = markov_params(sys, k_max);
    std::vector<Index> dims;
    dims.reserve(static_cast<std::size_t>(k_max));
    for (Index k = 1; k <= k_max; ++k) {
        dims.push_back(nullspace_basis(assemble(params, k, sys.p(), sys.m()), tol).dim());
    }
    return dims;
}

ImpulsiveInputBasis impulsive_space(const StateSpaceSystem& sys, double tol) {
    validate(sys);
    const Index n = sys.n();
    const Index m = sys.m();
    const Index k_cap = n + 2;
    const auto params = markov_params(sys, k_cap);

    // Kernel dimensions grow by at least one per step until they stabilize at
    // f = dim(R_s) <= n, so exceeding n means they never stabilize.
    std::vector<Index> dims;
    Index f = -1;
    for (Index k = 1; k <= k_cap; ++k) {
        dims.push_back(nullspace_basis(assemble(params, k, sys.p(), sys.m()), tol).dim());
        if (dims.back() > n) {
            throw InfiniteImpulsiveSpace(
                "kernel dimension of the Markov matrices exceeds n before stabilizing");
        }
        if (k >= 2 && dims[k - 1] == dims[k - 2]) {
            f = dims[k - 1];
            break;
        }
    }
    if (f < 0) {
        throw InfiniteImpulsiveSpace("Markov kernel dimensions did not stabilize up to n + 2");
    }

    const Index d = dims[0];
    if (f < d) {
        throw NumericalInconsistency("stabilized kernel dimension fell below dim ker D");
    }
    const auto first_stable = static_cast<Index>(dims.size()) - 1;  // k of the first repeat
    if (first_stable > f - d + 1) {
        throw NumericalInconsistency("kernel dimensions stabilized later than index f - d + 1");
    }

    ImpulsiveInputBasis out;
    out.f = f;
    out.d = d;
    out.m = m;
    if (f == 0) {
        out.N = Matrix::Zero(m, 0);
        return out;
    }
    const Index order = f - d + 1;
    out.N = nullspace_basis(assemble(params, order, sys.p(), sys.m()), tol).basis;
    if (out.N.cols() != f) {
        throw NumericalInconsistency("dim ker M_{f-d+1} = " + std::to_string(out.N.cols()) +
                                     " does not equal f = " + std::to_string(f));
    }
    return out;
}

bool is_admissible(const StateSpaceSystem& sys, const std::vector<Vector>& coeffs, double tol) {
    validate(sys);
    if (coeffs.empty()) return true;  // no impulsive part
    const Vector u = stack_coeffs(coeffs, sys.m());
    const MarkovMatrix mk = build_markov(sys, static_cast<Index>(coeffs.size()));
    const double residual = (mk.assembled * u).norm();
    return residual <= tol * std::max(1.0, mk.assembled.norm() * u.norm());
}

std::vector<Vector> shift_input(const std::vector<Vector>& coeffs) {
    if (coeffs.size() < 2) {
        throw NothingToShift("shift requires at least one delta-derivative coefficient");
    }
    return {coeffs.begin() + 1, coeffs.end()};
}

std::vector<Vector> impulse_state_coeffs(const StateSpaceSystem& sys,
                                         const std::vector<Vector>& coeffs) {
    validate(sys);
    const auto k = static_cast<Index>(coeffs.size());
    if (k < 2) {
        throw NoImpulsivePart("the state trajectory has no impulsive part for inputs of order 0");
    }
    stack_coeffs(coeffs, sys.m());  // dimension check
    std::vector<Vector> x(static_cast<std::size_t>(k - 1));
    x[static_cast<std::size_t>(k - 2)] = sys.B * coeffs[static_cast<std::size_t>(k - 1)];
    for (Index l = 3; l <= k; ++l) {
        x[static_cast<std::size_t>(k - l)] =
            sys.A * x[static_cast<std::size_t>(k - l + 1)] +
            sys.B * coeffs[static_cast<std::size_t>(k - l + 1)];
    }
    return x;
}

Vector strong_state_from_input(const StateSpaceSystem& sys, const std::vector<Vector>& coeffs,
                               double tol) {
    if (!is_admissible(sys, coeffs, tol)) {
        throw NotAdmissible("input coefficients are not an admissible impulsive input");
    }
    Vector xs = Vector::Zero(sys.n());
    Matrix AB = sys.B;
    for (const auto& u : coeffs) {
        xs += AB * u;
        AB = sys.A * AB;
    }
    return xs;
}

SubspaceBasis fast_space(const StateSpaceSystem& sys, double tol) {
    const ImpulsiveInputBasis imp = impulsive_space(sys, tol);
    const Index blocks = std::max<Index>(imp.f - imp.d + 1, 1);
    const Matrix K = reachability_blocks(sys, blocks);
    SubspaceBasis out = image_basis(K * imp.N, tol, std::max(1.0, K.norm()));
    if (out.dim() != imp.f) {
        throw NumericalInconsistency(
            "strongly reachable subspace dimension " + std::to_string(out.dim()) +
            " does not equal dim of the admissible impulsive input space " +
            std::to_string(imp.f));
    }
    return out;
}

}  // namespace geosub
