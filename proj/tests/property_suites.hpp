#pragma once

#include "geosub/linalg.hpp"
#include "geosub/markov.hpp"
#include "geosub/sysmodel.hpp"
#include "geosub/transferdim.hpp"

#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

// Randomized invariant suites, shared between the property test binary and
// the acceptance runner. Each suite returns the number of instances checked
// and a description of every failure.
namespace properties {

using namespace geosub;

struct SuiteResult {
    int instances = 0;
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
};

namespace detail {

inline StateSpaceSystem draw_system(std::mt19937_64& rng) {
    const Index n = 1 + static_cast<Index>(rng() % 6);
    const Index m = 1 + static_cast<Index>(rng() % 3);
    const Index p = 1 + static_cast<Index>(rng() % 3);
    StateSpaceSystem sys = random_system(n, m, p, rng());
    // Fully random integer D is almost always of full column rank, which
    // leaves no admissible impulses; bias toward rank-deficient feedthrough.
    switch (rng() % 3) {
        case 1:
            sys.D.setZero();
            break;
        case 2:
            sys.D.col(static_cast<Index>(rng() % static_cast<std::uint64_t>(m))).setZero();
            break;
        default:
            break;
    }
    return sys;
}

inline void note(SuiteResult& r, std::uint64_t seed, const std::string& what) {
    r.failures.push_back("instance " + std::to_string(seed) + ": " + what);
}

// A rank decision is trusted only when every singular value is certified:
// at most a machine-roundoff multiple of sigma_max (an exact zero), or
// comfortably above the rank threshold. Deep-order Markov matrices of some
// integer systems are exactly nonsingular yet carry singular values near or
// below eps * sigma_max; their exact kernel dimensions are not decidable in
// double precision.
inline bool rank_decidable(const Matrix& M, double tol = kDefaultTol, double band = 50.0) {
    if (M.rows() == 0 || M.cols() == 0) return true;
    Eigen::JacobiSVD<Matrix> svd(M);
    const auto& sv = svd.singularValues();
    const double certified_zero = 64.0 * std::numeric_limits<double>::epsilon() * sv(0);
    const double certified_nonzero = band * tol * sv(0);
    for (Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > certified_zero && sv(i) <= certified_nonzero) return false;
    }
    return true;
}

}  // namespace detail

// Kernel nesting, monotonicity, stabilization, and both block partitions of
// the Markov parameter matrices.
inline SuiteResult markov_kernel_suite(int instances, std::uint64_t seed = 101) {
    SuiteResult result;
    std::mt19937_64 rng(seed);
    int skipped = 0;
    for (int t = 0; result.instances < instances && t < instances * 4; ++t) {
        const auto sys = detail::draw_system(rng);
        const Index n = sys.n(), m = sys.m(), p = sys.p();

        bool decidable = true;
        for (Index k = 1; k <= n + 2 && decidable; ++k) {
            decidable = detail::rank_decidable(build_markov(sys, k).assembled);
        }
        if (!decidable) {
            ++skipped;
            continue;
        }
        ++result.instances;

        const auto dims = kernel_dim_sequence(sys, n + 2);
        bool repeated = false;
        for (std::size_t k = 1; k < dims.size(); ++k) {
            if (dims[k] < dims[k - 1]) {
                detail::note(result, t, "kernel dimension sequence decreased");
            }
            if (repeated && dims[k] != dims[k - 1]) {
                detail::note(result, t, "kernel dimensions changed after stabilizing");
            }
            repeated = repeated || dims[k] == dims[k - 1];
        }

        for (Index k = 1; k <= n + 1; ++k) {
            const auto mk = build_markov(sys, k);
            const auto mk1 = build_markov(sys, k + 1);

            // v in ker M_k implies col(v, 0) in ker M_{k+1}.
            const auto kernel = nullspace_basis(mk.assembled);
            if (kernel.dim() > 0) {
                Matrix padded = Matrix::Zero((k + 1) * m, kernel.dim());
                padded.topRows(k * m) = kernel.basis;
                const double residual = (mk1.assembled * padded).norm();
                if (residual > 1e-8 * std::max(1.0, mk1.assembled.norm())) {
                    detail::note(result, t, "kernel nesting violated at k = " + std::to_string(k));
                }
            }

            // M_{k+1} = [[0, D], [M_k, m_{k+1}]] = [[0, M_k], [D, l_{k+1}]].
            Matrix first = Matrix::Zero((k + 1) * p, (k + 1) * m);
            first.topRightCorner(p, m) = sys.D;
            first.bottomLeftCorner(k * p, k * m) = mk.assembled;
            for (Index i = 1; i <= k; ++i) {
                first.block(i * p, k * m, p, m) = mk1.params[static_cast<std::size_t>(i)];
            }
            Matrix second = Matrix::Zero((k + 1) * p, (k + 1) * m);
            second.topRightCorner(k * p, k * m) = mk.assembled;
            second.bottomLeftCorner(p, m) = sys.D;
            for (Index j = 1; j <= k; ++j) {
                second.block(k * p, j * m, p, m) = mk1.params[static_cast<std::size_t>(j)];
            }
            if (mk1.assembled != first || mk1.assembled != second) {
                detail::note(result, t, "block partition identity failed at k = " + std::to_string(k));
            }
        }
    }
    // The indeterminate fraction must stay small or the gate itself is
    // hiding a defect.
    if (skipped * 4 > instances) {
        result.failures.push_back("too many rank-indeterminate instances: " +
                                  std::to_string(skipped));
    }
    return result;
}

// Admissible inputs stay admissible after dropping the lowest-order impulse,
// and the kernel test agrees with the transfer-matrix degree test.
inline SuiteResult shift_closure_suite(int instances, std::uint64_t seed = 202) {
    SuiteResult result;
    std::mt19937_64 rng(seed);
    for (int t = 0; t < instances; ++t) {
        const auto sys = detail::draw_system(rng);
        const Index m = sys.m();
        ++result.instances;

        std::vector<Vector> coeffs;
        bool admissible_by_construction = false;
        try {
            const auto imp = impulsive_space(sys);
            if (imp.f > 0) {
                Vector v(imp.f);
                for (Index i = 0; i < imp.f; ++i) {
                    v(i) = static_cast<double>(1 + rng() % 5);
                }
                const Vector stacked = imp.N * v;
                for (Index b = 0; b < imp.block_count(); ++b) {
                    coeffs.push_back(stacked.segment(b * m, m));
                }
                admissible_by_construction = true;
            }
        } catch (const InfiniteImpulsiveSpace&) {
            // fall through to a random stack below
        }
        if (coeffs.empty()) {
            const auto k = 2 + rng() % 3;
            for (std::uint64_t i = 0; i < k; ++i) {
                Vector u(m);
                for (Index j = 0; j < m; ++j) {
                    u(j) = static_cast<double>(static_cast<int>(rng() % 7) - 3);
                }
                coeffs.push_back(u);
            }
        }

        if (admissible_by_construction && !is_admissible(sys, coeffs)) {
            detail::note(result, t, "kernel combination reported inadmissible");
            continue;
        }
        if (is_admissible(sys, coeffs) && coeffs.size() >= 2) {
            if (!is_admissible(sys, shift_input(coeffs))) {
                detail::note(result, t, "shifted admissible input became inadmissible");
            }
        }

        // Kernel membership and strict properness of G*U are one predicate.
        try {
            if (strictly_proper_product_check(sys, coeffs) != is_admissible(sys, coeffs)) {
                detail::note(result, t, "degree test disagrees with kernel test");
            }
        } catch (const NumericalInconsistency& e) {
            detail::note(result, t, e.what());
        }
    }
    return result;
}

// even_numdet returns an even polynomial of degree <= 2n on left-invertible
// systems (the odd-coefficient gate throws when violated).
inline SuiteResult even_symmetry_suite(int instances, std::uint64_t seed = 303) {
    SuiteResult result;
    std::mt19937_64 rng(seed);
    int attempts = 0;
    while (result.instances < instances && attempts < instances * 40) {
        ++attempts;
        const auto sys = detail::draw_system(rng);
        if (!is_left_invertible(sys)) continue;
        ++result.instances;
        try {
            const Polynomial q = even_numdet(sys);
            if (q.is_zero()) {
                detail::note(result, attempts, "zero numerator on a left-invertible system");
                continue;
            }
            if (q.degree() % 2 != 0 || q.degree() > 2 * static_cast<int>(sys.n())) {
                detail::note(result, attempts, "numerator degree " + std::to_string(q.degree()));
            }
            for (int i = 1; i <= q.degree(); i += 2) {
                if (q.coeff(i) != 0.0) {
                    detail::note(result, attempts, "odd coefficient survived");
                }
            }
        } catch (const Error& e) {
            detail::note(result, attempts, e.what());
        }
    }
    return result;
}

// (sI - A) adj(s) = chi(s) I as a polynomial identity, for n up to 8.
inline SuiteResult adjugate_identity_suite(int instances, std::uint64_t seed = 404) {
    SuiteResult result;
    std::mt19937_64 rng(seed);
    for (int t = 0; t < instances; ++t) {
        const Index n = 1 + static_cast<Index>(rng() % 8);
        const Matrix A = random_system(n, 1, 1, rng()).A;
        ++result.instances;

        const auto [chi, adj] = char_poly_and_adjugate(A);
        PolyMatrix lhs = PolyMatrix::from_constant(-A);
        for (Index i = 0; i < n; ++i) {
            lhs.at(i, i) = lhs.at(i, i) + Polynomial({0, 1});
        }
        const PolyMatrix prod = lhs * adj;
        const double scale = std::max(1.0, chi.max_abs_coeff());
        for (Index i = 0; i < n; ++i) {
            for (Index j = 0; j < n; ++j) {
                const Polynomial want = i == j ? chi : Polynomial();
                if ((prod.at(i, j) - want).max_abs_coeff() > 1e-8 * scale) {
                    detail::note(result, t, "adjugate identity residual too large");
                }
            }
        }
    }
    return result;
}

}  // namespace properties
