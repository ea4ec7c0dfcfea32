#pragma once

#include "geosub/sysmodel.hpp"
#include "geosub/types.hpp"

#include <vector>

namespace geosub {

/// Block anti-triangular matrix of Markov parameters. Block row i and block
/// column j (0-indexed) hold D when j == k-1-i, C A^(i+j-k) B when j > k-1-i,
/// and zero otherwise; for k == 1 the matrix is D itself.
struct MarkovMatrix {
    Index k = 0;                 // block order >= 1
    std::vector<Matrix> params;  // params[0] = D, params[t] = C A^(t-1) B for t >= 1
    Matrix assembled;            // (k*p) x (k*m)
};

/// Basis of the space of admissible impulsive inputs
/// { sum_i N_i v delta^(i) : v in R^f }; the columns of N (the stacked N_i)
/// form an orthonormal basis of ker M_{f-d+1}.
struct ImpulsiveInputBasis {
    Index f = 0;       // dim of the admissible impulsive input space
    Index d = 0;       // dim ker D
    Index m = 0;       // input dimension (block height)
    Matrix N;          // ((f-d+1)*m) x f; m x 0 when f == 0

    Index block_count() const { return f == 0 ? 0 : f - d + 1; }
    Matrix block(Index i) const { return N.middleRows(i * m, m); }
};

MarkovMatrix build_markov(const StateSpaceSystem& sys, Index k);

/// [dim ker M_1, ..., dim ker M_k_max]; non-decreasing, constant after the
/// first repeated value.
std::vector<Index> kernel_dim_sequence(const StateSpaceSystem& sys, Index k_max,
                                       double tol = kDefaultTol);

/// Finds the smallest k with dim ker M_k == dim ker M_{k+1} =: f and returns
/// the kernel basis of M_{f-d+1}. Throws InfiniteImpulsiveSpace when the
/// kernel dimensions exceed n without stabilizing (the input space is not
/// finite-dimensional).
ImpulsiveInputBasis impulsive_space(const StateSpaceSystem& sys, double tol = kDefaultTol);

/// True iff col(u_0, ..., u_k) lies in ker M_{k+1} within tol; equivalent to
/// G(s) * (u_0 + u_1 s + ... + u_k s^k) being strictly proper.
bool is_admissible(const StateSpaceSystem& sys, const std::vector<Vector>& coeffs,
                   double tol = kDefaultTol);

/// Drops u_0 and shifts the remaining coefficients down one derivative order.
std::vector<Vector> shift_input(const std::vector<Vector>& coeffs);

/// Impulsive state coefficients x_0, ..., x_{k-2} generated by the input
/// coefficients u_0, ..., u_{k-1}: x_{k-2} = B u_{k-1}, then descending
/// x_{k-l} = A x_{k-l+1} + B u_{k-l+1}.
std::vector<Vector> impulse_state_coeffs(const StateSpaceSystem& sys,
                                         const std::vector<Vector>& coeffs);

/// State reached instantaneously from the origin:
/// [B AB ... A^(k-1)B] * col(u_0, ..., u_{k-1}). Requires an admissible input.
Vector strong_state_from_input(const StateSpaceSystem& sys, const std::vector<Vector>& coeffs,
                               double tol = kDefaultTol);

/// Strongly reachable subspace img([B AB ... A^(f-d)B] * N); the computed
/// dimension is checked against f before returning.
SubspaceBasis fast_space(const StateSpaceSystem& sys, double tol = kDefaultTol);

}  // namespace geosub
