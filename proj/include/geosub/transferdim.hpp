#pragma once

#include "geosub/sysmodel.hpp"
#include "geosub/types.hpp"

#include <utility>
#include <vector>

namespace geosub {

/// Real polynomial in ascending powers. Exact-zero leading coefficients are
/// stripped on construction; the zero polynomial has an empty coefficient
/// list and degree() == kZeroDegree (standing in for -infinity).
class Polynomial {
  public:
    static constexpr int kZeroDegree = -1;
    // Relative threshold below which an interpolated coefficient is noise.
    static constexpr double kTrimRelTol = 1e-8;

    Polynomial() = default;
    explicit Polynomial(std::vector<double> coeffs);

    static Polynomial constant(double c);

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    /// Coefficient of s^i (0 beyond the degree).
    double coeff(int i) const;
    const std::vector<double>& coeffs() const { return coeffs_; }
    double max_abs_coeff() const;

    double eval(double s) const;
    /// p(-s): sign of every odd coefficient flipped.
    Polynomial reflected() const;
    /// Zeros every coefficient with |c_i| <= rel_tol * max_j |c_j| and strips
    /// the degree accordingly.
    Polynomial trimmed(double rel_tol = kTrimRelTol) const;

    Polynomial operator-() const;
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(double c, const Polynomial& p);

  private:
    std::vector<double> coeffs_;  // ascending; empty or nonzero back()
};

/// Quotient/remainder of polynomial long division.
struct PolyDivision {
    Polynomial quotient;
    Polynomial remainder;
};
PolyDivision poly_divide(const Polynomial& dividend, const Polynomial& divisor);

/// Dense matrix with polynomial entries (row-major storage).
struct PolyMatrix {
    Index rows = 0;
    Index cols = 0;
    std::vector<Polynomial> entries;

    static PolyMatrix zero(Index rows, Index cols);
    static PolyMatrix from_constant(const Matrix& M);

    Polynomial& at(Index r, Index c);
    const Polynomial& at(Index r, Index c) const;

    Matrix eval(double s) const;
    PolyMatrix transpose() const;
    /// Entrywise s -> -s.
    PolyMatrix reflected() const;
    int max_degree() const;

    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
    friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);
    /// Entrywise product with a scalar polynomial.
    PolyMatrix scaled(const Polynomial& p) const;
};

/// Determinant of a square PolyMatrix by cofactor expansion over exact
/// coefficient arithmetic.
Polynomial poly_det(const PolyMatrix& M);

/// chi(s) = det(sI - A) (monic) and adj(s) with (sI - A) adj(s) = chi(s) I,
/// by the Faddeev-LeVerrier recursion.
std::pair<Polynomial, PolyMatrix> char_poly_and_adjugate(const Matrix& A);

/// Numerator matrix P(s) = C adj(s) B + chi(s) D, so G(s) = P(s) / chi(s).
struct NumeratorMatrix {
    PolyMatrix P;    // p x m, entry degrees <= n
    Polynomial chi;  // monic, degree n
};
NumeratorMatrix numerator_matrix(const StateSpaceSystem& sys);

/// det(s*U1 - U2) of the square system's pencil, by determinant evaluation at
/// n+2 integer nodes and a Vandermonde fit (degree bound n).
Polynomial pencil_det_poly(const StateSpaceSystem& sys);

/// Full column rank of P(s) over the rational functions, decided by the
/// maximum numerical rank over n*m + 1 integer sample points.
bool is_left_invertible(const StateSpaceSystem& sys, double tol = kDefaultTol);

/// Numerator of det(G(-s)^T G(s)) before pole-zero cancellation:
/// det(P(-s)^T P(s)) / (chi(s) chi(-s))^(m-1). Even polynomial of degree
/// <= 2n; requires a left-invertible transfer matrix.
Polynomial even_numdet(const StateSpaceSystem& sys, double tol = kDefaultTol);

enum class DimsRoute { Square, Even, Both };

struct TransferDims {
    Index n_s = 0;  // dim of the weakly unobservable subspace
    Index n_f = 0;  // dim of the strongly reachable subspace, n - n_s
    DimsRoute route = DimsRoute::Square;
};

/// n_s and n_f from the transfer matrix: deg det(s*U1 - U2) on the square
/// route, deg(even_numdet)/2 on the left-invertible route. When both routes
/// apply they must agree; throws Inapplicable when neither does.
TransferDims dims_from_transfer(const StateSpaceSystem& sys, double tol = kDefaultTol);

/// Evaluates both sides of the equivalence "G U strictly proper iff
/// U(-s)^T G(-s)^T G(s) U(s) strictly proper" as degree tests and returns the
/// (asserted-equal) verdict.
bool strictly_proper_product_check(const StateSpaceSystem& sys,
                                   const std::vector<Vector>& coeffs);

}  // namespace geosub
