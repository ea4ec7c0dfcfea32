#pragma once

#include <Eigen/Dense>

#include <stdexcept>

namespace geosub {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Default relative tolerance for every rank/kernel decision in the library.
inline constexpr double kDefaultTol = 1e-9;

// Base class of all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidMatrix : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct ShapeMismatch : Error { using Error::Error; };
struct NonFiniteEntry : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct InvalidOrder : Error { using Error::Error; };
struct SingularPencil : Error { using Error::Error; };
struct BoundaryAmbiguity : Error { using Error::Error; };
struct NotSquare : Error { using Error::Error; };
struct NotLeftInvertible : Error { using Error::Error; };
struct InfiniteImpulsiveSpace : Error { using Error::Error; };
struct NothingToShift : Error { using Error::Error; };
struct NoImpulsivePart : Error { using Error::Error; };
struct NotAdmissible : Error { using Error::Error; };
struct NumericalInconsistency : Error { using Error::Error; };
struct Inapplicable : Error { using Error::Error; };

/// Orthonormal column basis of a subspace of R^ambient.
/// The zero subspace is a matrix with zero columns.
struct SubspaceBasis {
    Matrix basis;              // ambient_dim x dim, orthonormal columns
    double tol = kDefaultTol;  // tolerance the basis was computed with

    Index ambient_dim() const { return basis.rows(); }
    Index dim() const { return basis.cols(); }

    static SubspaceBasis zero(Index ambient, double tol = kDefaultTol) {
        return SubspaceBasis{Matrix::Zero(ambient, 0), tol};
    }
    static SubspaceBasis full(Index ambient, double tol = kDefaultTol) {
        return SubspaceBasis{Matrix::Identity(ambient, ambient), tol};
    }
};

/// Deflating eigenspace of a regular pencil s*U1 - U2:
///     U2 * [V1; V2] = U1 * [V1; V2] * J,
/// with [V1; V2] of full column rank r and J real quasi-upper-triangular
/// whose spectrum is the selected finite generalized eigenvalues.
struct PencilEigenspace {
    Matrix V1;  // top block (state rows)
    Matrix V2;  // bottom block (input rows)
    Matrix J;   // r x r

    Index r() const { return J.rows(); }

    Matrix stacked() const {
        Matrix W(V1.rows() + V2.rows(), J.rows());
        W << V1, V2;
        return W;
    }
};

}  // namespace geosub
