#pragma once

#include "geosub/types.hpp"

namespace geosub {

// Eigenvalue region used to select generalized eigenvalues of a pencil.
// Eigenvalues at infinity are excluded from every region.
enum class EigRegion {
    AllFinite,
    OpenLeftHalfPlane,
};

/// Numerical rank: number of singular values above tol * sigma_max.
/// `scale_floor` raises the reference scale to tol * max(sigma_max, floor);
/// pass the parent scale when M is a slice or product of a larger object,
/// so that an all-noise block does not count as full rank relative to
/// itself.
Index rank(const Matrix& M, double tol = kDefaultTol, double scale_floor = 0.0);

/// Orthonormal basis of the right nullspace of M (ambient = cols of M).
SubspaceBasis nullspace_basis(const Matrix& M, double tol = kDefaultTol,
                              double scale_floor = 0.0);

/// Orthonormal basis of the column span of M (ambient = rows of M).
SubspaceBasis image_basis(const Matrix& M, double tol = kDefaultTol, double scale_floor = 0.0);

/// True iff both spans coincide: equal dimensions and mutual projection
/// residuals below tol for every basis column.
bool subspace_equal(const SubspaceBasis& U, const SubspaceBasis& V, double tol = kDefaultTol);

/// True iff det(s*U1 - U2) is not identically zero, decided by a full-rank
/// test at size+1 integer sample points (a polynomial of degree <= size
/// vanishing at size+1 points is zero).
bool pencil_is_regular(const Matrix& U1, const Matrix& U2, double tol = kDefaultTol);

/// Ordered real generalized Schur decomposition of the pencil s*U1 - U2.
/// Selects the finite generalized eigenvalues in `region` (complex pairs kept
/// together as real 2x2 blocks of J) and returns a full-column-rank deflating
/// basis split after `v1_rows` rows.
///
/// Throws SingularPencil when det(s*U1 - U2) == 0, BoundaryAmbiguity when an
/// eigenvalue is too close to the region boundary to classify within tol.
PencilEigenspace ordered_pencil_eigenspace(const Matrix& U1, const Matrix& U2,
                                           EigRegion region, double tol, Index v1_rows);

}  // namespace geosub
