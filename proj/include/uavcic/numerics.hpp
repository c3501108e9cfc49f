// SPDX-License-Identifier: Apache-2.0
//
// Dense complex linear algebra used by the beamforming and solver code.
// Everything here is a thin contract layer over Eigen's Jacobi SVD.
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>

namespace uavcic {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

/// Relative tolerance used for rank decisions unless a caller overrides it.
inline constexpr double kDefaultRankTol = 1e-9;

struct SvdResult {
  RVector singular_values;  // descending, nonnegative
  CMatrix u;                // rows x rows, unitary
  CMatrix v;                // cols x cols, unitary
};

/// Throws InvalidMatrix if any entry is NaN or infinite.
void require_finite(const CMatrix& a, const char* what = "matrix");

/// Full SVD: a = u * diag(s) * v^H (u and v are square).
SvdResult svd(const CMatrix& a);

/// Number of singular values above tol times the largest one; 0 for a zero matrix.
std::size_t rank(const CMatrix& a, double tol = kDefaultRankTol);

/// Orthonormal basis of { w : a^H w = 0 }, i.e. the orthogonal complement of the
/// column span of a. Returned as rows(a) x d with d = rows(a) - rank(a). A matrix
/// with zero columns yields the identity.
CMatrix null_space(const CMatrix& a, double tol = kDefaultRankTol);

/// Orthogonal projector onto the column span of an orthonormal basis.
CMatrix projector(const CMatrix& orthonormal_basis);

/// Stack column vectors side by side.
template <typename Range>
CMatrix hstack(const Range& columns, Eigen::Index rows) {
  CMatrix out(rows, static_cast<Eigen::Index>(std::size(columns)));
  Eigen::Index k = 0;
  for (const auto& c : columns) out.col(k++) = c;
  return out;
}

}  // namespace uavcic
