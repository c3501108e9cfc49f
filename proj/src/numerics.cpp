// SPDX-License-Identifier: Apache-2.0
#include "uavcic/numerics.hpp"

#include "uavcic/errors.hpp"

#include <string>

namespace uavcic {

void require_finite(const CMatrix& a, const char* what) {
  if (!a.allFinite()) throw InvalidMatrix(std::string(what) + " has non-finite entries");
}

SvdResult svd(const CMatrix& a) {
  require_finite(a);
  SvdResult out;
  if (a.size() == 0) {
    out.singular_values.resize(0);
    out.u = CMatrix::Identity(a.rows(), a.rows());
    out.v = CMatrix::Identity(a.cols(), a.cols());
    return out;
  }
  Eigen::JacobiSVD<CMatrix> solver(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  out.singular_values = solver.singularValues();
  out.u = solver.matrixU();
  out.v = solver.matrixV();
  return out;
}

namespace {

std::size_t rank_from(const RVector& s, double tol) {
  if (s.size() == 0 || s(0) <= 0.0) return 0;
  const double cutoff = tol * s(0);
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cutoff) ++r;
  return r;
}

}  // namespace

std::size_t rank(const CMatrix& a, double tol) { return rank_from(svd(a).singular_values, tol); }

CMatrix null_space(const CMatrix& a, double tol) {
  const auto dec = svd(a);
  const auto r = static_cast<Eigen::Index>(rank_from(dec.singular_values, tol));
  return dec.u.rightCols(a.rows() - r);
}

CMatrix projector(const CMatrix& basis) { return basis * basis.adjoint(); }

}  // namespace uavcic
