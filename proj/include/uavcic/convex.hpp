// SPDX-License-Identifier: Apache-2.0
//
// Log-barrier interior-point solver for the convexified sum-rate subproblem
// solved at every successive-convex-approximation step.
//
// All quantities are normalized: beamformer w_j = sqrt(P) * B_j * x_j, where
// B_j is an orthonormal M x d_j basis (identity unless the stream is confined
// to a null space) and x_j is stored as [Re; Im] in R^{2 d_j}. Decoder channels
// are scaled by sqrt(P)/sigma so noise is 1, and interference channels by
// sqrt(P/Theta) so every limit is 1.
//
// Maximize  sum_j R_j  subject to, for every decoder link l = (n2, j):
//   f(a_l, b_l, R_j, eta_l | anchor_l) >= 0,   a_l + i b_l = g_l^H v_j
//   sum_{i != j} |g_l^H v_i|^2 + 1 <= eta_l
// and  sum_{j in S_k} |q_k^H v_j|^2 <= 1  per capped occupied GBS k,
//      sum_j ||x_j||^2 <= 1,   R_j >= 0.
#pragma once

#include "uavcic/numerics.hpp"

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

namespace uavcic::convex {

/// Linearization point of the rate surrogate for one decoder link.
struct Anchor {
  double a = 0.0;
  double b = 0.0;
  double c = 1.0;  // must be > 0
};

struct SurrogateValue {
  double value = 0.0;
  std::array<double, 4> grad{};  // d/da, d/db, d/dR, d/deta
};

/// f = 2 a~ a + 2 b~ b - a~^2 - b~^2 - (eta c~/2 + (2^R - 1)/(2 c~))^2.
/// Concave in (a, b, R, eta) and a lower bound on a^2 + b^2 - (2^R - 1) eta,
/// tight at a = a~, b = b~, c~ = sqrt((2^R - 1)/eta).
/// Throws NonPositiveAnchor when c~ <= 0.
SurrogateValue eval_surrogate(double a, double b, double rate, double eta, const Anchor& anchor);

struct DecoderLink {
  std::size_t stream = 0;
  CVector channel;  // sqrt(P) h / sigma
  Anchor anchor;
};

struct InterferenceCap {
  std::vector<std::size_t> streams;  // streams the occupied GBS cannot cancel
  CVector channel;                   // sqrt(P / Theta) h
};

struct SubproblemSpec {
  std::vector<CMatrix> bases;  // one orthonormal basis per stream
  std::vector<DecoderLink> links;
  std::vector<InterferenceCap> caps;

  std::size_t stream_count() const { return bases.size(); }
};

/// Offsets of each variable group inside the flat vector.
struct Layout {
  std::vector<std::size_t> x_offset;  // start of [Re; Im] block per stream
  std::vector<std::size_t> x_size;    // 2 d_j
  std::size_t rate_offset = 0;
  std::size_t eta_offset = 0;
  std::size_t size = 0;

  explicit Layout(const SubproblemSpec& spec);
  std::size_t rate(std::size_t j) const { return rate_offset + j; }
  std::size_t eta(std::size_t l) const { return eta_offset + l; }
};

/// Normalized beamformers v_j = B_j x_j of a flat point.
std::vector<CVector> beamformers(const SubproblemSpec& spec, const RVector& z);

/// Flat point from normalized beamformers (projected onto each basis), rates and etas.
RVector pack(const SubproblemSpec& spec, const std::vector<CVector>& v, const std::vector<double>& rates,
             const std::vector<double>& etas);

/// g^H v_j for a decoder link at a flat point, as (Re, Im).
std::array<double, 2> link_amplitude(const SubproblemSpec& spec, const RVector& z, std::size_t link,
                                     std::size_t stream);

/// Constraint values in <= 0 form, ordered: surrogate per link, noise per link,
/// cap per occupied GBS, power, then -R_j per stream.
RVector constraint_values(const SubproblemSpec& spec, const RVector& z);

/// Analytic gradient of every constraint (one column each, same order).
RMatrix constraint_jacobian(const SubproblemSpec& spec, const RVector& z);

/// Hessian of constraint `index` (same order as constraint_values).
RMatrix constraint_hessian(const SubproblemSpec& spec, const RVector& z, std::size_t index);

std::size_t constraint_count(const SubproblemSpec& spec);

double objective(const SubproblemSpec& spec, const RVector& z);

enum class Status { optimal, max_iter, infeasible_start };

const char* to_string(Status s);

struct SolveOptions {
  double initial_t = 1.0;
  double t_growth = 10.0;
  double gap_tol = 1e-8;          // stop once m / t falls below this
  double newton_tol = 1e-10;      // half squared Newton decrement
  double armijo = 0.25;
  double backtrack = 0.5;
  int max_newton_per_center = 80;
  int max_newton_total = 3000;
  std::ostream* trace = nullptr;  // CSV: iteration,objective,max_violation
};

struct SolveReport {
  RVector z;
  double objective = 0.0;
  int barrier_iterations = 0;
  int newton_iterations = 0;
  double max_violation = 0.0;
  double kkt_residual = 0.0;
  RVector duals;  // barrier multiplier estimates, constraint order
  Status status = Status::optimal;
};

/// Solve from a strictly feasible start. The returned point never has a lower
/// objective than the start.
SolveReport solve(const SubproblemSpec& spec, const RVector& start, const SolveOptions& opts = {});

/// Stationarity residual of the Lagrangian (inf-norm, divided by the largest
/// multiplier-weighted constraint gradient, at least 1) plus the largest
/// complementarity product.
double kkt_residual(const SubproblemSpec& spec, const RVector& z, const RVector& duals);

/// Stationarity residual with multipliers refitted at z by nonnegative least
/// squares over the constraints within `active_tol` of their bound, scaled as in
/// kkt_residual. With anchors tight at z this measures the KKT residual of the
/// original nonconvex problem.
double stationarity_residual(const SubproblemSpec& spec, const RVector& z, double active_tol = 1e-3);

}  // namespace uavcic::convex
