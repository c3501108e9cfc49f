// SPDX-License-Identifier: Apache-2.0
#include "uavcic/convex.hpp"

#include "uavcic/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

namespace uavcic::convex {

namespace {

constexpr double kLn2 = std::numbers::ln2;

}  // namespace

SurrogateValue eval_surrogate(double a, double b, double rate, double eta, const Anchor& anchor) {
  if (!(anchor.c > 0.0)) throw NonPositiveAnchor("surrogate anchor c must be positive");
  const double c = anchor.c;
  const double p = std::exp2(rate);
  const double s = eta * c / 2.0 + (p - 1.0) / (2.0 * c);
  SurrogateValue out;
  out.value = 2.0 * anchor.a * a + 2.0 * anchor.b * b - anchor.a * anchor.a - anchor.b * anchor.b - s * s;
  out.grad = {2.0 * anchor.a, 2.0 * anchor.b, -2.0 * s * kLn2 * p / (2.0 * c), -2.0 * s * c / 2.0};
  return out;
}

Layout::Layout(const SubproblemSpec& spec) {
  std::size_t at = 0;
  for (const auto& basis : spec.bases) {
    x_offset.push_back(at);
    x_size.push_back(2 * static_cast<std::size_t>(basis.cols()));
    at += x_size.back();
  }
  rate_offset = at;
  at += spec.stream_count();
  eta_offset = at;
  at += spec.links.size();
  size = at;
}

std::size_t constraint_count(const SubproblemSpec& spec) {
  return 2 * spec.links.size() + spec.caps.size() + 1 + spec.stream_count();
}

namespace {

// Real-linear maps x_j -> (Re, Im) of (B_j^H g)^H x_j.
struct Projection {
  RVector pa;
  RVector pb;
};

Projection project(const CMatrix& basis, const CVector& g) {
  const CVector u = basis.adjoint() * g;
  const auto d = u.size();
  Projection p{RVector(2 * d), RVector(2 * d)};
  p.pa << u.real(), u.imag();
  p.pb << -u.imag(), u.real();
  return p;
}

class Model {
 public:
  explicit Model(const SubproblemSpec& spec) : spec_(spec), layout_(spec) {
    const std::size_t J = spec.stream_count();
    for (const auto& link : spec.links) {
      std::vector<Projection> row;
      for (std::size_t i = 0; i < J; ++i) row.push_back(project(spec.bases[i], link.channel));
      link_proj_.push_back(std::move(row));
    }
    for (const auto& cap : spec.caps) {
      std::vector<Projection> row;
      for (std::size_t j : cap.streams) row.push_back(project(spec.bases[j], cap.channel));
      cap_proj_.push_back(std::move(row));
    }
    for (const auto& link : spec.links)
      if (!(link.anchor.c > 0.0)) throw NonPositiveAnchor("surrogate anchor c must be positive");
  }

  const Layout& layout() const { return layout_; }
  std::size_t m() const { return constraint_count(spec_); }

  auto x(const RVector& z, std::size_t j) const {
    return z.segment(static_cast<Eigen::Index>(layout_.x_offset[j]), static_cast<Eigen::Index>(layout_.x_size[j]));
  }

  std::array<double, 2> amplitude(const RVector& z, std::size_t l, std::size_t i) const {
    const auto& p = link_proj_[l][i];
    const auto xi = x(z, i);
    return {p.pa.dot(xi), p.pb.dot(xi)};
  }

  double objective(const RVector& z) const {
    return z.segment(static_cast<Eigen::Index>(layout_.rate_offset), static_cast<Eigen::Index>(spec_.stream_count()))
        .sum();
  }

  // phi in <= 0 form; see constraint_values for ordering.
  RVector values(const RVector& z) const {
    const std::size_t L = spec_.links.size();
    const std::size_t J = spec_.stream_count();
    RVector phi(static_cast<Eigen::Index>(m()));
    std::size_t k = 0;
    for (std::size_t l = 0; l < L; ++l) {
      const auto& link = spec_.links[l];
      const auto [a, b] = amplitude(z, l, link.stream);
      const double rate = z(static_cast<Eigen::Index>(layout_.rate(link.stream)));
      const double eta = z(static_cast<Eigen::Index>(layout_.eta(l)));
      phi(static_cast<Eigen::Index>(k++)) = -eval_surrogate(a, b, rate, eta, link.anchor).value;
    }
    for (std::size_t l = 0; l < L; ++l) {
      double interference = 0.0;
      for (std::size_t i = 0; i < J; ++i) {
        if (i == spec_.links[l].stream) continue;
        const auto [a, b] = amplitude(z, l, i);
        interference += a * a + b * b;
      }
      phi(static_cast<Eigen::Index>(k++)) = interference + 1.0 - z(static_cast<Eigen::Index>(layout_.eta(l)));
    }
    for (std::size_t c = 0; c < spec_.caps.size(); ++c) {
      double leak = 0.0;
      for (std::size_t s = 0; s < spec_.caps[c].streams.size(); ++s) {
        const auto& p = cap_proj_[c][s];
        const auto xi = x(z, spec_.caps[c].streams[s]);
        const double a = p.pa.dot(xi);
        const double b = p.pb.dot(xi);
        leak += a * a + b * b;
      }
      phi(static_cast<Eigen::Index>(k++)) = leak - 1.0;
    }
    double power = 0.0;
    for (std::size_t j = 0; j < J; ++j) power += x(z, j).squaredNorm();
    phi(static_cast<Eigen::Index>(k++)) = power - 1.0;
    for (std::size_t j = 0; j < J; ++j) phi(static_cast<Eigen::Index>(k++)) = -z(static_cast<Eigen::Index>(layout_.rate(j)));
    return phi;
  }

  RMatrix jacobian(const RVector& z) const {
    const std::size_t L = spec_.links.size();
    const std::size_t J = spec_.stream_count();
    RMatrix jac = RMatrix::Zero(static_cast<Eigen::Index>(layout_.size), static_cast<Eigen::Index>(m()));
    Eigen::Index k = 0;
    for (std::size_t l = 0; l < L; ++l, ++k) {
      const auto& link = spec_.links[l];
      const std::size_t j = link.stream;
      const auto [a, b] = amplitude(z, l, j);
      const auto r = static_cast<Eigen::Index>(layout_.rate(j));
      const auto e = static_cast<Eigen::Index>(layout_.eta(l));
      const auto sv = eval_surrogate(a, b, z(r), z(e), link.anchor);
      const auto& p = link_proj_[l][j];
      jac.col(k).segment(static_cast<Eigen::Index>(layout_.x_offset[j]), p.pa.size()) =
          -(sv.grad[0] * p.pa + sv.grad[1] * p.pb);
      jac(r, k) = -sv.grad[2];
      jac(e, k) = -sv.grad[3];
    }
    for (std::size_t l = 0; l < L; ++l, ++k) {
      for (std::size_t i = 0; i < J; ++i) {
        if (i == spec_.links[l].stream) continue;
        const auto [a, b] = amplitude(z, l, i);
        const auto& p = link_proj_[l][i];
        jac.col(k).segment(static_cast<Eigen::Index>(layout_.x_offset[i]), p.pa.size()) = 2.0 * (a * p.pa + b * p.pb);
      }
      jac(static_cast<Eigen::Index>(layout_.eta(l)), k) = -1.0;
    }
    for (std::size_t c = 0; c < spec_.caps.size(); ++c, ++k) {
      for (std::size_t s = 0; s < spec_.caps[c].streams.size(); ++s) {
        const std::size_t j = spec_.caps[c].streams[s];
        const auto& p = cap_proj_[c][s];
        const auto xj = x(z, j);
        const double a = p.pa.dot(xj);
        const double b = p.pb.dot(xj);
        jac.col(k).segment(static_cast<Eigen::Index>(layout_.x_offset[j]), p.pa.size()) += 2.0 * (a * p.pa + b * p.pb);
      }
    }
    for (std::size_t j = 0; j < J; ++j)
      jac.col(k).segment(static_cast<Eigen::Index>(layout_.x_offset[j]), static_cast<Eigen::Index>(layout_.x_size[j])) =
          2.0 * x(z, j);
    ++k;
    for (std::size_t j = 0; j < J; ++j, ++k) jac(static_cast<Eigen::Index>(layout_.rate(j)), k) = -1.0;
    return jac;
  }

  // hess += weight * Hessian of constraint `index`.
  void add_hessian(const RVector& z, std::size_t index, double weight, RMatrix& hess) const {
    const std::size_t L = spec_.links.size();
    const std::size_t J = spec_.stream_count();
    auto add_quadratic = [&](const Projection& p, std::size_t stream) {
      const auto off = static_cast<Eigen::Index>(layout_.x_offset[stream]);
      const auto n = p.pa.size();
      hess.block(off, off, n, n).noalias() += (2.0 * weight) * (p.pa * p.pa.transpose() + p.pb * p.pb.transpose());
    };
    if (index < L) {
      const auto& link = spec_.links[index];
      const auto r = static_cast<Eigen::Index>(layout_.rate(link.stream));
      const auto e = static_cast<Eigen::Index>(layout_.eta(index));
      const double c = link.anchor.c;
      const double p = std::exp2(z(r));
      const double s = z(e) * c / 2.0 + (p - 1.0) / (2.0 * c);
      const double ds_dr = kLn2 * p / (2.0 * c);
      const double ds_de = c / 2.0;
      hess(r, r) += weight * (2.0 * ds_dr * ds_dr + 2.0 * s * kLn2 * ds_dr);
      hess(e, e) += weight * 2.0 * ds_de * ds_de;
      hess(r, e) += weight * 2.0 * ds_dr * ds_de;
      hess(e, r) += weight * 2.0 * ds_dr * ds_de;
      return;
    }
    index -= L;
    if (index < L) {
      for (std::size_t i = 0; i < J; ++i)
        if (i != spec_.links[index].stream) add_quadratic(link_proj_[index][i], i);
      return;
    }
    index -= L;
    if (index < spec_.caps.size()) {
      for (std::size_t s = 0; s < spec_.caps[index].streams.size(); ++s)
        add_quadratic(cap_proj_[index][s], spec_.caps[index].streams[s]);
      return;
    }
    index -= spec_.caps.size();
    if (index == 0) {
      for (std::size_t j = 0; j < J; ++j) {
        const auto off = static_cast<Eigen::Index>(layout_.x_offset[j]);
        const auto n = static_cast<Eigen::Index>(layout_.x_size[j]);
        hess.block(off, off, n, n).diagonal().array() += 2.0 * weight;
      }
    }
    // Rate bounds are linear.
  }

 private:
  const SubproblemSpec& spec_;
  Layout layout_;
  std::vector<std::vector<Projection>> link_proj_;
  std::vector<std::vector<Projection>> cap_proj_;
};

double max_positive(const RVector& phi) { return std::max(0.0, phi.size() ? phi.maxCoeff() : 0.0); }

}  // namespace

std::vector<CVector> beamformers(const SubproblemSpec& spec, const RVector& z) {
  const Layout layout(spec);
  std::vector<CVector> v;
  for (std::size_t j = 0; j < spec.stream_count(); ++j) {
    const auto d = spec.bases[j].cols();
    const auto seg = z.segment(static_cast<Eigen::Index>(layout.x_offset[j]), 2 * d);
    CVector coeff(d);
    for (Eigen::Index k = 0; k < d; ++k) coeff(k) = Complex(seg(k), seg(d + k));
    v.push_back(spec.bases[j] * coeff);
  }
  return v;
}

RVector pack(const SubproblemSpec& spec, const std::vector<CVector>& v, const std::vector<double>& rates,
             const std::vector<double>& etas) {
  const Layout layout(spec);
  RVector z = RVector::Zero(static_cast<Eigen::Index>(layout.size));
  for (std::size_t j = 0; j < spec.stream_count(); ++j) {
    const CVector coeff = spec.bases[j].adjoint() * v[j];
    const auto d = coeff.size();
    auto seg = z.segment(static_cast<Eigen::Index>(layout.x_offset[j]), 2 * d);
    seg.head(d) = coeff.real();
    seg.tail(d) = coeff.imag();
    z(static_cast<Eigen::Index>(layout.rate(j))) = rates[j];
  }
  for (std::size_t l = 0; l < spec.links.size(); ++l) z(static_cast<Eigen::Index>(layout.eta(l))) = etas[l];
  return z;
}

std::array<double, 2> link_amplitude(const SubproblemSpec& spec, const RVector& z, std::size_t link,
                                     std::size_t stream) {
  return Model(spec).amplitude(z, link, stream);
}

RVector constraint_values(const SubproblemSpec& spec, const RVector& z) { return Model(spec).values(z); }

RMatrix constraint_jacobian(const SubproblemSpec& spec, const RVector& z) { return Model(spec).jacobian(z); }

RMatrix constraint_hessian(const SubproblemSpec& spec, const RVector& z, std::size_t index) {
  const Model model(spec);
  const auto n = static_cast<Eigen::Index>(model.layout().size);
  RMatrix h = RMatrix::Zero(n, n);
  model.add_hessian(z, index, 1.0, h);
  return h;
}

double objective(const SubproblemSpec& spec, const RVector& z) { return Model(spec).objective(z); }

const char* to_string(Status s) {
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::max_iter: return "max_iter";
    case Status::infeasible_start: return "infeasible_start";
  }
  return "unknown";
}

double kkt_residual(const SubproblemSpec& spec, const RVector& z, const RVector& duals) {
  const Model model(spec);
  const RMatrix jac = model.jacobian(z);
  RVector grad = jac * duals;
  for (std::size_t j = 0; j < spec.stream_count(); ++j) grad(static_cast<Eigen::Index>(model.layout().rate(j))) -= 1.0;
  // Relative to the largest term entering the Lagrangian gradient.
  double scale = 1.0;
  for (Eigen::Index i = 0; i < duals.size(); ++i)
    scale = std::max(scale, std::abs(duals(i)) * jac.col(i).lpNorm<Eigen::Infinity>());
  const RVector phi = model.values(z);
  return grad.lpNorm<Eigen::Infinity>() / scale + (duals.array() * phi.array()).abs().maxCoeff();
}

double stationarity_residual(const SubproblemSpec& spec, const RVector& z, double active_tol) {
  const Model model(spec);
  const RMatrix jac = model.jacobian(z);
  const RVector phi = model.values(z);
  RVector c = RVector::Zero(jac.rows());
  for (std::size_t j = 0; j < spec.stream_count(); ++j) c(static_cast<Eigen::Index>(model.layout().rate(j))) = -1.0;

  std::vector<Eigen::Index> active;
  for (Eigen::Index i = 0; i < phi.size(); ++i)
    if (phi(i) >= -active_tol * (1.0 + jac.col(i).norm())) active.push_back(i);

  // Nonnegative least squares for the multipliers: solve on the active set and
  // drop the most negative multiplier until none is left.
  RVector lambda;
  while (!active.empty()) {
    RMatrix a(jac.rows(), static_cast<Eigen::Index>(active.size()));
    for (std::size_t k = 0; k < active.size(); ++k) a.col(static_cast<Eigen::Index>(k)) = jac.col(active[k]);
    lambda = a.colPivHouseholderQr().solve(-c);
    Eigen::Index worst = 0;
    if (lambda.minCoeff(&worst) >= 0.0) break;
    active.erase(active.begin() + worst);
  }
  RVector grad = c;
  double scale = 1.0;
  for (std::size_t k = 0; k < active.size(); ++k) {
    const auto col = jac.col(active[k]);
    grad += lambda(static_cast<Eigen::Index>(k)) * col;
    scale = std::max(scale, lambda(static_cast<Eigen::Index>(k)) * col.lpNorm<Eigen::Infinity>());
  }
  return grad.lpNorm<Eigen::Infinity>() / scale;
}

SolveReport solve(const SubproblemSpec& spec, const RVector& start, const SolveOptions& opts) {
  const Model model(spec);
  const auto n = static_cast<Eigen::Index>(model.layout().size);
  const auto m = static_cast<double>(model.m());

  SolveReport rep;
  rep.z = start;
  rep.objective = model.objective(start);
  RVector phi = model.values(start);
  rep.duals = RVector::Zero(phi.size());
  if (start.size() != n || !(phi.array() < 0.0).all() || !start.allFinite()) {
    rep.status = Status::infeasible_start;
    rep.max_violation = max_positive(phi);
    return rep;
  }

  RVector c = RVector::Zero(n);  // minimize c^T z = -sum R
  c.segment(static_cast<Eigen::Index>(model.layout().rate_offset), static_cast<Eigen::Index>(spec.stream_count()))
      .setConstant(-1.0);

  RVector z = start;
  double t = opts.initial_t;
  int newton_total = 0;
  bool budget_hit = false;
  RMatrix hess(n, n);
  RVector grad(n);

  for (;;) {
    // Centering by damped Newton on t c^T z - sum log(-phi).
    for (int it = 0; it < opts.max_newton_per_center; ++it) {
      if (newton_total >= opts.max_newton_total) {
        budget_hit = true;
        break;
      }
      const RMatrix jac = model.jacobian(z);
      const RVector inv = (-phi.array()).inverse().matrix();
      grad = t * c + jac * inv;
      hess.noalias() = jac * inv.array().square().matrix().asDiagonal() * jac.transpose();
      for (Eigen::Index i = 0; i < phi.size(); ++i) model.add_hessian(z, static_cast<std::size_t>(i), inv(i), hess);

      Eigen::LDLT<RMatrix> ldlt(hess);
      RVector step = ldlt.solve(-grad);
      if (ldlt.info() != Eigen::Success || !step.allFinite()) break;
      const double slope = grad.dot(step);
      if (!(slope < 0.0)) break;
      ++newton_total;
      if (-slope / 2.0 <= opts.newton_tol) break;

      // Stay strictly inside, then Armijo on the barrier. The barrier change is
      // summed term by term so large t does not swamp it.
      double s = 1.0;
      RVector trial = z + s * step;
      RVector trial_phi = model.values(trial);
      bool accepted = false;
      while (s > 1e-14) {
        if ((trial_phi.array() < 0.0).all()) {
          const double delta = t * c.dot(trial - z) - (trial_phi.array() / phi.array()).log().sum();
          if (delta <= opts.armijo * s * slope) {
            accepted = true;
            break;
          }
        }
        s *= opts.backtrack;
        trial = z + s * step;
        trial_phi = model.values(trial);
      }
      if (!accepted) break;
      z = std::move(trial);
      phi = std::move(trial_phi);
    }
    ++rep.barrier_iterations;
    if (opts.trace)
      *opts.trace << rep.barrier_iterations << ',' << model.objective(z) << ',' << max_positive(phi) << '\n';
    if (budget_hit || m / t < opts.gap_tol) break;
    t *= opts.t_growth;
  }

  rep.newton_iterations = newton_total;
  rep.status = budget_hit ? Status::max_iter : Status::optimal;
  rep.duals = (1.0 / (-t * phi.array())).matrix();
  rep.max_violation = max_positive(phi);
  if (model.objective(z) >= rep.objective) {
    rep.z = z;
    rep.objective = model.objective(z);
    rep.kkt_residual = kkt_residual(spec, z, rep.duals);
  } else {
    // Barrier iterate ended below the start; keep the start.
    rep.kkt_residual = std::numeric_limits<double>::infinity();
  }
  return rep;
}

}  // namespace uavcic::convex
