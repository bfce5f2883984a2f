#include "modgrad/schwarzpick.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "modgrad/errors.hpp"

namespace modgrad {

std::string_view to_string(Branch b) { return b == Branch::zero ? "zero" : "nonzero"; }

namespace {

double one_minus_sq(double x) { return (1.0 - x) * (1.0 + x); }

CVector a_vector(const CMatrix& jac, const CVector& value) {
  CVector A(jac.cols());
  for (std::size_t j = 0; j < jac.cols(); ++j) A[j] = herm_inner(jac.column(j), value);
  return A;
}

}  // namespace

GradResult mod_grad(const HoloMap& f, const CVector& z, const SpectralOptions& spectral) {
  const Jet jet = f.jet(z);
  GradResult out;
  out.f_norm = norm(jet.value);

  if (out.f_norm > kZeroThreshold) {
    out.branch = Branch::nonzero;
    out.A = a_vector(jet.jacobian, jet.value);
    out.value = norm(out.A) / out.f_norm;
    return out;
  }

  out.branch = Branch::zero;
  SpectralResult sv = spectral_norm(jet.jacobian, spectral);
  out.value = sv.sigma;
  out.top_dir = std::move(sv.direction);
  if (out.f_norm > kZeroThreshold / 10.0) {
    out.ambiguous = true;
    out.A = a_vector(jet.jacobian, jet.value);
    out.nonzero_value = norm(out.A) / out.f_norm;
  }
  return out;
}

double richardson_to_zero(std::span<const double> steps, std::span<const double> values) {
  if (steps.empty() || steps.size() != values.size()) {
    throw InputError("richardson_to_zero: need matching non-empty step and value lists");
  }
  // Neville's scheme evaluated at t = 0.
  std::vector<double> p(values.begin(), values.end());
  const std::size_t k = p.size();
  for (std::size_t level = 1; level < k; ++level) {
    for (std::size_t i = 0; i + level < k; ++i) {
      const double ti = steps[i];
      const double tj = steps[i + level];
      p[i] = (ti * p[i + 1] - tj * p[i]) / (ti - tj);
    }
  }
  return p.front();
}

FdEstimate mod_grad_fd_detail(const HoloMap& f, const CVector& z, const FdOptions& opts) {
  if (opts.steps.empty()) throw InputError("mod_grad_fd: steps must be non-empty");
  for (std::size_t i = 0; i < opts.steps.size(); ++i) {
    if (!(opts.steps[i] > 0.0)) throw InputError("mod_grad_fd: steps must be positive");
    if (i > 0 && !(opts.steps[i] < opts.steps[i - 1])) {
      throw InputError("mod_grad_fd: steps must be strictly decreasing");
    }
  }
  if (opts.dirs < 64) throw InputError("mod_grad_fd: dirs must be >= 64");
  if (int(z.size()) != f.in_dim()) {
    throw InputError("mod_grad_fd: point has dimension " + std::to_string(z.size()) +
                     ", map expects " + std::to_string(f.in_dim()));
  }

  const int n = f.in_dim();
  std::vector<CVector> dirs = sample_unit_sphere(n, opts.dirs, opts.seed);

  // Analytic maximizer candidates: conj(beta) = A/|A| off the zero set, the
  // top right-singular vector on it.
  const GradResult closed = mod_grad(f, z);
  if (!closed.A.empty()) {
    const double na = norm(closed.A);
    if (na > 0.0) {
      CVector beta = conj(closed.A);
      for (auto& x : beta) x /= na;
      dirs.push_back(std::move(beta));
    }
  }
  if (!closed.top_dir.empty()) dirs.push_back(closed.top_dir);

  const double base = norm(f.eval(z));
  std::vector<double> quotients(opts.steps.size());
  FdEstimate out;
  out.closed_form = closed.value;
  out.value = -std::numeric_limits<double>::infinity();
  for (const auto& beta : dirs) {
    for (std::size_t k = 0; k < opts.steps.size(); ++k) {
      const double t = opts.steps[k];
      CVector zt(z);
      for (std::size_t j = 0; j < zt.size(); ++j) zt[j] += t * beta[j];
      quotients[k] = (norm(f.eval(zt)) - base) / t;
    }
    const double q = richardson_to_zero(opts.steps, quotients);
    if (q > out.value) {
      out.value = q;
      out.best_dir = beta;
    }
  }
  out.anomaly = out.value > closed.value + kAnomalyTol;
  return out;
}

double mod_grad_fd(const HoloMap& f, const CVector& z, const FdOptions& opts) {
  return mod_grad_fd_detail(f, z, opts).value;
}

BoundReport sp_bound(const HoloMap& f, const CVector& z, double tol) {
  if (int(z.size()) != f.in_dim()) {
    throw InputError("sp_bound: point has dimension " + std::to_string(z.size()) +
                     ", map expects " + std::to_string(f.in_dim()));
  }
  require_finite(z, "sp_bound point");
  const double nz = norm(z);
  if (!(nz < 1.0)) throw InputError("sp_bound: point must lie in the open unit ball");

  const GradResult g = mod_grad(f, z);
  if (!(g.f_norm < 1.0)) {
    throw CertificationError("sp_bound: |f(z)| >= 1, map does not send the ball into the ball");
  }
  BoundReport rep;
  rep.point = z;
  rep.lhs = g.value;
  rep.rhs = one_minus_sq(g.f_norm) / one_minus_sq(nz);
  rep.slack = rep.rhs - rep.lhs;
  rep.tol = tol;
  rep.holds = rep.slack >= -tol;
  rep.branch = g.branch;
  return rep;
}

BoundReport sp_bound_slice(const HoloMap& g, Complex xi, Complex c, double r, double tol) {
  if (g.in_dim() != 1) throw InputError("sp_bound_slice: map must be defined on a disk in C");
  if (!(r > 0.0) || !std::isfinite(r)) throw InputError("sp_bound_slice: r must be positive");
  const double dist = std::abs(xi - c);
  if (!(dist < r)) throw InputError("sp_bound_slice: xi lies outside D_{c,r}");

  const CVector point{xi};
  const GradResult grad = mod_grad(g, point);
  if (!(grad.f_norm < 1.0)) {
    throw CertificationError("sp_bound_slice: |g(xi)| >= 1, map does not send the disk into the ball");
  }
  BoundReport rep;
  rep.point = point;
  rep.lhs = grad.value;
  rep.rhs = r * one_minus_sq(grad.f_norm) / ((r - dist) * (r + dist));
  rep.slack = rep.rhs - rep.lhs;
  rep.tol = tol;
  rep.holds = rep.slack >= -tol;
  rep.branch = grad.branch;
  return rep;
}

double equality_gap(const HoloMap& f, const CVector& p) { return sp_bound(f, p, 0.0).slack; }

Json to_json(const GradResult& g) {
  Json j{{"value", g.value}, {"branch", std::string(to_string(g.branch))}, {"f_norm", g.f_norm},
         {"ambiguous", g.ambiguous}};
  if (!g.A.empty()) j["A"] = cvector_to_json(g.A);
  if (!g.top_dir.empty()) j["top_dir"] = cvector_to_json(g.top_dir);
  if (g.nonzero_value) j["nonzero_value"] = *g.nonzero_value;
  return j;
}

Json to_json(const BoundReport& b) {
  return Json{{"point", cvector_to_json(b.point)}, {"lhs", b.lhs},   {"rhs", b.rhs},
              {"slack", b.slack},                  {"holds", b.holds},
              {"branch", std::string(to_string(b.branch))}};
}

}  // namespace modgrad
