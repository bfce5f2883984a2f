#include "modgrad/extremal.hpp"

#include <cmath>
#include <numbers>

#include "modgrad/errors.hpp"
#include "modgrad/geometry.hpp"
#include "modgrad/schwarzpick.hpp"

namespace modgrad {

namespace {

Complex phi(Complex z0, Complex z) { return (z0 - z) / (1.0 - std::conj(z0) * z); }

void require_unit(const CVector& v, const char* what) {
  if (v.empty()) throw InputError(std::string(what) + " must be non-empty");
  require_finite(v, what);
  if (std::abs(norm(v) - 1.0) > kUnitTol) throw InputError(std::string(what) + " must be a unit vector");
}

}  // namespace

void validate(const ExtremalSpec& spec) {
  if (spec.p.empty()) throw InputError("extremal: p must be non-empty");
  require_finite(spec.p, "extremal p");
  const double np = norm(spec.p);
  if (!(np < 1.0)) throw InputError("extremal: p must lie in the open unit ball");
  require_unit(spec.u, "extremal u");
  if (spec.u.size() != spec.p.size()) throw InputError("extremal: u and p must have equal dimension");
  if (np > 0.0) {
    const double align = std::abs(herm_inner(spec.u, spec.p)) / np;
    if (std::abs(align - 1.0) > kUnitTol) {
      throw InputError("extremal: u must be collinear with p");
    }
  }
  if (spec.kind == ExtremalCase::zero) {
    require_unit(spec.beta, "extremal beta");
  } else {
    if (spec.a.empty()) throw InputError("extremal: a must be non-empty");
    require_finite(spec.a, "extremal a");
    const double na = norm(spec.a);
    if (na == 0.0) throw InputError("extremal: a = 0 belongs to the zero case");
    if (!(na < 1.0)) throw InputError("extremal: |a| must be < 1");
    if (!std::isfinite(spec.theta)) throw InputError("extremal: theta must be finite");
  }
}

HoloMap lifted_mobius(const CVector& p, const CVector& u, const CVector& beta) {
  const Complex z0 = herm_inner(p, u);
  return HoloMap::pipeline({HoloMap::linear_functional(u), HoloMap::mobius_scalar(z0),
                            HoloMap::scalar_times_vector(beta)});
}

HoloMap extremal_zero_case(const ExtremalSpec& spec) {
  if (spec.kind != ExtremalCase::zero) throw InputError("extremal_zero_case: spec is not the zero case");
  validate(spec);
  return lifted_mobius(spec.p, spec.u, spec.beta);
}

HoloMap extremal_nonzero_case(const ExtremalSpec& spec) {
  if (spec.kind != ExtremalCase::nonzero) {
    throw InputError("extremal_nonzero_case: spec is not the nonzero case");
  }
  validate(spec);
  const double na = norm(spec.a);
  CVector dir = spec.a;
  for (auto& x : dir) x /= na;
  const Complex z0 = herm_inner(spec.p, spec.u);
  return HoloMap::pipeline({HoloMap::linear_functional(spec.u), HoloMap::mobius_scalar(z0),
                            HoloMap::mobius_quotient(na, spec.theta),
                            HoloMap::scalar_times_vector(std::move(dir))});
}

HoloMap extremal_map(const ExtremalSpec& spec) {
  return spec.kind == ExtremalCase::zero ? extremal_zero_case(spec) : extremal_nonzero_case(spec);
}

Diagnosis diagnose_equality_form(const HoloMap& f, const CVector& p, const CVector& q,
                                 int samples, double tol) {
  if (samples < 1) throw InputError("diagnose: samples must be >= 1");
  if (!(tol >= 0.0)) throw InputError("diagnose: tol must be >= 0");
  const double gap = equality_gap(f, p);
  if (gap > tol) {
    throw PreconditionError("diagnose: equality does not hold at p (gap " + std::to_string(gap) + ")");
  }
  const DiskSlice slice = disk_slice(p, q);
  if (!collinear(p, q - p)) throw PreconditionError("diagnose: q - p is not collinear with p");

  const Complex w0 = -slice.c / slice.r;
  const HoloMap g = compose(f, slice.line());
  // Canonical disk coordinate Phi(z) = phi_{w0}((z - c) / r); Phi(0) = 0.
  auto canonical = [&](Complex z) { return phi(w0, (z - slice.c) / slice.r); };

  std::vector<Complex> zs(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / samples;
    zs[std::size_t(k)] = slice.c + std::polar(0.9 * slice.r, angle);
  }

  Diagnosis out;
  out.points_tested = samples;
  const CVector fp = f.eval(p);
  const double nfp = norm(fp);

  if (nfp <= kZeroThreshold) {
    // g(z) = beta * Phi(z) with |beta| = 1; beta is read off the sample where
    // |Phi| is largest.
    std::size_t best = 0;
    double best_abs = -1.0;
    for (std::size_t k = 0; k < zs.size(); ++k) {
      const double a = std::abs(canonical(zs[k]));
      if (a > best_abs) {
        best_abs = a;
        best = k;
      }
    }
    const Complex phi_best = canonical(zs[best]);
    CVector beta = g.eval(CVector{zs[best]});
    for (auto& x : beta) x /= phi_best;
    double residual = std::abs(norm(beta) - 1.0);
    for (const Complex z : zs) {
      const CVector gz = g.eval(CVector{z});
      residual = std::max(residual, norm(gz - canonical(z) * beta));
    }
    out.fitted_beta = std::move(beta);
    out.max_residual = residual;
  } else {
    // <g(z), a/|a|> = (|a| + e Phi) / (1 + |a| e Phi), e = e^{i theta}, fitted
    // from the derivative at z = 0 (the slice point over p).
    CVector dir = fp;
    for (auto& x : dir) x /= nfp;
    const Jet at_p = g.jet(CVector{0.0});
    const Complex h_prime = herm_inner(at_p.jacobian.column(0), dir);
    const Complex phi_prime = -1.0 / ((1.0 - std::norm(w0)) * slice.r);
    const Complex rot = h_prime / ((1.0 - nfp * nfp) * phi_prime);
    double residual = std::abs(std::abs(rot) - 1.0);
    double orth = 0.0;
    for (const Complex z : zs) {
      const CVector gz = g.eval(CVector{z});
      const Complex h = herm_inner(gz, dir);
      const Complex w = rot * canonical(z);
      const Complex model = (nfp + w) / (1.0 + nfp * w);
      residual = std::max(residual, std::abs(h - model));
      orth = std::max(orth, norm(gz - h * dir));
    }
    out.fitted_theta = std::arg(rot);
    out.fitted_a = fp;
    out.orthogonal_norm = orth;
    out.max_residual = residual;
  }
  out.matches = out.max_residual <= tol;
  return out;
}

Json to_json(const Diagnosis& d) {
  Json j{{"matches", d.matches},
         {"max_residual", d.max_residual},
         {"points_tested", d.points_tested},
         {"fitted_theta", d.fitted_theta ? Json(*d.fitted_theta) : Json(nullptr)},
         {"fitted_a", d.fitted_a ? cvector_to_json(*d.fitted_a) : Json(nullptr)}};
  if (d.fitted_beta) j["fitted_beta"] = cvector_to_json(*d.fitted_beta);
  if (d.orthogonal_norm) j["orthogonal_norm"] = *d.orthogonal_norm;
  return j;
}

}  // namespace modgrad
