#pragma once

// Maps attaining equality in the modulus Schwarz-Pick bound at a point p, and a
// diagnostic that checks a map against the canonical equality form along a
// complex line through p.
//
// Witnesses are lifted from the disk through w -> <w, u> with a unit vector u
// collinear with p, so they are tight exactly along that direction:
//   zero case     f(w) = beta * phi_{z0}(<w,u>)
//   nonzero case  f(w) = M(<w,u>) * a/|a|,
//                 M(zeta) = (|a| + e^{i theta} phi_{z0}(zeta)) / (1 + |a| e^{i theta} phi_{z0}(zeta))
// with z0 = <p, u>.

#include <optional>

#include "modgrad/complex.hpp"
#include "modgrad/holomap.hpp"
#include "modgrad/json_io.hpp"

namespace modgrad {

enum class ExtremalCase { zero, nonzero };

struct ExtremalSpec {
  ExtremalCase kind = ExtremalCase::zero;
  CVector p;
  CVector u;
  CVector beta;  // zero case, |beta| = 1
  CVector a;     // nonzero case, 0 < |a| < 1
  double theta = 0.0;
};

inline constexpr double kUnitTol = 1e-12;

// Validates the spec invariants; throws InputError naming the violated one.
void validate(const ExtremalSpec& spec);

HoloMap extremal_zero_case(const ExtremalSpec& spec);
HoloMap extremal_nonzero_case(const ExtremalSpec& spec);
HoloMap extremal_map(const ExtremalSpec& spec);

// beta * phi_{<p,u>}(<w,u>) without the collinearity requirement. Off the
// collinear set the equality gap at p is strictly positive.
HoloMap lifted_mobius(const CVector& p, const CVector& u, const CVector& beta);

struct Diagnosis {
  bool matches = false;
  std::optional<double> fitted_theta;
  std::optional<CVector> fitted_a;
  std::optional<CVector> fitted_beta;
  // Largest |g - <g, a/|a|> a/|a|| over the samples (nonzero case only);
  // reported, never judged.
  std::optional<double> orthogonal_norm;
  double max_residual = 0.0;
  int points_tested = 0;
};

// Restricts f to g(z) = f(p + z (q - p)) on the slice disk D_{c,r} and checks
// the canonical equality form at `samples` points on |z - c| = 0.9 r.
// Throws PreconditionError if equality_gap(f, p) > tol or q - p is not
// collinear with p.
Diagnosis diagnose_equality_form(const HoloMap& f, const CVector& p, const CVector& q,
                                 int samples, double tol);

Json to_json(const Diagnosis& d);

}  // namespace modgrad
