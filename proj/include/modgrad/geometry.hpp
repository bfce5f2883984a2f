#pragma once

// Ball membership and complex-line slices of the unit ball.
//
// For p, q in B_n with q != p the affine line L(z) = p + z (q - p) meets the
// ball in the image of the disk |z - c| < r, with
//   c = -<p, q-p> / |q-p|^2,   r = sqrt((1 - |p|^2) / |q-p|^2 + |c|^2),
// and maps the boundary circle onto the sphere.

#include "modgrad/complex.hpp"
#include "modgrad/holomap.hpp"

namespace modgrad {

struct DiskSlice {
  Complex c;
  double r = 0.0;
  CVector p;
  CVector q;

  // r^2 - |c|^2, evaluated as (1 - |p|^2) / |q - p|^2 to avoid cancellation.
  double radial_gap() const;
  Complex boundary_point(double angle) const { return c + std::polar(r, angle); }
  HoloMap line() const { return HoloMap::line_embed(p, q); }
};

// Tolerances for the input checks of disk_slice / bound_factor.
inline constexpr double kCoincidentTol = 1e-14;
inline constexpr double kCollinearTol = 1e-12;

DiskSlice disk_slice(const CVector& p, const CVector& q);

struct BoundFactor {
  double factor = 0.0;  // r / (r^2 - |c|^2)
  double rhs = 0.0;     // |q - p| / (1 - |p|^2)
  bool collinear = false;
};

// factor <= rhs, with equality exactly when p and q - p are complex-collinear.
BoundFactor bound_factor(const CVector& p, const CVector& q);

// |<p, d>| >= (1 - kCollinearTol) |p| |d|; p == 0 is collinear with everything.
bool collinear(const CVector& p, const CVector& d);

// 1 - |<p,d>| / (|p| |d|), zero on the collinear set. Returns 0 when p or d vanishes.
double collinearity_defect(const CVector& p, const CVector& d);

// Open-ball test |z| < 1 - eps.
bool in_ball(const CVector& z, double eps = 0.0);

}  // namespace modgrad
