#include "modgrad/geometry.hpp"

#include <cmath>

#include "modgrad/errors.hpp"

namespace modgrad {

namespace {

double one_minus_sq(double x) { return (1.0 - x) * (1.0 + x); }

void check_pair(const CVector& p, const CVector& q, const char* op) {
  if (p.empty() || p.size() != q.size()) {
    throw InputError(std::string(op) + ": p and q must be non-empty and of equal dimension");
  }
  require_finite(p, op);
  require_finite(q, op);
  if (!(norm(p) < 1.0)) throw InputError(std::string(op) + ": |p| must be < 1");
  if (!(norm(q) < 1.0)) throw InputError(std::string(op) + ": |q| must be < 1");
  if (norm(q - p) < kCoincidentTol) throw InputError(std::string(op) + ": q coincides with p");
}

}  // namespace

double DiskSlice::radial_gap() const {
  const double d = norm(q - p);
  return one_minus_sq(norm(p)) / (d * d);
}

DiskSlice disk_slice(const CVector& p, const CVector& q) {
  check_pair(p, q, "disk_slice");
  const CVector d = q - p;
  const double d2 = norm_squared(d);
  const Complex c = -herm_inner(p, d) / d2;
  const double r = std::sqrt(one_minus_sq(norm(p)) / d2 + std::norm(c));
  return DiskSlice{c, r, p, q};
}

double collinearity_defect(const CVector& p, const CVector& d) {
  const double np = norm(p);
  const double nd = norm(d);
  if (np == 0.0 || nd == 0.0) return 0.0;
  return 1.0 - std::abs(herm_inner(p, d)) / (np * nd);
}

bool collinear(const CVector& p, const CVector& d) {
  return collinearity_defect(p, d) <= kCollinearTol;
}

BoundFactor bound_factor(const CVector& p, const CVector& q) {
  check_pair(p, q, "bound_factor");
  const CVector d = q - p;
  const double nd = norm(d);
  const double gap = one_minus_sq(norm(p));
  const double ip = std::abs(herm_inner(p, d));
  BoundFactor out;
  // r / (r^2 - |c|^2) reduces to sqrt(|d|^2 (1-|p|^2) + |<p,d>|^2) / (1-|p|^2).
  out.factor = std::sqrt(nd * nd * gap + ip * ip) / gap;
  out.rhs = nd / gap;
  out.collinear = collinear(p, d);
  return out;
}

bool in_ball(const CVector& z, double eps) {
  if (eps < 0.0) throw InputError("in_ball: eps must be >= 0");
  return norm(z) < 1.0 - eps;
}

}  // namespace modgrad
