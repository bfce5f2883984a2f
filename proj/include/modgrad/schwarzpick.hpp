#pragma once

// Modulus gradient |grad|f||(z) of a holomorphic map and the Schwarz-Pick
// type bound
//
//   |grad|f||(z) <= (1 - |f(z)|^2) / (1 - |z|^2),   f : B_n -> B_m.
//
// Closed form:
//   f(z) != 0:  |A| / |f(z)|  with A_j = <df/dz_j (z), f(z)>
//   f(z) == 0:  sup_{|beta|=1} |Df(z) beta|  (spectral norm of the Jacobian)
//
// The definition itself (sup over unit directions of the one-sided
// derivative of |f|) is realized independently by mod_grad_fd.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "modgrad/complex.hpp"
#include "modgrad/holomap.hpp"
#include "modgrad/json_io.hpp"

namespace modgrad {

// |f(z)| at or below this is treated as a zero of f.
inline constexpr double kZeroThreshold = 1e-13;

enum class Branch { nonzero, zero };
std::string_view to_string(Branch b);

struct GradResult {
  double value = 0.0;
  Branch branch = Branch::nonzero;
  CVector A;        // nonzero branch: A_j = <df/dz_j, f>
  CVector top_dir;  // zero branch: unit direction attaining the spectral norm
  double f_norm = 0.0;
  // |f(z)| in (kZeroThreshold/10, kZeroThreshold]: the zero branch was taken
  // but the nonzero formula is reported alongside.
  bool ambiguous = false;
  std::optional<double> nonzero_value;
};

GradResult mod_grad(const HoloMap& f, const CVector& z, const SpectralOptions& spectral = {});

struct FdOptions {
  std::vector<double> steps{1e-4, 5e-5};  // strictly decreasing, positive
  int dirs = 64;
  std::uint64_t seed = 0;
};

struct FdEstimate {
  double value = 0.0;
  CVector best_dir;
  double closed_form = 0.0;
  // Some sampled direction beat the closed form by more than kAnomalyTol.
  bool anomaly = false;
};

inline constexpr double kAnomalyTol = 1e-6;

// Sup over sampled unit directions (plus the analytic maximizer candidates) of
// the Richardson-extrapolated one-sided quotient (|f|(z + t beta) - |f|(z)) / t.
FdEstimate mod_grad_fd_detail(const HoloMap& f, const CVector& z, const FdOptions& opts = {});
double mod_grad_fd(const HoloMap& f, const CVector& z, const FdOptions& opts = {});

// Extrapolate samples q(t_k) to t = 0 assuming q(t) = q0 + a1 t + a2 t^2 + ...
double richardson_to_zero(std::span<const double> steps, std::span<const double> values);

struct BoundReport {
  CVector point;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool holds = false;
  double tol = 0.0;
  Branch branch = Branch::nonzero;
};

// Bound on the unit ball. Throws InputError if |z| >= 1 and CertificationError
// if |f(z)| >= 1.
BoundReport sp_bound(const HoloMap& f, const CVector& z, double tol = 1e-9);

// Bound for g : D_{c,r} -> B_m at xi:  r (1 - |g(xi)|^2) / (r^2 - |xi - c|^2).
BoundReport sp_bound_slice(const HoloMap& g, Complex xi, Complex c, double r, double tol = 1e-9);

// rhs - lhs of sp_bound at p; zero certifies the equality hypothesis.
double equality_gap(const HoloMap& f, const CVector& p);

Json to_json(const GradResult& g);
Json to_json(const BoundReport& b);

}  // namespace modgrad
