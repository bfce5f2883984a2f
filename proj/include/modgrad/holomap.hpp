#pragma once

// A closed algebra of holomorphic maps C^n -> C^m with exact evaluation and an
// exact complex Jacobian. No numerical differentiation happens here: every
// node kind carries its own analytic derivative and pipelines use the chain
// rule.
//
// Domain membership (e.g. |z| < 1) is never enforced by this layer. Maps are
// evaluated wherever their poles allow.

#include <map>
#include <memory>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "modgrad/complex.hpp"

namespace modgrad {

using MultiIndex = std::vector<int>;

class HoloMap;

namespace node {

// f(z) = sum_alpha coef_alpha * z^alpha. Terms are kept in lexicographic
// multi-index order.
struct Poly {
  int n = 0;
  int m = 0;
  std::map<MultiIndex, CVector> terms;
  bool operator==(const Poly&) const = default;
};

// phi_{z0}(z) = (z0 - z) / (1 - conj(z0) z); involutive disk automorphism.
struct MobiusScalar {
  Complex z0;
  bool operator==(const MobiusScalar&) const = default;
};

// zeta -> (a + e^{i theta} zeta) / (1 + a e^{i theta} zeta) with a = a_abs >= 0.
struct MobiusQuotient {
  double a_abs = 0.0;
  double theta = 0.0;
  bool operator==(const MobiusQuotient&) const = default;
};

// z -> p + z (q - p), C -> C^n.
struct LineEmbed {
  CVector p;
  CVector q;
  bool operator==(const LineEmbed&) const = default;
};

// w -> <w, u>, C^n -> C.
struct LinearFunctional {
  CVector u;
  bool operator==(const LinearFunctional&) const = default;
};

// zeta -> zeta * beta, C -> C^m.
struct ScalarTimesVector {
  CVector beta;
  bool operator==(const ScalarTimesVector&) const = default;
};

// z -> r z + c, C -> C.
struct AffineScalar {
  Complex r;
  Complex c;
  bool operator==(const AffineScalar&) const = default;
};

// stages[0] is applied first.
struct Pipeline {
  std::vector<HoloMap> stages;
  bool operator==(const Pipeline&) const;
};

using Node = std::variant<Poly, MobiusScalar, MobiusQuotient, LineEmbed, LinearFunctional,
                          ScalarTimesVector, AffineScalar, Pipeline>;

}  // namespace node

// Value and Jacobian at a point.
struct Jet {
  CVector value;
  CMatrix jacobian;  // m x n, column j = df/dz_j
};

// Pole guard for the Moebius-type nodes.
inline constexpr double kPoleThreshold = 1e-15;

// Immutable, cheaply copyable handle to a map description.
class HoloMap {
 public:
  static HoloMap poly(int n, int m, std::map<MultiIndex, CVector> terms);
  static HoloMap mobius_scalar(Complex z0);
  static HoloMap mobius_quotient(double a_abs, double theta);
  static HoloMap line_embed(CVector p, CVector q);
  static HoloMap linear_functional(CVector u);
  static HoloMap scalar_times_vector(CVector beta);
  static HoloMap affine_scalar(Complex r, Complex c);
  static HoloMap pipeline(std::vector<HoloMap> stages);

  // Identity on C^n as a linear polynomial.
  static HoloMap identity(int n);

  int in_dim() const noexcept { return in_dim_; }
  int out_dim() const noexcept { return out_dim_; }
  std::string_view kind() const noexcept;
  const node::Node& node() const noexcept { return *node_; }

  CVector eval(std::span<const Complex> z) const;
  CMatrix jacobian(std::span<const Complex> z) const;
  Jet jet(std::span<const Complex> z) const;

  // Df(z) * beta
  CVector frechet_apply(std::span<const Complex> z, std::span<const Complex> beta) const;

  friend bool operator==(const HoloMap& a, const HoloMap& b);

 private:
  HoloMap(node::Node n, int in_dim, int out_dim);
  void check_point(std::span<const Complex> z) const;

  std::shared_ptr<const node::Node> node_;
  int in_dim_ = 0;
  int out_dim_ = 0;
};

// Composition g o h as a two-stage pipeline (h applied first).
HoloMap compose(const HoloMap& g, const HoloMap& h);

}  // namespace modgrad
