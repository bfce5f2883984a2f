#include "modgrad/holomap.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "modgrad/errors.hpp"

namespace modgrad {

namespace node {

bool Pipeline::operator==(const Pipeline& other) const { return stages == other.stages; }

}  // namespace node

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_finite_scalar(Complex c, const char* what) {
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
    throw InputError(std::string(what) + ": non-finite value");
  }
}

Jet jet_poly(const node::Poly& f, std::span<const Complex> z, bool need_jac) {
  const auto n = std::size_t(f.n);
  const auto m = std::size_t(f.m);
  int max_exp = 0;
  for (const auto& [alpha, coef] : f.terms)
    for (int e : alpha) max_exp = std::max(max_exp, e);

  // powers[j][e] = z_j^e
  std::vector<std::vector<Complex>> powers(n, std::vector<Complex>(std::size_t(max_exp) + 1));
  for (std::size_t j = 0; j < n; ++j) {
    powers[j][0] = 1.0;
    for (int e = 1; e <= max_exp; ++e) powers[j][std::size_t(e)] = powers[j][std::size_t(e) - 1] * z[j];
  }

  Jet out{CVector(m), need_jac ? CMatrix(m, n) : CMatrix()};
  CVector partial(n);
  for (const auto& [alpha, coef] : f.terms) {
    Complex mono = 1.0;
    for (std::size_t j = 0; j < n; ++j) mono *= powers[j][std::size_t(alpha[j])];
    for (std::size_t k = 0; k < m; ++k) out.value[k] += coef[k] * mono;
    if (!need_jac) continue;

    for (std::size_t j = 0; j < n; ++j) {
      if (alpha[j] == 0) {
        partial[j] = 0.0;
        continue;
      }
      Complex d = double(alpha[j]) * powers[j][std::size_t(alpha[j]) - 1];
      for (std::size_t l = 0; l < n; ++l)
        if (l != j) d *= powers[l][std::size_t(alpha[l])];
      partial[j] = d;
    }
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t j = 0; j < n; ++j)
        if (alpha[j] != 0) out.jacobian(k, j) += coef[k] * partial[j];
  }
  return out;
}

Jet scalar_jet(Complex value, Complex derivative) {
  Jet out{CVector{value}, CMatrix(1, 1)};
  out.jacobian(0, 0) = derivative;
  return out;
}

Jet jet_node(const node::Node& nd, std::span<const Complex> z, bool need_jac) {
  return std::visit(
      Overloaded{
          [&](const node::Poly& f) { return jet_poly(f, z, need_jac); },
          [&](const node::MobiusScalar& f) {
            const Complex den = 1.0 - std::conj(f.z0) * z[0];
            if (std::abs(den) < kPoleThreshold) {
              throw DomainError("mobius_scalar: evaluation at pole");
            }
            const Complex value = (f.z0 - z[0]) / den;
            const Complex deriv = (std::norm(f.z0) - 1.0) / (den * den);
            return scalar_jet(value, deriv);
          },
          [&](const node::MobiusQuotient& f) {
            const Complex rot = std::polar(1.0, f.theta);
            const Complex den = 1.0 + f.a_abs * rot * z[0];
            if (std::abs(den) < kPoleThreshold) {
              throw DomainError("mobius_quotient: evaluation at pole");
            }
            const Complex value = (f.a_abs + rot * z[0]) / den;
            // (bc - ad) / (c + d zeta)^2 with a = |a|, b = e^{it}, c = 1, d = |a| e^{it}
            const Complex deriv = rot * (1.0 - f.a_abs * f.a_abs) / (den * den);
            return scalar_jet(value, deriv);
          },
          [&](const node::LineEmbed& f) {
            const std::size_t n = f.p.size();
            Jet out{CVector(n), CMatrix(n, 1)};
            for (std::size_t k = 0; k < n; ++k) {
              const Complex d = f.q[k] - f.p[k];
              out.value[k] = f.p[k] + z[0] * d;
              out.jacobian(k, 0) = d;
            }
            return out;
          },
          [&](const node::LinearFunctional& f) {
            const std::size_t n = f.u.size();
            Jet out{CVector{herm_inner(z, f.u)}, CMatrix(1, n)};
            for (std::size_t j = 0; j < n; ++j) out.jacobian(0, j) = std::conj(f.u[j]);
            return out;
          },
          [&](const node::ScalarTimesVector& f) {
            const std::size_t m = f.beta.size();
            Jet out{CVector(m), CMatrix(m, 1)};
            for (std::size_t k = 0; k < m; ++k) {
              out.value[k] = z[0] * f.beta[k];
              out.jacobian(k, 0) = f.beta[k];
            }
            return out;
          },
          [&](const node::AffineScalar& f) { return scalar_jet(f.r * z[0] + f.c, f.r); },
          [&](const node::Pipeline& f) {
            if (!need_jac) {
              CVector v = f.stages.front().eval(z);
              for (std::size_t s = 1; s < f.stages.size(); ++s) v = f.stages[s].eval(v);
              return Jet{std::move(v), CMatrix()};
            }
            Jet acc = f.stages.front().jet(z);
            for (std::size_t s = 1; s < f.stages.size(); ++s) {
              Jet next = f.stages[s].jet(acc.value);
              acc.jacobian = next.jacobian * acc.jacobian;
              acc.value = std::move(next.value);
            }
            return acc;
          },
      },
      nd);
}

}  // namespace

HoloMap::HoloMap(node::Node n, int in_dim, int out_dim)
    : node_(std::make_shared<const node::Node>(std::move(n))), in_dim_(in_dim), out_dim_(out_dim) {}

HoloMap HoloMap::poly(int n, int m, std::map<MultiIndex, CVector> terms) {
  if (n < 1 || m < 1) throw InputError("poly: dimensions must be positive");
  for (const auto& [alpha, coef] : terms) {
    if (int(alpha.size()) != n) {
      throw InputError("poly: multi-index length " + std::to_string(alpha.size()) +
                       " differs from n=" + std::to_string(n));
    }
    if (std::any_of(alpha.begin(), alpha.end(), [](int e) { return e < 0; })) {
      throw InputError("poly: negative exponent in multi-index");
    }
    if (int(coef.size()) != m) {
      throw InputError("poly: coefficient length " + std::to_string(coef.size()) +
                       " differs from m=" + std::to_string(m));
    }
    require_finite(coef, "poly coefficient");
  }
  return HoloMap(node::Poly{n, m, std::move(terms)}, n, m);
}

HoloMap HoloMap::mobius_scalar(Complex z0) {
  require_finite_scalar(z0, "mobius_scalar z0");
  if (!(std::abs(z0) < 1.0)) throw InputError("mobius_scalar: |z0| must be < 1");
  return HoloMap(node::MobiusScalar{z0}, 1, 1);
}

HoloMap HoloMap::mobius_quotient(double a_abs, double theta) {
  if (!std::isfinite(a_abs) || !std::isfinite(theta)) {
    throw InputError("mobius_quotient: non-finite parameter");
  }
  if (!(a_abs >= 0.0 && a_abs < 1.0)) throw InputError("mobius_quotient: a_abs must be in [0,1)");
  return HoloMap(node::MobiusQuotient{a_abs, theta}, 1, 1);
}

HoloMap HoloMap::line_embed(CVector p, CVector q) {
  if (p.empty() || p.size() != q.size()) {
    throw InputError("line_embed: p and q must be non-empty and of equal length");
  }
  require_finite(p, "line_embed p");
  require_finite(q, "line_embed q");
  const int n = int(p.size());
  return HoloMap(node::LineEmbed{std::move(p), std::move(q)}, 1, n);
}

HoloMap HoloMap::linear_functional(CVector u) {
  if (u.empty()) throw InputError("linear_functional: u must be non-empty");
  require_finite(u, "linear_functional u");
  const int n = int(u.size());
  return HoloMap(node::LinearFunctional{std::move(u)}, n, 1);
}

HoloMap HoloMap::scalar_times_vector(CVector beta) {
  if (beta.empty()) throw InputError("scalar_times_vector: beta must be non-empty");
  require_finite(beta, "scalar_times_vector beta");
  const int m = int(beta.size());
  return HoloMap(node::ScalarTimesVector{std::move(beta)}, 1, m);
}

HoloMap HoloMap::affine_scalar(Complex r, Complex c) {
  require_finite_scalar(r, "affine_scalar r");
  require_finite_scalar(c, "affine_scalar c");
  return HoloMap(node::AffineScalar{r, c}, 1, 1);
}

HoloMap HoloMap::pipeline(std::vector<HoloMap> stages) {
  if (stages.empty()) throw InputError("pipeline: needs at least one stage");
  for (std::size_t s = 1; s < stages.size(); ++s) {
    if (stages[s].in_dim() != stages[s - 1].out_dim()) {
      throw InputError("pipeline: stage " + std::to_string(s) + " expects dimension " +
                       std::to_string(stages[s].in_dim()) + " but stage " +
                       std::to_string(s - 1) + " produces " +
                       std::to_string(stages[s - 1].out_dim()));
    }
  }
  const int n = stages.front().in_dim();
  const int m = stages.back().out_dim();
  return HoloMap(node::Pipeline{std::move(stages)}, n, m);
}

HoloMap HoloMap::identity(int n) {
  std::map<MultiIndex, CVector> terms;
  for (int j = 0; j < n; ++j) {
    MultiIndex alpha(std::size_t(n), 0);
    alpha[std::size_t(j)] = 1;
    CVector coef(static_cast<std::size_t>(n));
    coef[std::size_t(j)] = 1.0;
    terms.emplace(std::move(alpha), std::move(coef));
  }
  return poly(n, n, std::move(terms));
}

std::string_view HoloMap::kind() const noexcept {
  return std::visit(Overloaded{
                        [](const node::Poly&) { return std::string_view("poly"); },
                        [](const node::MobiusScalar&) { return std::string_view("mobius_scalar"); },
                        [](const node::MobiusQuotient&) { return std::string_view("mobius_quotient"); },
                        [](const node::LineEmbed&) { return std::string_view("line_embed"); },
                        [](const node::LinearFunctional&) { return std::string_view("linear_functional"); },
                        [](const node::ScalarTimesVector&) { return std::string_view("scalar_times_vector"); },
                        [](const node::AffineScalar&) { return std::string_view("affine_scalar"); },
                        [](const node::Pipeline&) { return std::string_view("pipeline"); },
                    },
                    *node_);
}

void HoloMap::check_point(std::span<const Complex> z) const {
  if (int(z.size()) != in_dim_) {
    throw InputError(std::string(kind()) + ": point has dimension " + std::to_string(z.size()) +
                     ", map expects " + std::to_string(in_dim_));
  }
  require_finite(z, "evaluation point");
}

Jet HoloMap::jet(std::span<const Complex> z) const {
  check_point(z);
  return jet_node(*node_, z, true);
}

CVector HoloMap::eval(std::span<const Complex> z) const {
  check_point(z);
  return jet_node(*node_, z, false).value;
}

CMatrix HoloMap::jacobian(std::span<const Complex> z) const { return jet(z).jacobian; }

CVector HoloMap::frechet_apply(std::span<const Complex> z, std::span<const Complex> beta) const {
  if (int(beta.size()) != in_dim_) {
    throw InputError("frechet_apply: direction has dimension " + std::to_string(beta.size()) +
                     ", map expects " + std::to_string(in_dim_));
  }
  return jacobian(z) * beta;
}

bool operator==(const HoloMap& a, const HoloMap& b) {
  if (a.node_ == b.node_) return true;
  return a.in_dim_ == b.in_dim_ && a.out_dim_ == b.out_dim_ && *a.node_ == *b.node_;
}

HoloMap compose(const HoloMap& g, const HoloMap& h) { return HoloMap::pipeline({h, g}); }

}  // namespace modgrad
