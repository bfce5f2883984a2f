#include <doctest.h>

#include <cmath>

#include "modgrad/errors.hpp"
#include "modgrad/extremal.hpp"
#include "modgrad/geometry.hpp"
#include "modgrad/schwarzpick.hpp"
#include "test_support.hpp"

using namespace modgrad;
using modgrad::testing::Gen;

namespace {

ExtremalSpec zero_spec(CVector p, CVector u, CVector beta) {
  ExtremalSpec s;
  s.kind = ExtremalCase::zero;
  s.p = std::move(p);
  s.u = std::move(u);
  s.beta = std::move(beta);
  return s;
}

ExtremalSpec nonzero_spec(CVector p, CVector u, CVector a, double theta) {
  ExtremalSpec s;
  s.kind = ExtremalCase::nonzero;
  s.p = std::move(p);
  s.u = std::move(u);
  s.a = std::move(a);
  s.theta = theta;
  return s;
}

// p = |p| e^{i psi} u, so u is collinear with p by construction.
ExtremalSpec random_spec(Gen& g, ExtremalCase kind, int n, int m) {
  const CVector u = g.unit(n);
  const CVector p = std::polar(g.uniform(0.0, 0.9), g.uniform(-M_PI, M_PI)) * u;
  if (kind == ExtremalCase::zero) return zero_spec(p, u, g.unit(m));
  return nonzero_spec(p, u, g.in_ball(m, 0.05, 0.95), g.uniform(-M_PI, M_PI));
}

double angle_diff(double a, double b) { return std::abs(std::remainder(a - b, 2 * M_PI)); }

}  // namespace

TEST_CASE("extremal examples") {
  // phi_{1/2} on the disk: gradient 4/3 at p = 1/2
  const HoloMap z = extremal_map(zero_spec(CVector{0.5}, CVector{1.0}, CVector{1.0}));
  const BoundReport zr = sp_bound(z, CVector{0.5});
  CHECK(zr.branch == Branch::zero);
  CHECK(std::abs(zr.lhs - 4.0 / 3.0) <= 1e-12);
  CHECK(std::abs(zr.slack) <= 1e-12);

  // nonzero case at p = 0 with |a| = 1/2: gradient 1 - |a|^2 = 3/4
  const HoloMap nz = extremal_map(nonzero_spec(CVector{0.0, 0.0}, CVector{1.0, 0.0}, CVector{0.0, 0.5}, 0.7));
  const BoundReport nr = sp_bound(nz, CVector{0.0, 0.0});
  CHECK(nr.branch == Branch::nonzero);
  CHECK(std::abs(nr.lhs - 0.75) <= 1e-12);
  CHECK(std::abs(nr.slack) <= 1e-12);
  const CVector at_p = nz.eval(CVector{0.0, 0.0});
  CHECK(std::abs(at_p[0]) <= 1e-15);
  CHECK(std::abs(at_p[1] - 0.5) <= 1e-15);

  for (double r : {0.1, 0.4, 0.8}) {
    const HoloMap f = extremal_map(nonzero_spec(CVector{0.0}, CVector{1.0}, CVector{r}, 0.0));
    CHECK(std::abs(mod_grad(f, CVector{0.0}).value - (1 - r * r)) <= 1e-12);
  }
}

TEST_CASE("spec validation") {
  CHECK_NOTHROW(validate(zero_spec(CVector{0.0, 0.0}, CVector{0.0, 1.0}, CVector{1.0})));
  CHECK_THROWS_AS(validate(zero_spec(CVector{1.0}, CVector{1.0}, CVector{1.0})), InputError);
  CHECK_THROWS_AS(validate(zero_spec(CVector{0.5}, CVector{0.9}, CVector{1.0})), InputError);
  CHECK_THROWS_AS(validate(zero_spec(CVector{0.5, 0.0}, CVector{0.0, 1.0}, CVector{1.0})), InputError);
  CHECK_THROWS_AS(validate(zero_spec(CVector{0.5, 0.0}, CVector{1.0}, CVector{1.0})), InputError);
  CHECK_THROWS_AS(validate(zero_spec(CVector{0.5}, CVector{1.0}, CVector{0.5})), InputError);
  CHECK_THROWS_AS(validate(zero_spec(CVector{0.5}, CVector{1.0}, CVector{})), InputError);
  CHECK_THROWS_AS(validate(nonzero_spec(CVector{0.5}, CVector{1.0}, CVector{0.0}, 0.0)), InputError);
  CHECK_THROWS_AS(validate(nonzero_spec(CVector{0.5}, CVector{1.0}, CVector{1.0}, 0.0)), InputError);
  CHECK_THROWS_AS(validate(nonzero_spec(CVector{0.5}, CVector{1.0}, CVector{0.5}, NAN)), InputError);
  CHECK_THROWS_AS(extremal_zero_case(nonzero_spec(CVector{0.5}, CVector{1.0}, CVector{0.5}, 0.0)), InputError);
  CHECK_THROWS_AS(extremal_nonzero_case(zero_spec(CVector{0.5}, CVector{1.0}, CVector{1.0})), InputError);
  // a complex phase between u and p is allowed
  CHECK_NOTHROW(validate(zero_spec(CVector{Complex(0, 0.5)}, CVector{1.0}, CVector{1.0})));
}

TEST_CASE("witnesses attain equality at p and stay in the ball") {
  Gen g(61);
  for (int i = 0; i < 200; ++i) {
    const int n = g.integer(1, 4), m = g.integer(1, 4);
    const auto kind = i % 2 == 0 ? ExtremalCase::zero : ExtremalCase::nonzero;
    const ExtremalSpec spec = random_spec(g, kind, n, m);
    const HoloMap f = extremal_map(spec);
    const BoundReport rep = sp_bound(f, spec.p);
    CHECK(std::abs(rep.slack) <= 1e-12 * std::max(1.0, rep.rhs));

    const CVector fp = f.eval(spec.p);
    if (kind == ExtremalCase::zero) {
      CHECK(norm(fp) <= 1e-15);
    } else {
      CHECK(norm(fp - spec.a) <= 1e-12);
    }
    for (int k = 0; k < 50; ++k) CHECK(norm(f.eval(g.in_ball(n, 0.0, 0.999))) < 1.0);
  }
}

TEST_CASE("equality holds for every theta") {
  Gen g(67);
  const CVector u = g.unit(3);
  const CVector p = std::polar(0.6, 1.1) * u;
  const CVector a = g.in_ball(2, 0.3, 0.7);
  for (int k = 0; k < 64; ++k) {
    const double theta = -M_PI + 2 * M_PI * k / 64;
    const HoloMap f = extremal_map(nonzero_spec(p, u, a, theta));
    CHECK(std::abs(equality_gap(f, p)) <= 1e-12);
  }
}

TEST_CASE("witnesses factor through the projection onto u") {
  Gen g(71);
  for (int i = 0; i < 50; ++i) {
    const ExtremalSpec spec = random_spec(g, i % 2 ? ExtremalCase::zero : ExtremalCase::nonzero, 3, 2);
    const HoloMap f = extremal_map(spec);
    for (int k = 0; k < 10; ++k) {
      const CVector w = g.in_ball(3);
      const CVector proj = herm_inner(w, spec.u) * spec.u;
      CHECK(norm(f.eval(w) - f.eval(proj)) <= 1e-14);
      // equality along the whole complex line through p in direction u
      const BoundReport rep = sp_bound(f, proj);
      CHECK(std::abs(rep.slack) <= 1e-12 * std::max(1.0, rep.rhs));
    }
  }
}

TEST_CASE("in one variable the witnesses are disk automorphisms") {
  Gen g(73);
  for (int i = 0; i < 50; ++i) {
    const ExtremalSpec spec = random_spec(g, ExtremalCase::nonzero, 1, 1);
    const HoloMap f = extremal_map(spec);
    for (int k = 0; k < 10; ++k) {
      const CVector z{g.in_disk(0.95)};
      CHECK(std::abs(sp_bound(f, z).slack) <= 1e-11);
      // |f| -> 1 at the boundary
      CHECK(std::abs(norm(f.eval(CVector{std::polar(1.0, g.uniform(0.0, 6.0))})) - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("off the collinear set the lifted map has a strict gap") {
  Gen g(79);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    const int n = g.integer(2, 4);
    const CVector p = g.in_ball(n, 0.2, 0.9);
    const CVector u = g.unit(n);
    if (collinearity_defect(p, u) < 1e-3) continue;
    const HoloMap f = lifted_mobius(p, u, g.unit(2));
    CHECK(equality_gap(f, p) > 1e-9);
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("diagnose recognizes the witnesses") {
  Gen g(83);
  for (int i = 0; i < 100; ++i) {
    const int n = g.integer(1, 3), m = g.integer(1, 3);
    const bool zero = i % 2 == 0;
    const ExtremalSpec spec = random_spec(g, zero ? ExtremalCase::zero : ExtremalCase::nonzero, n, m);
    const double t = (1 - norm(spec.p)) / 2;
    const CVector q = spec.p + Complex(t) * spec.u;
    const Diagnosis d = diagnose_equality_form(extremal_map(spec), spec.p, q, 64, 1e-10);
    CHECK(d.matches);
    CHECK(d.points_tested == 64);
    CHECK(d.max_residual <= 1e-10);
    if (zero) {
      REQUIRE(d.fitted_beta.has_value());
      CHECK(std::abs(norm(*d.fitted_beta) - 1.0) <= 1e-10);
      CHECK_FALSE(d.fitted_theta.has_value());
    } else {
      REQUIRE(d.fitted_theta.has_value());
      CHECK(angle_diff(*d.fitted_theta, spec.theta) <= 1e-9);
      REQUIRE(d.fitted_a.has_value());
      CHECK(norm(*d.fitted_a - spec.a) <= 1e-12);
      REQUIRE(d.orthogonal_norm.has_value());
      CHECK(*d.orthogonal_norm <= 1e-12);
    }
  }
}

TEST_CASE("diagnose rejects maps that are not of the canonical form") {
  // equality at 0 but a second-order component in another coordinate
  const HoloMap f = HoloMap::poly(1, 2, {{{1}, {1.0, 0.0}}, {{2}, {0.0, 0.5}}});
  REQUIRE(std::abs(equality_gap(f, CVector{0.0})) <= 1e-12);
  const Diagnosis d = diagnose_equality_form(f, CVector{0.0}, CVector{0.5}, 64, 1e-10);
  CHECK_FALSE(d.matches);
  CHECK(d.max_residual > 1e-3);
}

TEST_CASE("diagnose preconditions and errors") {
  const HoloMap sq = HoloMap::poly(1, 1, {{{2}, {1.0}}});
  CHECK_THROWS_AS(diagnose_equality_form(sq, CVector{0.5}, CVector{0.7}, 64, 1e-10), PreconditionError);

  const HoloMap id = HoloMap::identity(2);
  const CVector p{0.3, 0.0};
  REQUIRE(std::abs(equality_gap(id, p)) <= 1e-12);
  CHECK_THROWS_AS(diagnose_equality_form(id, p, CVector{0.3, 0.3}, 64, 1e-10), PreconditionError);
  CHECK_NOTHROW(diagnose_equality_form(id, p, CVector{0.6, 0.0}, 64, 1e-10));
  CHECK_THROWS_AS(diagnose_equality_form(id, p, CVector{0.6, 0.0}, 0, 1e-10), InputError);
  CHECK_THROWS_AS(diagnose_equality_form(id, p, CVector{0.6, 0.0}, 8, -1.0), InputError);
  CHECK_THROWS_AS(diagnose_equality_form(id, p, p, 8, 1e-10), InputError);
}

TEST_CASE("diagnosis json") {
  const ExtremalSpec spec = zero_spec(CVector{0.5}, CVector{1.0}, CVector{1.0});
  const Json j = to_json(diagnose_equality_form(extremal_map(spec), spec.p, CVector{0.7}, 16, 1e-10));
  CHECK(j.at("matches") == true);
  CHECK(j.at("fitted_theta").is_null());
  CHECK(j.at("fitted_a").is_null());
  CHECK(j.contains("fitted_beta"));
  CHECK(j.at("points_tested") == 16);
}
