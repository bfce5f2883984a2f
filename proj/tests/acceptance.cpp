// Acceptance suite: one PASS/FAIL line per criterion. All tolerances and
// sample sizes are fixed here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "modgrad/extremal.hpp"
#include "modgrad/geometry.hpp"
#include "modgrad/harness.hpp"
#include "modgrad/schwarzpick.hpp"
#include "test_support.hpp"

using namespace modgrad;
using modgrad::testing::Gen;

namespace {

// Criterion 1
constexpr int kCampaignMaps = 1000;
constexpr int kCampaignPoints = 100;
constexpr int kCampaignMaxDegree = 4;
constexpr double kCampaignTol = 1e-9;

// Criterion 2
constexpr int kOraclePairs = 5000;
constexpr int kOracleMinZeroBranch = 100;
constexpr double kOracleTol = 1e-4;

// Criterion 3
constexpr double kClassicalExcess = 0.2;

// Criterion 4
constexpr int kSlicePairs = 500;
constexpr int kSliceAngles = 256;
constexpr int kSliceInterior = 200;
constexpr double kSliceBoundaryTol = 1e-12;
constexpr double kSliceInteriorRadius = 0.999;  // fraction of r

// Criterion 5
constexpr int kFactorRandom = 10000;
constexpr int kFactorCollinear = 1000;
constexpr int kFactorStrict = 1000;
constexpr double kFactorUlpAllowance = 4 * 2.220446049250313e-16;
constexpr double kFactorEqualityTol = 1e-12;
constexpr double kFactorMinGap = 1e-9;
constexpr double kFactorMinDefect = 1e-3;

// Criterion 6
constexpr double kWitnessGapTol = 1e-12;
constexpr int kWitnessOtherPoints = 100;
constexpr double kWitnessBoundTol = 1e-9;
constexpr double kWitnessThetaTol = 1e-10;
constexpr int kDiagnoseSamples = 64;
constexpr double kDiagnoseTol = 1e-10;

// Criterion 7
constexpr int kAutomorphisms = 20;
constexpr int kAutomorphismPoints = 100;
constexpr double kOneDimTol = 1e-12;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome main_inequality() {
  long long points = 0, violations = 0, anomalies = 0;
  double worst = INFINITY;
  int maps = 0;
  // 16 dimension pairs share the map budget (63 maps each, 1008 total).
  const int per_pair = (kCampaignMaps + 15) / 16;
  for (int n = 1; n <= 4; ++n) {
    for (int m = 1; m <= 4; ++m) {
      FuzzConfig cfg;
      cfg.trials = per_pair;
      cfg.points_per_trial = kCampaignPoints;
      cfg.n = n;
      cfg.m = m;
      cfg.max_degree = kCampaignMaxDegree;
      cfg.tol = kCampaignTol;
      cfg.seed = derive_seed(2024, std::uint64_t(4 * n + m));
      cfg.pin_counterexample = false;
      const CampaignReport rep = fuzz_campaign(cfg);
      maps += rep.trials_run;
      points += rep.points_checked;
      violations += (long long)rep.violations.size();
      anomalies += rep.anomalies;
      if (rep.worst_slack) worst = std::min(worst, *rep.worst_slack);
    }
  }
  return {maps >= kCampaignMaps && violations == 0,
          fmt("%d maps, %lld points, %lld violations, worst slack %.3e, fd anomalies %lld", maps, points,
              violations, worst, anomalies)};
}

Outcome closed_form_vs_definition() {
  int pairs = 0, zero_branch = 0, failures = 0;
  double worst = 0.0;
  auto check = [&](const HoloMap& f, const CVector& z, std::uint64_t seed) {
    const GradResult g = mod_grad(f, z);
    FdOptions fd;
    fd.seed = seed;
    const double dev = std::abs(g.value - mod_grad_fd(f, z, fd));
    worst = std::max(worst, dev);
    if (!(dev <= kOracleTol)) ++failures;
    if (g.branch == Branch::zero) ++zero_branch;
    ++pairs;
  };
  const int maps = kOraclePairs / 5;
  for (int i = 0; i < maps; ++i) {
    const int n = 1 + i % 4, m = 1 + (i / 4) % 4, degree = 1 + (i / 16) % 4;
    const std::uint64_t s = derive_seed(7, std::uint64_t(i));
    const HoloMap f = gen_random_polymap(n, m, degree, 0.05, s);
    const auto pts = sample_ball(n, 5, derive_seed(s, 1));
    for (int k = 0; k < 4; ++k) check(f, pts[std::size_t(k)], derive_seed(s, 2 + std::uint64_t(k)));
    if (i % 5 == 0) {
      check(with_forced_zero(f, pts[4]), pts[4], derive_seed(s, 9));
    } else {
      check(f, pts[4], derive_seed(s, 9));
    }
  }
  return {pairs == kOraclePairs && zero_branch >= kOracleMinZeroBranch && failures == 0,
          fmt("%d pairs (%d zero-branch), max |closed - fd| %.3e, %d over tol", pairs, zero_branch, worst,
              failures)};
}

Outcome counterexample() {
  const HoloMap f = counterexample_map();
  const CVector z{0.0};
  const double deriv = norm(f.jacobian(z).column(0));
  const double fz = norm(f.eval(z));
  const double classical_excess = deriv - (1 - fz * fz);
  const BoundReport rep = sp_bound(f, z);
  return {classical_excess > kClassicalExcess && rep.lhs == 0.0 && rep.holds && std::abs(rep.rhs - 0.5) < 1e-15,
          fmt("|f'(0)| - (1 - |f(0)|^2) = %.6f (classical form fails); mod_grad = %.1f <= rhs = %.6f",
              classical_excess, rep.lhs, rep.rhs)};
}

Outcome slice_geometry() {
  double worst_boundary = 0.0;
  int interior_fail = 0;
  for (int i = 0; i < kSlicePairs; ++i) {
    const int n = 1 + i % 4;
    const auto pq = sample_ball(n, 2, derive_seed(11, std::uint64_t(i)));
    const DiskSlice s = disk_slice(pq[0], pq[1]);
    const HoloMap line = s.line();
    for (int k = 0; k < kSliceAngles; ++k) {
      const Complex z = s.boundary_point(2 * M_PI * k / kSliceAngles);
      worst_boundary = std::max(worst_boundary, std::abs(norm(line.eval(CVector{z})) - 1.0));
    }
    Gen g(derive_seed(12, std::uint64_t(i)));
    for (int k = 0; k < kSliceInterior; ++k) {
      const double rho = kSliceInteriorRadius * std::sqrt(g.uniform());
      const Complex z = s.c + std::polar(rho * s.r, g.uniform(0.0, 2 * M_PI));
      if (!(norm(line.eval(CVector{z})) < 1.0)) ++interior_fail;
    }
  }
  return {worst_boundary <= kSliceBoundaryTol && interior_fail == 0,
          fmt("%d pairs: max boundary defect %.3e, %d interior samples outside", kSlicePairs, worst_boundary,
              interior_fail)};
}

double defect(const CVector& p, const CVector& d) {
  double sp = 0.0, sd = 0.0;
  Complex ip = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    sp += std::norm(p[j]);
    sd += std::norm(d[j]);
    ip += p[j] * std::conj(d[j]);
  }
  return 1.0 - std::abs(ip) / std::sqrt(sp * sd);
}

Outcome bound_factor_check() {
  Gen g(13);
  int random_fail = 0;
  for (int i = 0; i < kFactorRandom; ++i) {
    const int n = g.integer(1, 4);
    const auto pq = sample_ball(n, 2, derive_seed(14, std::uint64_t(i)));
    if (norm(pq[1] - pq[0]) < 1e-12) continue;
    const BoundFactor bf = bound_factor(pq[0], pq[1]);
    if (!(bf.factor <= bf.rhs * (1 + kFactorUlpAllowance))) ++random_fail;
  }

  int eq_fail = 0;
  double eq_worst = 0.0;
  for (int i = 0; i < kFactorCollinear; ++i) {
    const int n = g.integer(1, 4);
    const CVector p = g.in_ball(n, 0.05, 0.9);
    // q = (1 + lambda) p with complex lambda keeping q in the ball
    Complex lambda;
    do {
      lambda = std::polar(g.uniform(0.05, 2.0), g.uniform(0.0, 2 * M_PI));
    } while (!(std::abs(1.0 + lambda) * norm(p) < 0.99));
    const CVector q = (1.0 + lambda) * p;
    const BoundFactor bf = bound_factor(p, q);
    const double diff = std::abs(bf.factor - bf.rhs) / std::max(1.0, bf.rhs);
    eq_worst = std::max(eq_worst, diff);
    if (!(diff <= kFactorEqualityTol) || !bf.collinear) ++eq_fail;
  }

  int strict = 0, strict_fail = 0;
  double min_gap = INFINITY;
  while (strict < kFactorStrict) {
    const int n = g.integer(2, 4);
    const CVector p = g.in_ball(n, 0.1, 0.9);
    const CVector q = g.in_ball(n, 0.0, 0.9);
    const CVector d = q - p;
    if (norm(d) < 0.05 || defect(p, d) < kFactorMinDefect) continue;
    ++strict;
    const BoundFactor bf = bound_factor(p, q);
    const double gap = bf.rhs - bf.factor;
    min_gap = std::min(min_gap, gap);
    if (!(gap >= kFactorMinGap) || bf.collinear) ++strict_fail;
  }
  return {random_fail == 0 && eq_fail == 0 && strict_fail == 0,
          fmt("random: %d over rhs; collinear: max rel diff %.3e (%d fail); defect >= 1e-3: min gap %.3e (%d fail)",
              random_fail, eq_worst, eq_fail, min_gap, strict_fail)};
}

Outcome equality_witnesses() {
  const double radii[] = {0.0, 0.3, 0.7, 0.9};
  const double a_abs[] = {0.2, 0.5, 0.8};
  const double thetas[] = {0.0, M_PI / 3, M_PI};
  int maps = 0, gap_fail = 0, bound_fail = 0, diag_fail = 0;
  double worst_gap = 0.0, worst_theta = 0.0;
  Gen g(17);

  auto exercise = [&](const ExtremalSpec& spec, std::optional<double> theta) {
    ++maps;
    const HoloMap f = extremal_map(spec);
    const double gap = std::abs(equality_gap(f, spec.p));
    worst_gap = std::max(worst_gap, gap);
    if (!(gap <= kWitnessGapTol)) ++gap_fail;
    const int n = int(spec.p.size());
    for (const auto& z : sample_ball(n, kWitnessOtherPoints, derive_seed(18, std::uint64_t(maps)))) {
      if (!sp_bound(f, z, kWitnessBoundTol).holds) ++bound_fail;
    }
    const double t = (1 - norm(spec.p)) / 2;
    const CVector q = spec.p + Complex(t) * spec.u;
    const Diagnosis d = diagnose_equality_form(f, spec.p, q, kDiagnoseSamples, kDiagnoseTol);
    bool ok = d.matches;
    if (theta) {
      const double err = d.fitted_theta ? std::abs(std::remainder(*d.fitted_theta - *theta, 2 * M_PI)) : INFINITY;
      worst_theta = std::max(worst_theta, err);
      ok = ok && err <= kWitnessThetaTol;
    }
    if (!ok) ++diag_fail;
  };

  for (int n = 1; n <= 4; ++n) {
    for (int m = 1; m <= 4; ++m) {
      for (double rp : radii) {
        const CVector u = g.unit(n);
        ExtremalSpec spec;
        spec.u = u;
        spec.p = std::polar(rp, g.uniform(-M_PI, M_PI)) * u;
        spec.kind = ExtremalCase::zero;
        spec.beta = g.unit(m);
        exercise(spec, std::nullopt);

        spec.kind = ExtremalCase::nonzero;
        for (double ra : a_abs) {
          const CVector dir = g.unit(m);
          spec.a = Complex(ra) * dir;
          for (double th : thetas) {
            spec.theta = th;
            exercise(spec, th);
          }
        }
      }
    }
  }
  return {gap_fail == 0 && bound_fail == 0 && diag_fail == 0,
          fmt("%d witnesses: max gap %.3e (%d fail), bound failures %d, diagnose failures %d, max theta err %.3e",
              maps, worst_gap, gap_fail, bound_fail, diag_fail, worst_theta)};
}

Outcome one_dimensional() {
  Gen g(19);
  double worst_auto = 0.0, worst_deriv = 0.0, worst_vec = 0.0;
  for (int i = 0; i < kAutomorphisms; ++i) {
    const HoloMap f = testing::disk_automorphism(g.in_disk(0.95), g.uniform(-M_PI, M_PI));
    for (const auto& z : sample_ball(1, kAutomorphismPoints, derive_seed(20, std::uint64_t(i)))) {
      const BoundReport rep = sp_bound(f, z);
      worst_auto = std::max(worst_auto, std::abs(rep.slack) / std::max(1.0, rep.rhs));
      // classical form: |f'| = (1 - |f|^2) / (1 - |z|^2)
      const double deriv = std::abs(f.jacobian(z)(0, 0));
      const double fz = std::abs(f.eval(z)[0]);
      const double classical = (1 - fz * fz) / (1 - std::norm(z[0]));
      worst_auto = std::max(worst_auto, std::abs(deriv - classical) / std::max(1.0, classical));
      worst_deriv = std::max(worst_deriv, std::abs(rep.lhs - deriv) / std::max(1.0, deriv));
    }
  }
  // scalar maps: |grad|f|| = |f'|; curves in C^m: |<f', f>| / |f|
  for (int i = 0; i < kAutomorphisms; ++i) {
    for (int m = 1; m <= 4; ++m) {
      const HoloMap f = gen_random_polymap(1, m, 4, 0.05, derive_seed(21, std::uint64_t(4 * i + m)));
      for (const auto& z : sample_ball(1, kAutomorphismPoints, derive_seed(22, std::uint64_t(4 * i + m)))) {
        const GradResult gr = mod_grad(f, z);
        const CVector fz = f.eval(z);
        const CVector d = f.jacobian(z).column(0);
        double fn = 0.0;
        Complex ip = 0.0;
        for (std::size_t k = 0; k < fz.size(); ++k) {
          fn += std::norm(fz[k]);
          ip += d[k] * std::conj(fz[k]);
        }
        fn = std::sqrt(fn);
        if (fn <= kZeroThreshold) continue;
        const double expected = m == 1 ? std::abs(d[0]) : std::abs(ip) / fn;
        double& worst = m == 1 ? worst_deriv : worst_vec;
        worst = std::max(worst, std::abs(gr.value - expected) / std::max(1.0, expected));
      }
    }
  }
  return {worst_auto <= kOneDimTol && worst_deriv <= kOneDimTol && worst_vec <= kOneDimTol,
          fmt("%d automorphisms x %d points: max equality defect %.3e; |f'| form %.3e; curve form %.3e",
              kAutomorphisms, kAutomorphismPoints, worst_auto, worst_deriv, worst_vec)};
}

Outcome determinism() {
  const FuzzConfig cfg;  // default campaign
  std::ostringstream first, second;
  fuzz_campaign(cfg, &first);
  fuzz_campaign(cfg, &second);
  const std::string a = first.str(), b = second.str();
  const auto lines = std::count(a.begin(), a.end(), '\n');
  return {!a.empty() && a == b,
          fmt("default campaign twice (seed %llu): %ld JSONL lines, %zu bytes, identical=%s",
              (unsigned long long)cfg.seed, long(lines), a.size(), a == b ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"main inequality over random certified maps", main_inequality},
      {"closed form agrees with the directional definition", closed_form_vs_definition},
      {"classical form fails where the modulus form holds", counterexample},
      {"slice disk maps onto the ball", slice_geometry},
      {"bound factor inequality and its equality case", bound_factor_check},
      {"equality witnesses and diagnosis round trip", equality_witnesses},
      {"one-dimensional specializations and disk automorphisms", one_dimensional},
      {"campaign determinism", determinism},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("%s [%d] %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
