#include "modgrad/harness.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <cmath>
#include <ostream>
#include <random>
#include <variant>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "modgrad/errors.hpp"

namespace modgrad {

void FuzzConfig::validate() const {
  if (trials < 0) throw InputError("fuzz: trials must be >= 0");
  if (points_per_trial < 1) throw InputError("fuzz: points_per_trial must be positive");
  if (n < 1 || m < 1) throw InputError("fuzz: n and m must be positive");
  if (max_degree < 0) throw InputError("fuzz: max_degree must be >= 0");
  if (!(margin > 0.0 && margin < 1.0)) throw InputError("fuzz: margin must lie in (0,1)");
  if (!(tol > 0.0)) throw InputError("fuzz: tol must be positive");
  if (fd_dirs < 64) throw InputError("fuzz: fd_dirs must be >= 64");
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  auto mix = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  return mix(seed ^ mix(index));
}

namespace {

void multi_indices(int n, int max_degree, MultiIndex& cur, int pos, int used,
                   std::vector<MultiIndex>& out) {
  if (pos == n) {
    out.push_back(cur);
    return;
  }
  for (int e = 0; e + used <= max_degree; ++e) {
    cur[std::size_t(pos)] = e;
    multi_indices(n, max_degree, cur, pos + 1, used + e, out);
  }
  cur[std::size_t(pos)] = 0;
}

const node::Poly& as_poly(const HoloMap& f, const char* op) {
  const auto* p = std::get_if<node::Poly>(&f.node());
  if (p == nullptr) throw InputError(std::string(op) + ": expected a poly map");
  return *p;
}

}  // namespace

double l1_certificate(const HoloMap& poly) {
  const node::Poly& p = as_poly(poly, "l1_certificate");
  double total = 0.0;
  for (int k = 0; k < p.m; ++k) {
    double row = 0.0;
    for (const auto& [alpha, coef] : p.terms) row += std::abs(coef[std::size_t(k)]);
    total += row * row;
  }
  return std::sqrt(total);
}

HoloMap gen_random_polymap(int n, int m, int max_degree, double margin, std::uint64_t seed) {
  if (n < 1 || m < 1) throw InputError("gen_random_polymap: n and m must be positive");
  if (max_degree < 0) throw InputError("gen_random_polymap: max_degree must be >= 0");
  if (!(margin > 0.0 && margin < 1.0)) throw InputError("gen_random_polymap: margin must lie in (0,1)");

  std::vector<MultiIndex> alphas;
  MultiIndex cur(std::size_t(n), 0);
  multi_indices(n, max_degree, cur, 0, 0, alphas);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::map<MultiIndex, CVector> terms;
  for (auto& alpha : alphas) {
    CVector coef(static_cast<std::size_t>(m));
    for (auto& c : coef) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      c = Complex(re, im);
    }
    terms.emplace(std::move(alpha), std::move(coef));
  }

  const double target = 1.0 - margin;
  double cert = l1_certificate(HoloMap::poly(n, m, terms));
  double scale = target / cert;
  // Rounding in the rescale can overshoot the bound by an ulp; shrink until
  // the recomputed certificate holds exactly.
  for (;;) {
    std::map<MultiIndex, CVector> scaled = terms;
    for (auto& [alpha, coef] : scaled)
      for (auto& c : coef) c *= scale;
    HoloMap f = HoloMap::poly(n, m, std::move(scaled));
    if (l1_certificate(f) <= target) return f;
    scale *= 1.0 - 1e-15;
  }
}

HoloMap with_forced_zero(const HoloMap& poly, const CVector& p) {
  const node::Poly& src = as_poly(poly, "with_forced_zero");
  const CVector fp = poly.eval(p);
  std::map<MultiIndex, CVector> terms = src.terms;
  auto [it, inserted] = terms.try_emplace(MultiIndex(std::size_t(src.n), 0), CVector(std::size_t(src.m)));
  for (std::size_t k = 0; k < fp.size(); ++k) it->second[k] -= fp[k];
  for (auto& [alpha, coef] : terms)
    for (auto& c : coef) c *= 0.5;
  return HoloMap::poly(src.n, src.m, std::move(terms));
}

std::vector<CVector> sample_ball(int n, int count, std::uint64_t seed, double max_radius) {
  if (n < 1) throw InputError("sample_ball: n must be >= 1");
  if (count < 0) throw InputError("sample_ball: count must be >= 0");
  if (!(max_radius > 0.0 && max_radius <= 1.0)) throw InputError("sample_ball: max_radius must lie in (0,1]");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<CVector> out;
  out.reserve(std::size_t(count));
  while (int(out.size()) < count) {
    CVector v(static_cast<std::size_t>(n));
    for (auto& x : v) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      x = Complex(re, im);
    }
    const double len = norm(v);
    const double radius = std::pow(unif(rng), 1.0 / (2.0 * n));
    if (len < 1e-150 || !(radius < max_radius)) continue;
    for (auto& x : v) x *= radius / len;
    out.push_back(std::move(v));
  }
  return out;
}

HoloMap counterexample_map() {
  const double s = 1.0 / std::sqrt(2.0);
  return HoloMap::poly(1, 2, {{{0}, {0.0, s}}, {{1}, {s, 0.0}}});
}

namespace {

PointRecord check_point(const HoloMap& f, const CVector& z, int trial, std::uint64_t fd_seed,
                        const FuzzConfig& cfg) {
  PointRecord rec;
  rec.trial = trial;
  rec.bound = sp_bound(f, z, cfg.tol);
  FdOptions fd;
  fd.dirs = cfg.fd_dirs;
  fd.seed = fd_seed;
  const FdEstimate est = mod_grad_fd_detail(f, z, fd);
  rec.fd = est.value;
  rec.fd_dev = std::abs(rec.bound.lhs - est.value);
  rec.anomaly = est.anomaly;
  return rec;
}

}  // namespace

std::vector<PointRecord> run_trial(const FuzzConfig& cfg, int trial) {
  if (trial < 0) {
    const HoloMap f = counterexample_map();
    const CVector z{0.0};
    PointRecord rec = check_point(f, z, -1, derive_seed(cfg.seed, ~0ULL), cfg);
    const CMatrix jac = f.jacobian(z);
    const double deriv = norm(jac.column(0));
    const double fz = norm(f.eval(z));
    rec.classical_lhs = deriv;
    rec.classical_holds = deriv <= (1.0 - fz * fz) / (1.0 - norm_squared(z)) + cfg.tol;
    return {rec};
  }
  const std::uint64_t ts = derive_seed(cfg.seed, std::uint64_t(trial));
  const HoloMap f = gen_random_polymap(cfg.n, cfg.m, cfg.max_degree, cfg.margin, ts);
  const auto points = sample_ball(cfg.n, cfg.points_per_trial, derive_seed(ts, 1));
  std::vector<PointRecord> out;
  out.reserve(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    out.push_back(check_point(f, points[k], trial, derive_seed(ts, 2 + k), cfg));
  }
  return out;
}

int parallel_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

CampaignReport fuzz_campaign(const FuzzConfig& cfg, std::ostream* jsonl, Exec exec) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();

  std::vector<std::vector<PointRecord>> per_trial(std::size_t(cfg.trials));
  if (exec == Exec::parallel) {
    // Records are slotted by trial index so output order matches the serial path.
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(cfg.trials));
#pragma omp parallel for schedule(dynamic, 1)
    for (int t = 0; t < cfg.trials; ++t) {
      try {
        per_trial[std::size_t(t)] = run_trial(cfg, t);
      } catch (...) {
        errors[std::size_t(t)] = std::current_exception();
      }
    }
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  } else {
    for (int t = 0; t < cfg.trials; ++t) per_trial[std::size_t(t)] = run_trial(cfg, t);
  }

  CampaignReport rep;
  rep.trials_run = cfg.trials;
  std::vector<double> devs;
  auto absorb = [&](const PointRecord& r) {
    ++rep.points_checked;
    rep.worst_slack = rep.worst_slack ? std::min(*rep.worst_slack, r.bound.slack) : r.bound.slack;
    rep.oracle_max_dev = std::max(rep.oracle_max_dev, r.fd_dev);
    devs.push_back(r.fd_dev);
    if (r.anomaly) ++rep.anomalies;
    if (!r.bound.holds) rep.violations.push_back(r);
    if (jsonl != nullptr) *jsonl << to_json(r).dump() << '\n';
  };

  if (cfg.pin_counterexample && cfg.trials > 0) {
    const auto pinned = run_trial(cfg, -1);
    rep.pinned = pinned.front();
    absorb(pinned.front());
  }
  for (const auto& trial : per_trial)
    for (const auto& r : trial) absorb(r);

  if (!devs.empty()) {
    const std::size_t idx = std::min(devs.size() - 1, std::size_t(std::ceil(0.99 * double(devs.size()))) - 1);
    std::nth_element(devs.begin(), devs.begin() + std::ptrdiff_t(idx), devs.end());
    rep.oracle_p99_dev = devs[idx];
  }
  if (jsonl != nullptr && !jsonl->good()) throw std::runtime_error("fuzz: failed writing JSONL log");
  rep.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

Json to_json(const PointRecord& r) {
  Json j{{"trial", r.trial},
         {"point", cvector_to_json(r.bound.point)},
         {"lhs", r.bound.lhs},
         {"rhs", r.bound.rhs},
         {"slack", r.bound.slack},
         {"branch", std::string(to_string(r.bound.branch))},
         {"fd", r.fd},
         {"fd_dev", r.fd_dev}};
  if (r.anomaly) j["anomaly"] = true;
  if (r.classical_lhs) j["classical_lhs"] = *r.classical_lhs;
  if (r.classical_holds) j["classical_holds"] = *r.classical_holds;
  return j;
}

Json to_json(const CampaignReport& r) {
  Json violations = Json::array();
  for (const auto& v : r.violations) violations.push_back(to_json(v));
  Json j{{"trials_run", r.trials_run},
         {"points_checked", r.points_checked},
         {"violations", violations},
         {"worst_slack", r.worst_slack ? Json(*r.worst_slack) : Json(nullptr)},
         {"oracle_max_dev", r.oracle_max_dev},
         {"oracle_p99_dev", r.oracle_p99_dev},
         {"anomalies", r.anomalies},
         {"runtime_ms", r.runtime_ms}};
  if (r.pinned) j["pinned"] = to_json(*r.pinned);
  return j;
}

}  // namespace modgrad
