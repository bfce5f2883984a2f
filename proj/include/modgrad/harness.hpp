#pragma once

// Randomized verification campaigns for the modulus Schwarz-Pick bound.
//
// Maps come from gen_random_polymap, whose coefficient l1 certificate
// guarantees |f| <= 1 - margin on the closed ball. Every point check records
// the bound report and the deviation between the closed-form gradient and the
// finite-difference oracle, one JSONL line per check.
//
// Trials are independent and run under OpenMP when Exec::parallel is
// requested; Exec::serial is the reference path. Both emit identical records
// in trial order.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "modgrad/complex.hpp"
#include "modgrad/holomap.hpp"
#include "modgrad/json_io.hpp"
#include "modgrad/schwarzpick.hpp"

namespace modgrad {

struct FuzzConfig {
  int trials = 1000;
  int points_per_trial = 100;
  int n = 2;
  int m = 2;
  int max_degree = 3;
  double margin = 0.05;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  int fd_dirs = 64;
  // Prepend the (z, 1)/sqrt(2) check at z = 0 as trial -1 (non-empty campaigns only).
  bool pin_counterexample = true;

  void validate() const;
};

enum class Exec { serial, parallel };

struct PointRecord {
  int trial = 0;
  BoundReport bound;
  double fd = 0.0;
  double fd_dev = 0.0;
  bool anomaly = false;
  // Only for the pinned counterexample: |f'(z)| and whether the classical
  // (derivative) form of the bound holds.
  std::optional<double> classical_lhs;
  std::optional<bool> classical_holds;
};

struct CampaignReport {
  int trials_run = 0;
  long long points_checked = 0;
  std::vector<PointRecord> violations;
  std::optional<double> worst_slack;  // absent when nothing was checked
  double oracle_max_dev = 0.0;
  double oracle_p99_dev = 0.0;
  long long anomalies = 0;
  std::optional<PointRecord> pinned;
  double runtime_ms = 0.0;
};

// Trial-level seed derivation (splitmix64 mixing of seed and index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Random polynomial C^n -> C^m of total degree <= max_degree with
// sum_k (sum_alpha |c_{k,alpha}|)^2 <= (1 - margin)^2.
HoloMap gen_random_polymap(int n, int m, int max_degree, double margin, std::uint64_t seed);

// sqrt(sum_k (sum_alpha |c_{k,alpha}|)^2) of a poly map.
double l1_certificate(const HoloMap& poly);

// (f - f(p)) / 2 for a certified poly map f; vanishes at p (up to rounding)
// and still maps the ball into the ball.
HoloMap with_forced_zero(const HoloMap& poly, const CVector& p);

// Uniform points in B_n (direction x radius^(1/2n)), rejecting |z| > max_radius.
std::vector<CVector> sample_ball(int n, int count, std::uint64_t seed, double max_radius = 0.999);

// The map (z, 1)/sqrt(2), C -> C^2.
HoloMap counterexample_map();

// Checks of one trial, in point order. Trial -1 is the pinned counterexample.
std::vector<PointRecord> run_trial(const FuzzConfig& cfg, int trial);

// Optional JSONL sink receives one line per record, in trial order.
CampaignReport fuzz_campaign(const FuzzConfig& cfg, std::ostream* jsonl = nullptr,
                             Exec exec = Exec::parallel);

Json to_json(const PointRecord& r);
Json to_json(const CampaignReport& r);

// Worker threads available to Exec::parallel (1 without OpenMP).
int parallel_threads();

}  // namespace modgrad
