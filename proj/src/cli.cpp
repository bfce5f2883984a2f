#include "modgrad/cli.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>

#include "modgrad/errors.hpp"
#include "modgrad/extremal.hpp"
#include "modgrad/geometry.hpp"
#include "modgrad/harness.hpp"
#include "modgrad/mapspec.hpp"
#include "modgrad/schwarzpick.hpp"

namespace modgrad::cli {

namespace {

// Error already carrying the offending flag or file in its message.
class UsageError : public InputError {
 public:
  using InputError::InputError;
};

double parse_real(const std::string& s, const std::string& flag) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError(flag + ": cannot parse '" + s + "' as a number");
  }
  while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
  if (used != s.size() || !std::isfinite(v)) throw UsageError(flag + ": cannot parse '" + s + "' as a number");
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

HoloMap load_map(const std::string& path, std::istream& in) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  } else {
    std::ifstream f(path);
    if (!f) throw UsageError("--map: cannot open '" + path + "'");
    text.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
  }
  try {
    return parse_spec_text(text);
  } catch (const SchemaError& e) {
    throw UsageError("--map " + path + ": " + e.what());
  }
}

void emit(std::ostream& out, const Json& j) { out << j.dump() << '\n'; }

}  // namespace

CVector parse_point(const std::string& text, const std::string& flag) {
  CVector out;
  // getline drops a trailing empty field
  if (!trim(text).empty() && trim(text).back() == ';') {
    throw UsageError(flag + ": empty component in '" + text + "'");
  }
  std::stringstream ss(text);
  std::string pair;
  while (std::getline(ss, pair, ';')) {
    pair = trim(pair);
    if (pair.empty()) throw UsageError(flag + ": empty component in '" + text + "'");
    const auto comma = pair.find(',');
    if (comma == std::string::npos || pair.find(',', comma + 1) != std::string::npos) {
      throw UsageError(flag + ": expected 're,im' pairs separated by ';', got '" + pair + "'");
    }
    out.emplace_back(parse_real(trim(pair.substr(0, comma)), flag),
                     parse_real(trim(pair.substr(comma + 1)), flag));
  }
  if (out.empty()) throw UsageError(flag + ": no components in '" + text + "'");
  return out;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Modulus gradient and Schwarz-Pick bound toolkit for maps between unit balls",
               "modgrad"};
  app.require_subcommand(1);

  std::string map_path, point, p_text, q_text, u_text, beta_text, a_text, case_text, out_path;
  double tol = 1e-9;
  double diag_tol = 1e-10;
  double theta = 0.0;
  int samples = 64;
  FuzzConfig fuzz;
  bool serial = false;

  auto* grad = app.add_subcommand("grad", "Print |grad|f||(z) as JSON");
  grad->add_option("--map", map_path, "MapSpec JSON file, '-' for stdin")->required();
  grad->add_option("--point", point, "Point \"re,im;re,im;...\"")->required();

  auto* bound = app.add_subcommand("bound", "Check the modulus Schwarz-Pick bound at a point");
  bound->add_option("--map", map_path, "MapSpec JSON file, '-' for stdin")->required();
  bound->add_option("--point", point, "Point \"re,im;re,im;...\"")->required();
  bound->add_option("--tol", tol, "Violation tolerance")->capture_default_str();

  auto* slice = app.add_subcommand("slice", "Disk slice of the ball along p + z(q - p)");
  slice->add_option("--p", p_text, "Base point in the ball")->required();
  slice->add_option("--q", q_text, "Second point in the ball")->required();

  auto* extremal = app.add_subcommand("extremal", "Emit an equality-case witness as MapSpec JSON");
  extremal->add_option("--case", case_text, "zero | nonzero")
      ->required()
      ->check(CLI::IsMember({"zero", "nonzero"}));
  extremal->add_option("--p", p_text, "Point where equality holds")->required();
  extremal->add_option("--u", u_text, "Unit direction collinear with p")->required();
  extremal->add_option("--beta", beta_text, "Unit vector in C^m (zero case)");
  extremal->add_option("--a", a_text, "Value f(p) in B_m, nonzero (nonzero case)");
  extremal->add_option("--theta", theta, "Rotation angle (nonzero case)");
  extremal->add_option("--out", out_path, "Write the MapSpec here instead of stdout");

  auto* diagnose = app.add_subcommand("diagnose", "Check a map against the equality form along a slice");
  diagnose->add_option("--map", map_path, "MapSpec JSON file, '-' for stdin")->required();
  diagnose->add_option("--p", p_text, "Point where equality holds")->required();
  diagnose->add_option("--q", q_text, "Second point on a line collinear with p")->required();
  diagnose->add_option("--samples", samples, "Sample count")->capture_default_str();
  diagnose->add_option("--tol", diag_tol, "Residual tolerance")->capture_default_str();

  auto* fz = app.add_subcommand("fuzz", "Randomized campaign over certified polynomial maps");
  fz->add_option("--trials", fuzz.trials)->capture_default_str();
  fz->add_option("--points", fuzz.points_per_trial, "Points per trial")->capture_default_str();
  fz->add_option("--n", fuzz.n)->capture_default_str();
  fz->add_option("--m", fuzz.m)->capture_default_str();
  fz->add_option("--max-degree", fuzz.max_degree)->capture_default_str();
  fz->add_option("--margin", fuzz.margin)->capture_default_str();
  fz->add_option("--seed", fuzz.seed)->capture_default_str();
  fz->add_option("--tol", fuzz.tol)->capture_default_str();
  fz->add_option("--fd-dirs", fuzz.fd_dirs)->capture_default_str();
  fz->add_option("--out", out_path, "JSONL log path");
  fz->add_flag("--serial", serial, "Run the serial reference path");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "modgrad: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*grad) {
      const HoloMap f = load_map(map_path, in);
      emit(out, to_json(mod_grad(f, parse_point(point, "--point"))));
      return kExitOk;
    }
    if (*bound) {
      const HoloMap f = load_map(map_path, in);
      const BoundReport rep = sp_bound(f, parse_point(point, "--point"), tol);
      emit(out, to_json(rep));
      return rep.holds ? kExitOk : kExitFinding;
    }
    if (*slice) {
      const DiskSlice s = disk_slice(parse_point(p_text, "--p"), parse_point(q_text, "--q"));
      emit(out, Json{{"c", complex_to_json(s.c)},
                     {"r", s.r},
                     {"p", cvector_to_json(s.p)},
                     {"q", cvector_to_json(s.q)}});
      return kExitOk;
    }
    if (*extremal) {
      ExtremalSpec spec;
      spec.kind = case_text == "zero" ? ExtremalCase::zero : ExtremalCase::nonzero;
      spec.p = parse_point(p_text, "--p");
      spec.u = parse_point(u_text, "--u");
      if (spec.kind == ExtremalCase::zero) {
        if (beta_text.empty()) throw UsageError("--beta: required for --case zero");
        spec.beta = parse_point(beta_text, "--beta");
      } else {
        if (a_text.empty()) throw UsageError("--a: required for --case nonzero");
        spec.a = parse_point(a_text, "--a");
        spec.theta = theta;
      }
      const std::string doc = emit_spec_text(extremal_map(spec));
      if (out_path.empty()) {
        out << doc << '\n';
      } else {
        std::ofstream f(out_path);
        if (!(f << doc << '\n')) throw UsageError("--out: cannot write '" + out_path + "'");
      }
      return kExitOk;
    }
    if (*diagnose) {
      const HoloMap f = load_map(map_path, in);
      const Diagnosis d = diagnose_equality_form(f, parse_point(p_text, "--p"),
                                                 parse_point(q_text, "--q"), samples, diag_tol);
      emit(out, to_json(d));
      return d.matches ? kExitOk : kExitFinding;
    }
    if (*fz) {
      std::unique_ptr<std::ofstream> log;
      if (!out_path.empty()) {
        log = std::make_unique<std::ofstream>(out_path);
        if (!*log) throw UsageError("--out: cannot open '" + out_path + "'");
      }
      const CampaignReport rep = fuzz_campaign(fuzz, log.get(), serial ? Exec::serial : Exec::parallel);
      emit(out, to_json(rep));
      return rep.violations.empty() ? kExitOk : kExitFinding;
    }
  } catch (const UsageError& e) {
    err << "modgrad: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    // Input, schema, domain, certification and precondition failures.
    err << "modgrad " << app.get_subcommands().front()->get_name() << ": " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace modgrad::cli
