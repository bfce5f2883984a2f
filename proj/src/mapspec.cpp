#include "modgrad/mapspec.hpp"

#include <initializer_list>
#include <variant>

namespace modgrad {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void reject_unknown_fields(const Json& obj, std::initializer_list<const char*> allowed,
                           const std::string& path) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = key == "kind";
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw SchemaError(path + "/" + key, "unknown field");
  }
}

// Constructor validation failures are reported at the node's path.
template <class F>
HoloMap build_at(const std::string& path, F&& build) {
  try {
    return build();
  } catch (const SchemaError&) {
    throw;
  } catch (const InputError& e) {
    throw SchemaError(path, e.what());
  }
}

HoloMap parse_at(const Json& doc, const std::string& path) {
  if (!doc.is_object()) throw SchemaError(path, "expected an object");
  const Json& kind_j = require_member(doc, "kind", path);
  if (!kind_j.is_string()) throw SchemaError(path + "/kind", "expected a string");
  const auto kind = kind_j.get<std::string>();

  if (kind == "poly") {
    reject_unknown_fields(doc, {"n", "m", "terms"}, path);
    const int n = int_from_json(require_member(doc, "n", path), path + "/n");
    const int m = int_from_json(require_member(doc, "m", path), path + "/m");
    if (n < 1) throw SchemaError(path + "/n", "must be positive");
    if (m < 1) throw SchemaError(path + "/m", "must be positive");
    const Json& terms_j = require_member(doc, "terms", path);
    if (!terms_j.is_array()) throw SchemaError(path + "/terms", "expected an array");
    std::map<MultiIndex, CVector> terms;
    for (std::size_t t = 0; t < terms_j.size(); ++t) {
      const std::string tp = path + "/terms/" + std::to_string(t);
      const Json& term = terms_j[t];
      if (!term.is_object()) throw SchemaError(tp, "expected an object");
      for (const auto& [key, value] : term.items()) {
        if (key != "alpha" && key != "coef") throw SchemaError(tp + "/" + key, "unknown field");
      }
      const Json& alpha_j = require_member(term, "alpha", tp);
      if (!alpha_j.is_array() || int(alpha_j.size()) != n) {
        throw SchemaError(tp + "/alpha", "expected " + std::to_string(n) + " exponents");
      }
      MultiIndex alpha;
      for (std::size_t j = 0; j < alpha_j.size(); ++j) {
        const int e = int_from_json(alpha_j[j], tp + "/alpha/" + std::to_string(j));
        if (e < 0) throw SchemaError(tp + "/alpha/" + std::to_string(j), "negative exponent");
        alpha.push_back(e);
      }
      CVector coef = cvector_from_json(require_member(term, "coef", tp), tp + "/coef");
      if (int(coef.size()) != m) {
        throw SchemaError(tp + "/coef", "expected " + std::to_string(m) + " components");
      }
      if (!terms.emplace(std::move(alpha), std::move(coef)).second) {
        throw SchemaError(tp + "/alpha", "duplicate multi-index");
      }
    }
    return build_at(path, [&] { return HoloMap::poly(n, m, std::move(terms)); });
  }
  if (kind == "mobius_scalar") {
    reject_unknown_fields(doc, {"z0"}, path);
    const Complex z0 = complex_from_json(require_member(doc, "z0", path), path + "/z0");
    return build_at(path + "/z0", [&] { return HoloMap::mobius_scalar(z0); });
  }
  if (kind == "mobius_quotient") {
    reject_unknown_fields(doc, {"a_abs", "theta"}, path);
    const double a = real_from_json(require_member(doc, "a_abs", path), path + "/a_abs");
    const double theta = real_from_json(require_member(doc, "theta", path), path + "/theta");
    return build_at(path + "/a_abs", [&] { return HoloMap::mobius_quotient(a, theta); });
  }
  if (kind == "line_embed") {
    reject_unknown_fields(doc, {"p", "q"}, path);
    CVector p = cvector_from_json(require_member(doc, "p", path), path + "/p");
    CVector q = cvector_from_json(require_member(doc, "q", path), path + "/q");
    return build_at(path, [&] { return HoloMap::line_embed(std::move(p), std::move(q)); });
  }
  if (kind == "linear_functional") {
    reject_unknown_fields(doc, {"u"}, path);
    CVector u = cvector_from_json(require_member(doc, "u", path), path + "/u");
    return build_at(path, [&] { return HoloMap::linear_functional(std::move(u)); });
  }
  if (kind == "scalar_times_vector") {
    reject_unknown_fields(doc, {"beta"}, path);
    CVector beta = cvector_from_json(require_member(doc, "beta", path), path + "/beta");
    return build_at(path, [&] { return HoloMap::scalar_times_vector(std::move(beta)); });
  }
  if (kind == "affine_scalar") {
    reject_unknown_fields(doc, {"r", "c"}, path);
    const Complex r = complex_from_json(require_member(doc, "r", path), path + "/r");
    const Complex c = complex_from_json(require_member(doc, "c", path), path + "/c");
    return HoloMap::affine_scalar(r, c);
  }
  if (kind == "pipeline") {
    reject_unknown_fields(doc, {"stages"}, path);
    const Json& stages_j = require_member(doc, "stages", path);
    if (!stages_j.is_array() || stages_j.empty()) {
      throw SchemaError(path + "/stages", "expected a non-empty array");
    }
    std::vector<HoloMap> stages;
    for (std::size_t s = 0; s < stages_j.size(); ++s) {
      stages.push_back(parse_at(stages_j[s], path + "/stages/" + std::to_string(s)));
    }
    return build_at(path + "/stages", [&] { return HoloMap::pipeline(std::move(stages)); });
  }
  throw SchemaError(path + "/kind", "unknown kind '" + kind + "'");
}

}  // namespace

Json emit_spec(const HoloMap& f) {
  return std::visit(
      Overloaded{
          [](const node::Poly& p) {
            Json terms = Json::array();
            for (const auto& [alpha, coef] : p.terms) {
              terms.push_back(Json{{"alpha", alpha}, {"coef", cvector_to_json(coef)}});
            }
            return Json{{"kind", "poly"}, {"n", p.n}, {"m", p.m}, {"terms", terms}};
          },
          [](const node::MobiusScalar& g) {
            return Json{{"kind", "mobius_scalar"}, {"z0", complex_to_json(g.z0)}};
          },
          [](const node::MobiusQuotient& g) {
            return Json{{"kind", "mobius_quotient"}, {"a_abs", g.a_abs}, {"theta", g.theta}};
          },
          [](const node::LineEmbed& g) {
            return Json{{"kind", "line_embed"}, {"p", cvector_to_json(g.p)}, {"q", cvector_to_json(g.q)}};
          },
          [](const node::LinearFunctional& g) {
            return Json{{"kind", "linear_functional"}, {"u", cvector_to_json(g.u)}};
          },
          [](const node::ScalarTimesVector& g) {
            return Json{{"kind", "scalar_times_vector"}, {"beta", cvector_to_json(g.beta)}};
          },
          [](const node::AffineScalar& g) {
            return Json{{"kind", "affine_scalar"}, {"r", complex_to_json(g.r)}, {"c", complex_to_json(g.c)}};
          },
          [](const node::Pipeline& g) {
            Json stages = Json::array();
            for (const auto& s : g.stages) stages.push_back(emit_spec(s));
            return Json{{"kind", "pipeline"}, {"stages", stages}};
          },
      },
      f.node());
}

HoloMap parse_spec(const Json& doc) { return parse_at(doc, ""); }

std::string emit_spec_text(const HoloMap& f) { return emit_spec(f).dump(); }

HoloMap parse_spec_text(std::string_view text) {
  Json doc = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) throw SchemaError("", "malformed JSON");
  return parse_spec(doc);
}

}  // namespace modgrad
