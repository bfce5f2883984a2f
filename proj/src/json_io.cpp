#include "modgrad/json_io.hpp"

#include <cmath>
#include <limits>

namespace modgrad {

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Json cvector_to_json(const CVector& v) {
  Json out = Json::array();
  for (const auto& c : v) out.push_back(complex_to_json(c));
  return out;
}

double real_from_json(const Json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaError(path, "non-finite number");
  return v;
}

int int_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) {
    const auto v = j.get<long long>();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
      throw SchemaError(path, "integer out of range");
    }
    return int(v);
  }
  throw SchemaError(path, "expected an integer");
}

Complex complex_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw SchemaError(path, "expected [re, im]");
  return {real_from_json(j[0], path + "/0"), real_from_json(j[1], path + "/1")};
}

CVector cvector_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw SchemaError(path, "expected a non-empty array of [re, im]");
  CVector out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(complex_from_json(j[i], path + "/" + std::to_string(i)));
  }
  return out;
}

const Json& require_member(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw SchemaError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + "/" + key, "missing field");
  return *it;
}

}  // namespace modgrad
