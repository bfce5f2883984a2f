#pragma once

// JSON codecs shared by every serialized form. Complex scalars are always the
// two-element array [re, im]; vectors are arrays of those.

#include <string>

#include <json.hpp>

#include "modgrad/complex.hpp"
#include "modgrad/errors.hpp"

namespace modgrad {

using Json = nlohmann::json;

// Schema violation at a JSON-pointer-style location, e.g. "/stages/1/z0".
class SchemaError : public InputError {
 public:
  SchemaError(std::string path, const std::string& msg)
      : InputError((path.empty() ? std::string("/") : path) + ": " + msg), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

Json complex_to_json(Complex c);
Json cvector_to_json(const CVector& v);

Complex complex_from_json(const Json& j, const std::string& path);
CVector cvector_from_json(const Json& j, const std::string& path);
double real_from_json(const Json& j, const std::string& path);
int int_from_json(const Json& j, const std::string& path);

// Member lookup that reports the missing key's path.
const Json& require_member(const Json& obj, const char* key, const std::string& path);

}  // namespace modgrad
