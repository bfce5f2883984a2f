#pragma once

// MapSpec: the JSON description of a HoloMap.
//
//   {"kind":"poly","n":N,"m":M,"terms":[{"alpha":[..],"coef":[[re,im],..]},..]}
//   {"kind":"mobius_scalar","z0":[re,im]}
//   {"kind":"mobius_quotient","a_abs":x,"theta":t}
//   {"kind":"line_embed","p":[..],"q":[..]}
//   {"kind":"linear_functional","u":[..]}
//   {"kind":"scalar_times_vector","beta":[..]}
//   {"kind":"affine_scalar","r":[re,im],"c":[re,im]}
//   {"kind":"pipeline","stages":[spec, spec, ..]}
//
// Poly terms are emitted in lexicographic multi-index order; duplicate
// multi-indices are rejected on input. Doubles are written in shortest
// round-trip form, so parse(emit(f)) == f exactly.

#include <string>
#include <string_view>

#include "modgrad/holomap.hpp"
#include "modgrad/json_io.hpp"

namespace modgrad {

Json emit_spec(const HoloMap& f);
HoloMap parse_spec(const Json& doc);

std::string emit_spec_text(const HoloMap& f);
// Throws SchemaError (path "") on malformed JSON text.
HoloMap parse_spec_text(std::string_view text);

}  // namespace modgrad
