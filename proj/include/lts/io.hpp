#pragma once

// JSON encodings. Parsing is strict: unknown keys and non-integral lattice
// entries raise MalformedInput.

#include "lts/stabilize.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace lts {

using Json = nlohmann::ordered_json;

RootDatum datum_from_json(const Json& j);
Json datum_to_json(const RootDatum& d);
IntMatrix matrix_from_json(const Json& j);
Json matrix_to_json(const IntMatrix& m);
RatVec ratvec_from_json(const Json& j);
Json ratvec_to_json(const RatVec& v);
Json gaussian_to_json(const GaussianRational& z);

// {"group": datum, "theta": matrix} or a bare datum. A string names a
// catalog group (including o2_twist and a1a1_swap).
TwistedComponent component_from_json(const Json& j);
std::optional<TwistedComponent> catalog_component(const std::string& name);
std::vector<std::string> catalog_component_names();

// {"sM_dim": a, "r_dim": b, "dual_group": {"base": datum|name, "thetas": {"<bits>": matrix}}}
// Bit strings list S_M bits first.
ParameterModel model_from_json(const Json& j, int id);
Bits bits_from_string(const std::string& s, int width);
std::string bits_to_string(Bits x, int width);

struct ModelFile {
  DiscreteModelSet models;
  std::optional<std::vector<EndoscopicDescriptor>> descriptors;
};

// A model object, an array of them, {"models": [...], "descriptors": [...]},
// or a catalog model name (string); array entries may also be names.
ModelFile model_file_from_json(const Json& j);

Json class_to_json(const SemisimpleClass& s);

}  // namespace lts
