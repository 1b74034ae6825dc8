#include "lts/io.hpp"

#include "lts/error.hpp"

#include <set>

namespace lts {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorKind::MalformedInput, what); }

void only_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) malformed(where + ": expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items())
    if (!ok.count(key)) malformed(where + ": unknown field '" + key + "'");
}

const Json& required(const Json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) malformed(where + ": missing field '" + std::string(key) + "'");
  return *it;
}

std::int64_t integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) malformed(where + ": expected an integer");
  return j.get<std::int64_t>();
}

std::int64_t positive(const Json& j, const std::string& where) {
  const auto v = integer(j, where);
  if (v <= 0) malformed(where + ": expected a positive integer");
  return v;
}

IntVec intvec(const Json& j, const std::string& where) {
  if (!j.is_array()) malformed(where + ": expected an array of integers");
  IntVec v;
  for (const auto& e : j) v.push_back(integer(e, where));
  return v;
}

Rational rational(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  malformed(where + ": expected an integer or a \"p/q\" string");
}

RootDatum datum_or_name(const Json& j, const std::string& where) {
  if (j.is_string()) {
    auto d = catalog_datum(j.get<std::string>());
    if (!d) malformed(where + ": unknown catalog group '" + j.get<std::string>() + "'");
    return *d;
  }
  return datum_from_json(j);
}

}  // namespace

RootDatum datum_from_json(const Json& j) {
  only_keys(j, {"rank", "simple_roots", "simple_coroots"}, "group");
  const auto rank = integer(required(j, "rank", "group"), "rank");
  if (rank < 0) malformed("rank: negative");
  std::vector<IntVec> roots, coroots;
  auto list = [](const Json& a, const char* name) {
    if (!a.is_array()) malformed(std::string(name) + ": expected an array");
    std::vector<IntVec> out;
    for (const auto& v : a) out.push_back(intvec(v, name));
    return out;
  };
  if (j.contains("simple_roots")) roots = list(j["simple_roots"], "simple_roots");
  if (j.contains("simple_coroots")) coroots = list(j["simple_coroots"], "simple_coroots");
  return build_root_datum(static_cast<std::size_t>(rank), roots, coroots);
}

Json datum_to_json(const RootDatum& d) {
  Json j;
  j["rank"] = d.rank();
  j["simple_roots"] = d.simple_roots();
  j["simple_coroots"] = d.simple_coroots();
  return j;
}

IntMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) malformed("theta: expected an array of rows");
  std::vector<IntVec> rows;
  for (const auto& r : j) rows.push_back(intvec(r, "theta"));
  for (const auto& r : rows)
    if (r.size() != rows.size()) malformed("theta: expected a square matrix");
  return IntMatrix::from_rows(rows, 0);
}

Json matrix_to_json(const IntMatrix& m) {
  Json j = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) j.push_back(m.row(i));
  return j;
}

RatVec ratvec_from_json(const Json& j) {
  if (!j.is_array()) malformed("expected an array of rationals");
  RatVec v;
  for (const auto& e : j) v.push_back(rational(e, "rational vector"));
  return v;
}

Json ratvec_to_json(const RatVec& v) {
  Json j = Json::array();
  for (const auto& q : v) j.push_back(to_string(q));
  return j;
}

Json gaussian_to_json(const GaussianRational& z) { return to_string(z); }

std::optional<TwistedComponent> catalog_component(const std::string& name) {
  if (name == "o2_twist") return component(*catalog_datum("gl1"), IntMatrix::from_rows({{-1}}));
  if (name == "a1a1_swap") return component(*catalog_datum("sl2xsl2"), IntMatrix::from_rows({{0, 1}, {1, 0}}));
  if (auto d = catalog_datum(name)) return untwisted_component(*d);
  return std::nullopt;
}

std::vector<std::string> catalog_component_names() {
  auto names = catalog_datum_names();
  names.push_back("o2_twist");
  names.push_back("a1a1_swap");
  return names;
}

TwistedComponent component_from_json(const Json& j) {
  if (j.is_string()) {
    auto c = catalog_component(j.get<std::string>());
    if (!c) malformed("unknown catalog group '" + j.get<std::string>() + "'");
    return *c;
  }
  if (j.is_object() && j.contains("group")) {
    only_keys(j, {"group", "theta"}, "component");
    const RootDatum d = datum_or_name(j["group"], "group");
    if (!j.contains("theta")) return untwisted_component(d);
    return component(d, matrix_from_json(j["theta"]));
  }
  return untwisted_component(datum_from_json(j));
}

Bits bits_from_string(const std::string& s, int width) {
  if (static_cast<int>(s.size()) != width) malformed("bit string '" + s + "' must have length " + std::to_string(width));
  Bits x = 0;
  for (int i = 0; i < width; ++i) {
    if (s[static_cast<std::size_t>(i)] == '1')
      x |= Bits{1} << i;
    else if (s[static_cast<std::size_t>(i)] != '0')
      malformed("bit string '" + s + "' must consist of 0 and 1");
  }
  return x;
}

std::string bits_to_string(Bits x, int width) {
  std::string s;
  for (int i = 0; i < width; ++i) s += (x >> i & 1) ? '1' : '0';
  return s;
}

ParameterModel model_from_json(const Json& j, int id) {
  if (j.is_string()) {
    auto m = catalog_model(j.get<std::string>(), id);
    if (!m) malformed("unknown catalog model '" + j.get<std::string>() + "'");
    return *m;
  }
  only_keys(j, {"sM_dim", "r_dim", "dual_group"}, "model");
  const auto a = integer(required(j, "sM_dim", "model"), "sM_dim");
  const auto b = integer(required(j, "r_dim", "model"), "r_dim");
  if (a < 0 || b < 0 || a + b > 8) malformed("model: 2-group dimensions out of range");
  ParameterModel m(id, static_cast<int>(a), static_cast<int>(b));
  if (j.contains("dual_group")) {
    const Json& dg = j["dual_group"];
    only_keys(dg, {"base", "thetas"}, "dual_group");
    const RootDatum base = datum_or_name(required(dg, "base", "dual_group"), "base");
    std::map<Bits, IntMatrix> thetas;
    if (dg.contains("thetas")) {
      if (!dg["thetas"].is_object()) malformed("thetas: expected an object keyed by bit strings");
      for (const auto& [key, value] : dg["thetas"].items())
        thetas[bits_from_string(key, static_cast<int>(a + b))] = matrix_from_json(value);
    }
    m.attach_dual_group(base, thetas);
  }
  return m;
}

namespace {

EndoscopicDescriptor descriptor_from_json(const Json& j, const DiscreteModelSet& ms) {
  only_keys(j,
            {"label", "model", "x", "class", "out_card", "out_phi_card", "zbar", "sprime", "splus_over_s_card",
             "s_phi_prime_card"},
            "descriptor");
  EndoscopicDescriptor d;
  const Json& label = required(j, "label", "descriptor");
  if (!label.is_string()) malformed("descriptor label: expected a string");
  d.label = label.get<std::string>();
  d.model = static_cast<int>(integer(required(j, "model", "descriptor"), "model"));
  if (d.model < 0 || static_cast<std::size_t>(d.model) >= ms.models.size()) malformed("descriptor: unknown model");
  const auto& m = ms.models[static_cast<std::size_t>(d.model)];
  if (!m.dual_group()) malformed("descriptor: model has no dual group");
  const Json& x = required(j, "x", "descriptor");
  if (!x.is_string()) malformed("descriptor x: expected a bit string");
  d.x = bits_from_string(x.get<std::string>(), m.s_m().dimension + m.r().dimension);
  d.class_index = static_cast<std::size_t>(integer(required(j, "class", "descriptor"), "class"));
  d.out_card = positive(required(j, "out_card", "descriptor"), "out_card");
  d.out_phi_card = positive(required(j, "out_phi_card", "descriptor"), "out_phi_card");
  d.splus_over_s_card = positive(required(j, "splus_over_s_card", "descriptor"), "splus_over_s_card");
  d.s_phi_prime_card = positive(required(j, "s_phi_prime_card", "descriptor"), "s_phi_prime_card");
  std::vector<RatVec> gens;
  if (j.contains("zbar")) {
    if (!j["zbar"].is_array()) malformed("zbar: expected an array of generators");
    for (const auto& g : j["zbar"]) gens.push_back(ratvec_from_json(g));
  }
  const std::size_t rank = m.dual_group()->base.rank();
  for (const auto& g : gens)
    if (g.size() != rank) malformed("zbar: generator length differs from the base rank");
  d.zbar = torus_subgroup(rank, gens);
  d.sprime_datum = datum_or_name(required(j, "sprime", "descriptor"), "sprime");
  return d;
}

}  // namespace

ModelFile model_file_from_json(const Json& j) {
  ModelFile f;
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    f.models.models.push_back(model_from_json(j, 0));
    if (name == "o2") f.descriptors = o2_descriptors(0);
    return f;
  }
  const Json* list = &j;
  Json single;
  if (j.is_object() && j.contains("models")) {
    only_keys(j, {"models", "descriptors"}, "model file");
    list = &j["models"];
  } else if (j.is_object()) {
    single = Json::array({j});
    list = &single;
  }
  if (!list->is_array()) malformed("models: expected an array");
  int id = 0;
  for (const auto& e : *list) f.models.models.push_back(model_from_json(e, id++));
  if (j.is_object() && j.contains("descriptors")) {
    if (!j["descriptors"].is_array()) malformed("descriptors: expected an array");
    std::vector<EndoscopicDescriptor> ds;
    for (const auto& e : j["descriptors"]) ds.push_back(descriptor_from_json(e, f.models));
    f.descriptors = std::move(ds);
  }
  return f;
}

Json class_to_json(const SemisimpleClass& s) {
  Json j;
  j["rep"] = ratvec_to_json(s.rep.coords);
  j["order"] = s.rep.order;
  j["pi0"] = s.pi0;
  j["centralizer"] = cartan_type(s.centralizer_datum);
  j["central"] = s.central;
  return j;
}

}  // namespace lts
