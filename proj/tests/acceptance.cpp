// One line per acceptance criterion; exit status 0 iff all pass.

#include "lts/cli.hpp"
#include "lts/io.hpp"
#include "lts/stabilize.hpp"
#include "oracles.hpp"

#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace lts;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

RootDatum cat(const std::string& name) { return *catalog_datum(name); }

Outcome ei_on_catalog() {
  Outcome o;
  SigmaTable table;
  for (const auto& name : catalog_component_names()) {
    const auto c = *catalog_component(name);
    const auto rep = verify_ei(c, table);
    o.require(rep.equal, name + ": e = " + to_string(rep.e) + ", i = " + to_string(rep.i));
    o.require(rep.i == oracle::i_number(c.base, c.theta), name + ": i differs from the Weyl-closure oracle");
  }
  o.detail = o.pass ? std::to_string(catalog_component_names().size()) + " components, i cross-checked by Weyl closure"
                    : o.detail;
  return o;
}

Outcome sigma_values() {
  Outcome o;
  SigmaTable t;
  auto s = [&](const char* n) { return sigma(cat(n), t); };
  o.require(s("trivial") == 1, "sigma(trivial)");
  o.require(s("gl1") == 0, "sigma(gl1)");
  o.require(s("gl2") == 0, "sigma(gl2)");
  o.require(s("sl2") == Rational(-1, 8), "sigma(sl2)");
  o.require(s("pgl2") == Rational(-1, 4), "sigma(pgl2)");
  o.require(s("sl2") == s("pgl2") / 2, "sigma(sl2) = sigma(pgl2)/2");
  o.require(s("sl3") == s("pgl3") / 3, "sigma(sl3) = sigma(pgl3)/3");
  o.require(s("sl2xsl2") == Rational(1, 64) && s("sl2xsl2") == s("sl2") * s("sl2"), "sigma(sl2xsl2)");
  const auto sl2 = cat("sl2");
  o.require(verify_central_quotient(sl2, make_central_subgroup(sl2, {{Rational(1, 2)}}), t).holds, "sl2 -> pgl2 quotient");
  const auto sl3 = cat("sl3");
  o.require(verify_central_quotient(sl3, make_central_subgroup(sl3, {{Rational(1, 3), Rational(2, 3)}}), t).holds,
            "sl3 -> pgl3 quotient");
  // All elliptic classes of these groups are central, so sigma = i / #classes.
  for (const char* n : {"trivial", "sl2", "pgl2", "sl3", "pgl3", "sl2xsl2"}) {
    const auto d = cat(n);
    const auto grid = oracle::elliptic_grid(d, 12);
    bool central = !grid.empty();
    for (const auto& c : grid) central = central && c.type == cartan_type(d) && c.pi0 == 1;
    o.require(central, std::string(n) + ": oracle finds a non-central elliptic class");
    if (!central) continue;
    const Rational expected = oracle::i_number(d, IntMatrix::identity(d.rank())) / static_cast<std::int64_t>(grid.size());
    o.require(sigma(d, t) == expected, std::string(n) + ": sigma differs from the brute-force value");
  }
  if (o.pass) o.detail = "sl2 -1/8, pgl2 -1/4, sl2xsl2 1/64, quotient and oracle checks";
  return o;
}

Outcome elliptic_grid() {
  Outcome o;
  std::size_t total = 0;
  for (const auto& name : catalog_datum_names()) {
    const auto d = cat(name);
    const auto expected = oracle::elliptic_grid(d, 27720);
    const auto got = elliptic_classes(untwisted_component(d));
    o.require(got.size() == expected.size(), name + ": class count");
    if (got.size() != expected.size()) continue;
    total += got.size();
    for (std::size_t k = 0; k < got.size(); ++k) {
      o.require(got[k].rep.coords == expected[k].rep, name + ": representative");
      o.require(got[k].pi0 == expected[k].pi0, name + ": pi0");
      o.require(cartan_type(got[k].centralizer_datum) == expected[k].type, name + ": centralizer type");
    }
  }
  if (o.pass) o.detail = std::to_string(catalog_datum_names().size()) + " data, " + std::to_string(total) + " classes, N = 27720";
  return o;
}

Outcome packet_algebra() {
  Outcome o;
  std::vector<ParameterModel> models;
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; a + b <= 4; ++b) models.emplace_back(static_cast<int>(models.size()), a, b);
  for (const auto& name : catalog_model_names()) models.push_back(*catalog_model(name, static_cast<int>(models.size())));
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 100; ++k) models.push_back(random_model(static_cast<int>(models.size()), rng));
  for (const auto& m : models) {
    if (m.s_order() > 16) continue;
    o.require(verify_adjoint(m), "adjoint relations, model " + std::to_string(m.id()));
    o.require(routes_agree(m), "closed forms, model " + std::to_string(m.id()));
  }
  DiscreteModelSet ms{models};
  for (int k = 0; k < 1000; ++k) {
    const auto& m = models[static_cast<std::size_t>(k) % models.size()];
    const auto f = random_vector(ms, rng);
    std::map<Tau, GaussianRational> theta;
    for (const auto& tau : m.taus()) theta[tau] = theta_transfer(m, tau, f);
    for (Bits x = 0; x < m.s_order(); ++x)
      o.require(invert_transfer(m, x, theta) == f.at(m.id(), x), "round trip, vector " + std::to_string(k));
  }
  if (o.pass) o.detail = std::to_string(models.size()) + " models, 1000 round-trip vectors";
  return o;
}

bool descriptor_fails(const ParameterModel& m, const SemisimpleClass& s, const EndoscopicDescriptor& d, SigmaTable& t) {
  return !verify_coefficients(m, s, d, t).pass();
}

Outcome stabilization_chain() {
  Outcome o;
  SigmaTable t;
  DiscreteModelSet o2{{*catalog_model("o2", 0)}};
  const auto o2d = o2_descriptors(0);
  const auto one = constant_vector(o2, GaussianRational{1, 0});
  const GaussianRational quarter{Rational(1, 4), 0};
  o.require(discrete_part(o2, one, one) == quarter && stable_form(o2, one, one, t) == quarter, "O(2) fixture 1/4");
  std::mt19937_64 rng(7);
  for (int k = 0; k < 20; ++k) {
    const auto f1 = random_vector(o2, rng), f2 = random_vector(o2, rng);
    const GaussianRational expected = quarter * f1.at(0, 1) * f2.at(0, 1).conj();
    o.require(discrete_part(o2, f1, f2) == expected, "O(2) discrete part");
    o.require(stable_form(o2, f1, f2, t) == expected, "O(2) stable form");
    o.require(endoscopic_form(o2, o2d, f1, f2, t) == expected, "O(2) endoscopic form");
  }
  int random_models = 0;
  for (int k = 0; k < 120; ++k) {
    DiscreteModelSet ms{{random_model(0, rng)}};
    const auto f1 = random_vector(ms, rng), f2 = random_vector(ms, rng);
    const auto dp = discrete_part(ms, f1, f2);
    o.require(dp == stable_form(ms, f1, f2, t), "random model " + std::to_string(k) + ": stable form");
    o.require(dp == endoscopic_form(ms, default_descriptors(ms), f1, f2, t),
              "random model " + std::to_string(k) + ": endoscopic form");
    ++random_models;
  }
  DiscreteModelSet catalog;
  for (const auto& name : catalog_model_names())
    catalog.models.push_back(*catalog_model(name, static_cast<int>(catalog.models.size())));
  const auto cds = default_descriptors(catalog);
  for (int k = 0; k < 10; ++k) {
    const auto f1 = random_vector(catalog, rng), f2 = random_vector(catalog, rng);
    o.require(endoscopic_form(catalog, cds, f1, f2, t) == discrete_part(catalog, f1, f2), "catalog endoscopic form");
  }
  o.require(verify_descriptor_set(catalog, cds).pass(), "catalog descriptor set");
  for (const auto& d : cds) {
    const auto& m = catalog.models[static_cast<std::size_t>(d.model)];
    const auto s = elliptic_classes(m.dual_group()->components[d.x]).at(d.class_index);
    o.require(verify_coefficients(m, s, d, t).pass(), "catalog coefficients " + d.label);
  }

  // Single-field negative controls on the O(2) descriptor.
  const auto& m = o2.models[0];
  const auto s = elliptic_classes(m.dual_group()->components[1])[0];
  o.require(verify_coefficients(m, s, o2d[0], t).pass(), "O(2) coefficients");
  auto d = o2d[0];
  d.zbar = make_central_subgroup(cat("gl1"), {{Rational(1, 3)}});
  o.require(descriptor_fails(m, s, d, t), "control zbar not detected");
  d = o2d[0];
  d.sprime_datum = cat("pgl2");
  o.require(descriptor_fails(m, s, d, t), "control sprime not detected");
  d = o2d[0];
  d.splus_over_s_card = 2;
  o.require(descriptor_fails(m, s, d, t), "control splus not detected");
  d = o2d[0];
  d.s_phi_prime_card = 2;
  o.require(descriptor_fails(m, s, d, t), "control s_phi_prime not detected");
  d = o2d[0];
  d.out_phi_card = 2;
  o.require(descriptor_fails(m, s, d, t), "control out_phi not detected");
  DiscreteModelSet sl2{{*catalog_model("sl2_sbar", 0)}};
  auto ds = default_descriptors(sl2);
  for (auto& e : ds) e.label = "H";
  o.require(verify_descriptor_set(sl2, ds).pass(), "shared-label descriptor set");
  ds[1].out_card = 2;
  ds[1].out_phi_card = 2;
  o.require(!verify_descriptor_set(sl2, ds).pass(), "control out_card not detected");
  if (o.pass) o.detail = "O(2) fixture, " + std::to_string(random_models) + " random models, 6 negative controls";
  return o;
}

Outcome coset_constancy() {
  Outcome o;
  std::vector<ParameterModel> models;
  for (const auto& name : catalog_model_names()) models.push_back(*catalog_model(name, 0));
  std::mt19937_64 rng(11);
  for (int k = 0; k < 100; ++k) models.push_back(random_model(0, rng));
  std::size_t checked = 0;
  for (const auto& m : models) {
    if (!m.dual_group()) continue;
    ++checked;
    for (Bits x = 0; x < m.s_order(); ++x)
      o.require(i_phi(m, x) == i_phi(m, m.compose(0, m.r_part(x))), "coset constancy");
  }
  if (o.pass) o.detail = std::to_string(checked) + " models";
  return o;
}

Outcome determinism() {
  Outcome o;
  auto once = [] {
    std::ostringstream out, err;
    const int code = cli_main({"stabilize", "verify", "--models", "mixed", "--seed", "42"}, out, err);
    return std::make_pair(code, out.str());
  };
  const auto a = once(), b = once();
  o.require(a.first == 0, "report does not pass");
  o.require(a.second == b.second, "reports differ");
  o.require(Json::parse(a.second).dump(2) + "\n" == a.second, "report does not round-trip");
  if (o.pass) o.detail = std::to_string(a.second.size()) + " bytes, identical";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"e = i on the catalog", ei_on_catalog},
      {"sigma values", sigma_values},
      {"elliptic classes match the torsion-grid oracle", elliptic_grid},
      {"packet algebra", packet_algebra},
      {"stabilization chain", stabilization_chain},
      {"coset constancy of i_phi", coset_constancy},
      {"stabilize verify --seed 42 is deterministic", determinism},
  };
  bool all = true;
  int k = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << ++k << "  " << name << "  (" << o.detail << ")" << std::endl;
  }
  return all ? 0 : 1;
}
