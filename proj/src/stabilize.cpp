#include "lts/stabilize.hpp"

#include "lts/error.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace lts {

namespace {

const DualGroupModel& dual_of(const ParameterModel& m) {
  if (!m.dual_group()) throw Error(ErrorKind::MissingDualGroup, "model " + std::to_string(m.id()) + " has no dual group");
  return *m.dual_group();
}

Rational card(std::int64_t n) { return Rational(n); }

GaussianRational pair_product(const TestVector& f1, const TestVector& f2, int model, Bits x) {
  return f1.at(model, x) * f2.at(model, x).conj();
}

GaussianRational scale(const Rational& c, const GaussianRational& z) { return GaussianRational{c, 0} * z; }

const ParameterModel& model_at(const DiscreteModelSet& ms, int id) {
  if (id < 0 || static_cast<std::size_t>(id) >= ms.models.size())
    throw Error(ErrorKind::InconsistentDescriptor, "descriptor refers to unknown model " + std::to_string(id));
  return ms.models[static_cast<std::size_t>(id)];
}

std::vector<SemisimpleClass> classes_of(const ParameterModel& m, Bits x) {
  return elliptic_classes(dual_of(m).components.at(x));
}

bool pairs_integrally(const std::vector<IntVec>& roots, const std::vector<RatVec>& gens) {
  for (const auto& g : gens)
    for (const auto& r : roots)
      if (boost::multiprecision::denominator(dot(r, g)) != 1) return false;
  return true;
}

Rational descriptor_weight(const ParameterModel& m, const EndoscopicDescriptor& d, SigmaTable& table) {
  const Rational n1 = card(m.s_order()) / card(d.splus_over_s_card);
  const Rational n2 = card(d.out_card) / card(d.out_phi_card);
  return n2 / n1 * iota_coefficient(d.out_card, d.zbar.order) * sigma(d.sprime_datum, table) /
         card(d.s_phi_prime_card);
}

}  // namespace

bool in_phi_disc(const ParameterModel& m) {
  const auto& dual = dual_of(m);
  const std::size_t n = dual.base.rank();
  std::vector<IntVec> rows = dual.base.simple_roots();
  const IntMatrix id = IntMatrix::identity(n);
  for (const auto& c : dual.components) {
    const IntMatrix diff = c.theta - id;
    for (std::size_t i = 0; i < n; ++i) rows.push_back(diff.row(i));
  }
  return rank_of_rows(rows, n) == n;
}

bool in_phi_s_disc(const ParameterModel& m) { return dual_of(m).base.central_rank() == 0; }

std::vector<Bits> disc_elements(const ParameterModel& m) {
  const auto& dual = dual_of(m);
  std::vector<Bits> out;
  for (Bits x = 0; x < m.s_order(); ++x) {
    const auto set = weyl_set(dual.components[x]);
    if (std::any_of(set.begin(), set.end(), [](const CosetElement& e) { return e.regular; })) out.push_back(x);
  }
  return out;
}

Rational i_phi(const ParameterModel& m, Bits x) {
  const auto& dual = dual_of(m);
  const auto disc = disc_elements(m);
  if (!std::binary_search(disc.begin(), disc.end(), x)) return 0;
  return i_number(dual.components.at(x));
}

Rational e_phi(const ParameterModel& m, Bits x, SigmaTable& table) {
  Rational e = 0;
  for (const auto& s : classes_of(m, x)) e += sigma(s.centralizer_datum, table) / card(s.pi0);
  return e;
}

GaussianRational discrete_part(const DiscreteModelSet& ms, const TestVector& f1, const TestVector& f2) {
  GaussianRational total;
  for (const auto& m : ms.models) {
    const auto disc = disc_elements(m);
    std::map<Bits, Rational> i_values;
    for (auto x : disc) i_values[x] = i_number(dual_of(m).components[x]);
    for (const auto& tau : m.taus()) {
      auto it = i_values.find(m.iota(tau));
      if (it == i_values.end() || it->second == 0) continue;
      const GaussianRational t1 = theta_transfer(m, tau, f1);
      const GaussianRational t2 = theta_transfer(m, tau, f2);
      total += scale(it->second / card(m.r_order()), t1 * t2.conj());
    }
  }
  return total;
}

GaussianRational stable_form(const DiscreteModelSet& ms, const TestVector& f1, const TestVector& f2,
                             SigmaTable& table) {
  GaussianRational total;
  for (const auto& m : ms.models)
    for (Bits x = 0; x < m.s_order(); ++x)
      for (const auto& s : classes_of(m, x)) {
        const Rational c = sigma(s.centralizer_datum, table) / (card(m.s_order()) * card(s.pi0));
        total += scale(c, pair_product(f1, f2, m.id(), x));
      }
  return total;
}

Rational iota_coefficient(std::int64_t out_card, std::int64_t zbar_card) {
  return Rational(1) / (card(out_card) * card(zbar_card));
}

bool CoefficientReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CoefficientCheck& c) { return c.pass; });
}

CoefficientReport verify_coefficients(const ParameterModel& m, const SemisimpleClass& s,
                                      const EndoscopicDescriptor& d, SigmaTable& table) {
  CoefficientReport r;
  auto add = [&r](std::string name, Rational lhs, Rational rhs) {
    const bool ok = lhs == rhs;
    r.checks.push_back({std::move(name), std::move(lhs), std::move(rhs), ok});
  };
  const bool positive = d.out_card > 0 && d.out_phi_card > 0 && d.splus_over_s_card > 0 && d.s_phi_prime_card > 0 &&
                        d.zbar.order > 0;
  add("positive cardinalities", positive ? 1 : 0, 1);
  if (!positive) return r;
  add("zbar central in centralizer", pairs_integrally(s.ambient_roots, d.zbar.generators) ? 1 : 0, 1);

  std::int64_t inter = 0;
  for (const auto& z : d.zbar.elements)
    if (in_centralizer_torus(s, z)) ++inter;
  const Rational sigma_s = sigma(s.centralizer_datum, table);
  const Rational sigma_prime = sigma(d.sprime_datum, table);
  const Rational out = card(d.out_card), out_phi = card(d.out_phi_card), splus = card(d.splus_over_s_card);
  const Rational zbar = card(d.zbar.order), sp = card(d.s_phi_prime_card), pi0 = card(s.pi0);

  add("(a) sigma(S'°) = sigma(S_s°)|S_s° n Zbar|", sigma_prime, sigma_s * card(inter));
  add("(b) |Out|^-1 |Out_phi| |S+/S|^-1 |pi0|^-1 sigma = |Out|^-1 |Zbar|^-1 |S'|^-1 sigma'",
      out_phi / (out * splus * pi0) * sigma_s, sigma_prime / (out * zbar * sp));
  add("(c) |Out_phi| |S'| |Zbar| = |S+/S| |pi0| |S_s° n Zbar|", out_phi * sp * zbar, splus * pi0 * card(inter));
  add("(d) |Out_phi| divides |Out|", card(d.out_card % d.out_phi_card), 0);
  add("(d) |S+/S| divides |S_phi|", card(static_cast<std::int64_t>(m.s_order()) % d.splus_over_s_card), 0);
  return r;
}

CoefficientReport verify_descriptor_set(const DiscreteModelSet& ms, const std::vector<EndoscopicDescriptor>& ds) {
  CoefficientReport r;
  std::map<std::tuple<int, Bits, std::size_t>, int> seen;
  std::int64_t invalid = 0;
  for (const auto& d : ds) {
    if (d.model < 0 || static_cast<std::size_t>(d.model) >= ms.models.size() ||
        d.x >= ms.models[static_cast<std::size_t>(d.model)].s_order()) {
      ++invalid;
      continue;
    }
    ++seen[{d.model, d.x, d.class_index}];
  }
  std::int64_t expected = 0, covered = 0;
  for (const auto& m : ms.models)
    for (Bits x = 0; x < m.s_order(); ++x) {
      const auto n = classes_of(m, x).size();
      expected += static_cast<std::int64_t>(n);
      for (std::size_t k = 0; k < n; ++k) {
        auto it = seen.find({m.id(), x, k});
        if (it != seen.end() && it->second == 1) ++covered;
      }
    }
  r.checks.push_back({"descriptor references valid", Rational(invalid), 0, invalid == 0});
  r.checks.push_back({"one descriptor per elliptic class", Rational(covered), Rational(expected),
                      covered == expected && static_cast<std::int64_t>(ds.size()) == expected});
  std::map<std::string, std::pair<std::int64_t, std::int64_t>> by_label;
  std::int64_t conflicts = 0;
  for (const auto& d : ds) {
    auto [it, fresh] = by_label.emplace(d.label, std::make_pair(d.out_card, d.zbar.order));
    if (!fresh && it->second != std::make_pair(d.out_card, d.zbar.order)) ++conflicts;
  }
  r.checks.push_back({"(d) out_card and |Zbar| constant on each label", Rational(conflicts), 0, conflicts == 0});
  return r;
}

namespace {

void require_consistent(const DiscreteModelSet& ms, const std::vector<EndoscopicDescriptor>& ds, SigmaTable& table) {
  std::string failures;
  for (const auto& c : verify_descriptor_set(ms, ds).checks)
    if (!c.pass) failures += " " + c.name + ";";
  if (!failures.empty()) throw Error(ErrorKind::InconsistentDescriptor, "descriptor set:" + failures);
  for (const auto& d : ds) {
    const auto& m = model_at(ms, d.model);
    const auto classes = classes_of(m, d.x);
    for (const auto& c : verify_coefficients(m, classes.at(d.class_index), d, table).checks)
      if (!c.pass) failures += " " + c.name + ";";
    if (!failures.empty())
      throw Error(ErrorKind::InconsistentDescriptor,
                  "descriptor " + d.label + " (model " + std::to_string(d.model) + "):" + failures);
  }
}

GaussianRational labelled_sum(const DiscreteModelSet& ms, const std::vector<EndoscopicDescriptor>& ds,
                              const TestVector& f1, const TestVector& f2, SigmaTable& table, bool principal_only) {
  // Grouped by label so each endoscopic datum contributes iota(G, G') times its stable sum.
  std::map<std::string, GaussianRational> by_label;
  for (const auto& d : ds) {
    if (principal_only && d.label != "G") continue;
    const auto& m = model_at(ms, d.model);
    by_label[d.label] += scale(descriptor_weight(m, d, table), pair_product(f1, f2, d.model, d.x));
  }
  GaussianRational total;
  for (const auto& [label, value] : by_label) total += value;
  return total;
}

}  // namespace

GaussianRational endoscopic_form(const DiscreteModelSet& ms, const std::vector<EndoscopicDescriptor>& ds,
                                 const TestVector& f1, const TestVector& f2, SigmaTable& table) {
  require_consistent(ms, ds, table);
  return labelled_sum(ms, ds, f1, f2, table, false);
}

GaussianRational principal_terms(const DiscreteModelSet& ms, const std::vector<EndoscopicDescriptor>& ds,
                                 const TestVector& f1, const TestVector& f2, SigmaTable& table) {
  return labelled_sum(ms, ds, f1, f2, table, true);
}

GaussianRational s_disc(const DiscreteModelSet& ms, const TestVector& f1, const TestVector& f2, SigmaTable& table) {
  GaussianRational total;
  for (const auto& m : ms.models) {
    if (!in_phi_s_disc(m)) continue;
    const Rational c = sigma(dual_of(m).base, table) / card(m.s_order());
    total += scale(c, pair_product(f1, f2, m.id(), 0));
  }
  return total;
}

std::vector<EndoscopicDescriptor> default_descriptors(const DiscreteModelSet& ms) {
  std::vector<EndoscopicDescriptor> out;
  for (const auto& m : ms.models) {
    const bool semisimple = in_phi_s_disc(m);
    for (Bits x = 0; x < m.s_order(); ++x) {
      const auto classes = classes_of(m, x);
      for (std::size_t k = 0; k < classes.size(); ++k) {
        const auto& s = classes[k];
        EndoscopicDescriptor d;
        const bool identity = x == 0 && std::all_of(s.rep.coords.begin(), s.rep.coords.end(),
                                                    [](const Rational& q) { return q == 0; });
        d.label = semisimple && identity ? "G"
                                         : "m" + std::to_string(m.id()) + ".x" + std::to_string(x) + ".s" +
                                               std::to_string(k);
        d.model = m.id();
        d.x = x;
        d.class_index = k;
        d.zbar = torus_subgroup(dual_of(m).base.rank(), {});
        d.sprime_datum = s.centralizer_datum;
        d.splus_over_s_card = m.s_order();
        d.s_phi_prime_card = static_cast<std::int64_t>(m.s_order()) * s.pi0;
        out.push_back(std::move(d));
      }
    }
  }
  return out;
}

std::optional<ParameterModel> catalog_model(const std::string& name, int id) {
  auto dat = [](const char* n) { return *catalog_datum(n); };
  if (name == "trivial") {
    ParameterModel m(id, 0, 0);
    m.attach_dual_group(dat("trivial"), {});
    return m;
  }
  if (name == "o2") {
    ParameterModel m(id, 0, 1);
    m.attach_dual_group(dat("gl1"), {{1, IntMatrix::from_rows({{-1}})}});
    return m;
  }
  if (name == "sl2_sbar") {
    ParameterModel m(id, 1, 0);
    m.attach_dual_group(dat("sl2"), {});
    return m;
  }
  if (name == "a1a1_swap") {
    ParameterModel m(id, 0, 1);
    m.attach_dual_group(dat("sl2xsl2"), {{1, IntMatrix::from_rows({{0, 1}, {1, 0}})}});
    return m;
  }
  if (name == "mixed") {
    ParameterModel m(id, 1, 1);
    m.attach_dual_group(product(dat("pgl2"), dat("gl1")),
                        {{1, IntMatrix::from_rows({{-1, 0}, {0, 1}})}, {2, IntMatrix::from_rows({{1, 0}, {0, -1}})}});
    return m;
  }
  return std::nullopt;
}

std::vector<std::string> catalog_model_names() { return {"trivial", "o2", "sl2_sbar", "a1a1_swap", "mixed"}; }

std::vector<EndoscopicDescriptor> o2_descriptors(int model_id) {
  EndoscopicDescriptor d;
  d.label = "G'";
  d.model = model_id;
  d.x = 1;
  d.class_index = 0;
  d.out_card = 1;
  d.out_phi_card = 1;
  d.zbar = make_central_subgroup(*catalog_datum("gl1"), {{Rational(1, 2)}});
  d.sprime_datum = *catalog_datum("trivial");
  d.splus_over_s_card = 1;
  d.s_phi_prime_card = 1;
  return {d};
}

namespace {

struct Piece {
  const char* name;
  IntMatrix twist;
};

std::vector<Piece> twistable_pieces() {
  return {{"trivial", IntMatrix(0, 0)},
          {"sl2", IntMatrix::from_rows({{-1}})},
          {"pgl2", IntMatrix::from_rows({{1}})},
          {"gl1", IntMatrix::from_rows({{-1}})},
          {"sl2xsl2", IntMatrix::from_rows({{0, 1}, {1, 0}})},
          {"t2", IntMatrix::from_rows({{-1, 0}, {0, -1}})},
          {"sl3", IntMatrix::identity(2)}};
}

}  // namespace

ParameterModel random_model(int id, std::mt19937_64& rng) {
  const int a = static_cast<int>(rng() % 3);
  const int b = static_cast<int>(rng() % 3);
  const auto pieces = twistable_pieces();
  const std::size_t count = 1 + rng() % 2;
  RootDatum base = *catalog_datum("trivial");
  std::vector<std::pair<std::size_t, IntMatrix>> placed;  // offset, twist
  std::vector<int> bits;
  for (std::size_t k = 0; k < count; ++k) {
    const auto& kind = pieces[rng() % pieces.size()];
    const RootDatum piece = std::string(kind.name) == "t2" ? build_root_datum(2, {}, {}) : *catalog_datum(kind.name);
    placed.emplace_back(base.rank(), kind.twist);
    base = product(base, piece);
    bits.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(b + 1)));  // b means untwisted
  }
  std::map<Bits, IntMatrix> thetas;
  const std::size_t n = base.rank();
  for (int j = 0; j < b; ++j) {
    IntMatrix t = IntMatrix::identity(n);
    for (std::size_t k = 0; k < placed.size(); ++k) {
      if (bits[k] != j) continue;
      const auto& [offset, twist] = placed[k];
      for (std::size_t r = 0; r < twist.rows(); ++r)
        for (std::size_t c = 0; c < twist.cols(); ++c) t(offset + r, offset + c) = twist(r, c);
    }
    thetas[Bits{1} << (a + j)] = t;
  }
  const auto w = weyl_group(base);
  for (int j = 0; j < a; ++j) thetas[Bits{1} << j] = w[rng() % w.size()].matrix;
  ParameterModel m(id, a, b);
  m.attach_dual_group(base, thetas);
  return m;
}

GaussianRational random_gaussian(std::mt19937_64& rng) {
  auto q = [&rng] {
    const auto num = static_cast<std::int64_t>(rng() % 41) - 20;
    const auto den = static_cast<std::int64_t>(rng() % 9) + 1;
    return Rational(num, den);
  };
  Rational re = q();
  Rational im = q();
  return {re, im};
}

TestVector random_vector(const DiscreteModelSet& ms, std::mt19937_64& rng) {
  TestVector f;
  for (const auto& m : ms.models)
    for (Bits x = 0; x < m.s_order(); ++x) f.set(m.id(), x, random_gaussian(rng));
  return f;
}

TestVector constant_vector(const DiscreteModelSet& ms, GaussianRational value) {
  TestVector f;
  for (const auto& m : ms.models)
    for (Bits x = 0; x < m.s_order(); ++x) f.set(m.id(), x, value);
  return f;
}

}  // namespace lts
