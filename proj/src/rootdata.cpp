#include "lts/rootdata.hpp"

#include "lts/error.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace lts {

namespace {

IntVec scaled_sub(const IntVec& v, std::int64_t k, const IntVec& w) {
  IntVec r(v);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = checked_add(r[i], -checked_mul(k, w[i]));
  return r;
}

std::string vec_string(const IntVec& v) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << ')';
  return out.str();
}

// Root-length classes of a connected Dynkin component: returns, per node of
// `nodes`, true when the node is a short root (only meaningful for non-simply-laced).
std::vector<int> relative_lengths(const IntMatrix& c, const std::vector<std::size_t>& nodes) {
  // length^2 of node, up to a common factor, propagated along edges:
  // C(i,j)/C(j,i) = |alpha_j|^2 / |alpha_i|^2.
  std::vector<int> len(nodes.size(), 0);
  len[0] = 6;
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t a = queue.front();
    queue.pop_front();
    for (std::size_t b = 0; b < nodes.size(); ++b) {
      if (len[b] != 0 || c(nodes[a], nodes[b]) == 0) continue;
      len[b] = static_cast<int>(len[a] * c(nodes[a], nodes[b]) / c(nodes[b], nodes[a]));
      queue.push_back(b);
    }
  }
  return len;
}

SimpleType classify_component(const IntMatrix& c, const std::vector<std::size_t>& nodes) {
  const std::size_t m = nodes.size();
  if (m == 1) return {'A', 1};
  std::vector<int> degree(m, 0);
  std::size_t edges = 0;
  int doubles = 0;
  int triples = 0;
  std::size_t double_a = 0, double_b = 0;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      const std::int64_t mult = c(nodes[a], nodes[b]) * c(nodes[b], nodes[a]);
      if (mult == 0) continue;
      if (mult > 3) throw Error(ErrorKind::InfiniteType, "Cartan matrix has a bond of multiplicity >= 4");
      ++edges;
      ++degree[a];
      ++degree[b];
      if (mult == 2) {
        ++doubles;
        double_a = a;
        double_b = b;
      }
      if (mult == 3) ++triples;
    }
  if (edges != m - 1) throw Error(ErrorKind::InfiniteType, "Dynkin diagram contains a cycle");
  const int max_degree = *std::max_element(degree.begin(), degree.end());
  if (triples > 0) {
    if (m == 2) return {'G', 2};
    throw Error(ErrorKind::InfiniteType, "triple bond in a diagram with more than two nodes");
  }
  if (doubles > 1) throw Error(ErrorKind::InfiniteType, "more than one double bond");
  if (doubles == 1) {
    if (max_degree > 2) throw Error(ErrorKind::InfiniteType, "branched diagram with a double bond");
    if (m == 2) return {'B', 2};
    const bool a_end = degree[double_a] == 1;
    const bool b_end = degree[double_b] == 1;
    if (!a_end && !b_end) {
      if (m == 4) return {'F', 4};
      throw Error(ErrorKind::InfiniteType, "interior double bond outside F4");
    }
    const std::size_t end = a_end ? double_a : double_b;
    const auto len = relative_lengths(c, nodes);
    const int min_len = *std::min_element(len.begin(), len.end());
    return {len[end] == min_len ? 'B' : 'C', static_cast<int>(m)};
  }
  if (max_degree <= 2) return {'A', static_cast<int>(m)};
  if (max_degree > 3) throw Error(ErrorKind::InfiniteType, "node of degree > 3");
  std::size_t branch = m;
  for (std::size_t a = 0; a < m; ++a) {
    if (degree[a] == 3) {
      if (branch != m) throw Error(ErrorKind::InfiniteType, "two branch nodes");
      branch = a;
    }
  }
  // Arm lengths from the branch node.
  std::vector<int> arms;
  for (std::size_t start = 0; start < m; ++start) {
    if (start == branch || c(nodes[branch], nodes[start]) == 0) continue;
    int len = 1;
    std::size_t prev = branch, cur = start;
    for (;;) {
      std::size_t next = m;
      for (std::size_t b = 0; b < m; ++b)
        if (b != prev && b != cur && c(nodes[cur], nodes[b]) != 0) next = b;
      if (next == m) break;
      prev = cur;
      cur = next;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) return {'D', static_cast<int>(m)};
  if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) return {'E', static_cast<int>(m)};
  throw Error(ErrorKind::InfiniteType, "branched diagram of non-finite type");
}

std::vector<std::vector<std::size_t>> dynkin_components(const IntMatrix& c) {
  const std::size_t l = c.rows();
  std::vector<int> seen(l, 0);
  std::vector<std::vector<std::size_t>> comps;
  for (std::size_t s = 0; s < l; ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp{s};
    seen[s] = 1;
    for (std::size_t k = 0; k < comp.size(); ++k)
      for (std::size_t b = 0; b < l; ++b)
        if (!seen[b] && c(comp[k], b) != 0) {
          seen[b] = 1;
          comp.push_back(b);
        }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

std::int64_t factorial(std::int64_t n) {
  std::int64_t f = 1;
  for (std::int64_t k = 2; k <= n; ++k) f *= k;
  return f;
}

std::int64_t simple_weyl_order(const SimpleType& t) {
  switch (t.letter) {
    case 'A': return factorial(t.rank + 1);
    case 'B':
    case 'C': return (std::int64_t{1} << t.rank) * factorial(t.rank);
    case 'D': return (std::int64_t{1} << (t.rank - 1)) * factorial(t.rank);
    case 'E': return t.rank == 6 ? 51840 : t.rank == 7 ? 2903040 : 696729600;
    case 'F': return 1152;
    case 'G': return 12;
  }
  return 1;
}

}  // namespace

std::vector<SimpleType> classify_cartan(const IntMatrix& cartan) {
  std::vector<SimpleType> types;
  for (const auto& comp : dynkin_components(cartan)) types.push_back(classify_component(cartan, comp));
  std::sort(types.begin(), types.end());
  return types;
}

RootDatum build_root_datum(std::size_t rank, const std::vector<IntVec>& simple_roots,
                           const std::vector<IntVec>& simple_coroots) {
  const std::size_t l = simple_roots.size();
  if (simple_coroots.size() != l) throw Error(ErrorKind::NonCartan, "different numbers of simple roots and coroots");
  if (l > rank) throw Error(ErrorKind::NonCartan, "more simple roots than the rank");
  for (const auto& v : simple_roots)
    if (v.size() != rank) throw Error(ErrorKind::NonCartan, "simple root " + vec_string(v) + " has wrong length");
  for (const auto& v : simple_coroots)
    if (v.size() != rank) throw Error(ErrorKind::NonCartan, "simple coroot " + vec_string(v) + " has wrong length");

  IntMatrix cartan(l, l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) cartan(i, j) = dot(simple_roots[j], simple_coroots[i]);
  for (std::size_t i = 0; i < l; ++i) {
    if (cartan(i, i) != 2) throw Error(ErrorKind::NonCartan, "<alpha_i, alpha_i^vee> != 2");
    for (std::size_t j = 0; j < l; ++j) {
      if (i == j) continue;
      if (cartan(i, j) > 0) throw Error(ErrorKind::NonCartan, "positive off-diagonal Cartan entry");
      if ((cartan(i, j) == 0) != (cartan(j, i) == 0))
        throw Error(ErrorKind::NonCartan, "Cartan matrix zero pattern is not symmetric");
    }
  }
  if (rank_of_rows(simple_roots, rank) != l || rank_of_rows(simple_coroots, rank) != l)
    throw Error(ErrorKind::NonCartan, "simple roots or coroots are linearly dependent");
  classify_cartan(cartan);  // throws InfiniteType

  RootDatum d;
  d.rank_ = rank;
  d.simple_roots_ = simple_roots;
  d.simple_coroots_ = simple_coroots;

  struct Entry {
    IntVec root, coroot, coeff;
  };
  std::vector<Entry> found;
  std::map<IntVec, std::size_t> index;
  for (std::size_t i = 0; i < l; ++i) {
    IntVec coeff(l, 0);
    coeff[i] = 1;
    if (index.count(simple_roots[i])) throw Error(ErrorKind::NonCartan, "repeated simple root");
    index[simple_roots[i]] = found.size();
    found.push_back({simple_roots[i], simple_coroots[i], coeff});
  }
  const std::size_t bound = 2 * l * l + 240;
  for (std::size_t k = 0; k < found.size(); ++k) {
    for (std::size_t i = 0; i < l; ++i) {
      const Entry e = found[k];
      const std::int64_t p = dot(e.root, simple_coroots[i]);
      if (p == 0) continue;
      IntVec r = scaled_sub(e.root, p, simple_roots[i]);
      IntVec c = scaled_sub(e.coroot, dot(simple_roots[i], e.coroot), simple_coroots[i]);
      IntVec coeff = e.coeff;
      coeff[i] -= p;
      auto it = index.find(r);
      if (it != index.end()) {
        if (found[it->second].coroot != c) throw Error(ErrorKind::NonCartan, "root/coroot bijection is inconsistent");
        continue;
      }
      index[r] = found.size();
      found.push_back({std::move(r), std::move(c), std::move(coeff)});
      if (found.size() > bound) throw Error(ErrorKind::InfiniteType, "reflection closure exceeds the finite-type bound");
    }
  }
  std::sort(found.begin(), found.end(), [](const Entry& a, const Entry& b) { return a.root < b.root; });
  for (const auto& e : found) {
    d.root_lookup_[e.root] = d.roots_.size();
    d.coroot_lookup_[e.coroot] = d.roots_.size();
    d.roots_.push_back(e.root);
    d.coroots_.push_back(e.coroot);
    d.coefficients_.push_back(e.coeff);
    const auto nz = std::find_if(e.coeff.begin(), e.coeff.end(), [](std::int64_t x) { return x != 0; });
    d.positive_.push_back(*nz > 0);
  }
  return d;
}

std::optional<std::size_t> RootDatum::root_index(const IntVec& root) const {
  auto it = root_lookup_.find(root);
  if (it == root_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> RootDatum::coroot_index(const IntVec& coroot) const {
  auto it = coroot_lookup_.find(coroot);
  if (it == coroot_lookup_.end()) return std::nullopt;
  return it->second;
}

IntMatrix RootDatum::cartan_matrix() const {
  const std::size_t l = simple_roots_.size();
  IntMatrix c(l, l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) c(i, j) = dot(simple_roots_[j], simple_coroots_[i]);
  return c;
}

IntMatrix RootDatum::coroot_reflection(std::size_t k) const {
  IntMatrix m = IntMatrix::identity(rank_);
  const IntVec& a = roots_[k];
  const IntVec& c = coroots_[k];
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = 0; j < rank_; ++j) m(i, j) -= c[i] * a[j];
  return m;
}

namespace {

IntMatrix simple_reflection(const RootDatum& d, std::size_t i) {
  IntMatrix m = IntMatrix::identity(d.rank());
  const IntVec& a = d.simple_roots()[i];
  const IntVec& c = d.simple_coroots()[i];
  for (std::size_t r = 0; r < d.rank(); ++r)
    for (std::size_t s = 0; s < d.rank(); ++s) m(r, s) -= c[r] * a[s];
  return m;
}

}  // namespace

std::vector<WeylElement> weyl_group(const RootDatum& d) {
  std::vector<IntMatrix> gens;
  for (std::size_t i = 0; i < d.semisimple_rank(); ++i) gens.push_back(simple_reflection(d, i));
  std::vector<WeylElement> elems{{IntMatrix::identity(d.rank()), {}}};
  std::set<IntMatrix> seen{elems.front().matrix};
  for (std::size_t k = 0; k < elems.size(); ++k) {
    for (std::size_t i = 0; i < gens.size(); ++i) {
      IntMatrix m = elems[k].matrix * gens[i];
      if (!seen.insert(m).second) continue;
      std::vector<int> word = elems[k].word;
      word.push_back(static_cast<int>(i));
      elems.push_back({std::move(m), std::move(word)});
    }
  }
  std::stable_sort(elems.begin(), elems.end(), [](const WeylElement& a, const WeylElement& b) {
    if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
    return a.matrix < b.matrix;
  });
  return elems;
}

IntMatrix character_action(const IntMatrix& cocharacter_matrix) {
  auto inv = integer_inverse(cocharacter_matrix);
  if (!inv) throw Error(ErrorKind::NotAutomorphism, "matrix is not invertible over the integers");
  return inv->transpose();
}

std::string cartan_type(const RootDatum& d) {
  std::string out;
  for (const auto& t : classify_cartan(d.cartan_matrix())) {
    if (!out.empty()) out += "x";
    out += t.letter + std::to_string(t.rank);
  }
  if (d.central_rank() > 0 || d.rank() == 0) {
    if (!out.empty()) out += "x";
    out += "T" + std::to_string(d.central_rank());
  }
  return out;
}

std::int64_t weyl_group_order(const RootDatum& d) {
  std::int64_t order = 1;
  for (const auto& t : classify_cartan(d.cartan_matrix())) order *= simple_weyl_order(t);
  return order;
}

CentralSubgroup torus_subgroup(std::size_t rank, const std::vector<RatVec>& generators) {
  CentralSubgroup z;
  z.generators = generators;
  std::set<RatVec> seen{RatVec(rank, Rational(0))};
  std::vector<RatVec> queue(seen.begin(), seen.end());
  for (std::size_t k = 0; k < queue.size(); ++k) {
    for (const auto& g : generators) {
      RatVec next = queue[k];
      for (std::size_t i = 0; i < rank; ++i) next[i] += g[i];
      next = reduce_mod_one(std::move(next));
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  z.elements.assign(seen.begin(), seen.end());
  z.order = static_cast<std::int64_t>(z.elements.size());
  return z;
}

CentralSubgroup make_central_subgroup(const RootDatum& d, const std::vector<RatVec>& generators) {
  for (const auto& g : generators) {
    if (g.size() != d.rank()) throw Error(ErrorKind::MalformedInput, "central generator has wrong length");
    for (const auto& a : d.simple_roots()) {
      const Rational p = dot(a, g);
      if (boost::multiprecision::denominator(p) != 1) {
        throw Error(ErrorKind::NotCentral, "generator pairs non-integrally with root " + vec_string(a));
      }
    }
  }
  return torus_subgroup(d.rank(), generators);
}

CentralQuotient quotient_by_central(const RootDatum& d, const CentralSubgroup& z) {
  const std::size_t n = d.rank();
  // Re-check centrality: the subgroup may have been built without a datum.
  for (const auto& g : z.generators)
    for (const auto& a : d.simple_roots())
      if (boost::multiprecision::denominator(dot(a, g)) != 1)
        throw Error(ErrorKind::NotCentral, "generator pairs non-integrally with root " + vec_string(a));

  std::int64_t denom = 1;
  for (const auto& g : z.generators) denom = std::lcm(denom, lcm_of_denominators(g));
  IntMatrix gens(n, n + z.generators.size());
  for (std::size_t i = 0; i < n; ++i) gens(i, i) = denom;
  for (std::size_t j = 0; j < z.generators.size(); ++j)
    for (std::size_t i = 0; i < n; ++i)
      gens(i, n + j) = static_cast<std::int64_t>(boost::multiprecision::numerator(Rational(z.generators[j][i] * denom)));
  const IntMatrix basis = column_hermite_form(gens);

  RatMatrix p(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p(i, j) = Rational(basis(i, j), denom);
  const RatMatrix pinv = *inverse(p);
  const RatMatrix pt = p.transpose();

  auto to_int = [](const RatVec& v, const char* what) {
    IntVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (boost::multiprecision::denominator(v[i]) != 1)
        throw Error(ErrorKind::NotCentral, std::string("non-integral ") + what + " after quotient");
      r[i] = static_cast<std::int64_t>(boost::multiprecision::numerator(v[i]));
    }
    return r;
  };
  std::vector<IntVec> roots, coroots;
  for (const auto& a : d.simple_roots()) roots.push_back(to_int(pt * to_rational(a), "root"));
  for (const auto& c : d.simple_coroots()) coroots.push_back(to_int(pinv * to_rational(c), "coroot"));
  return {build_root_datum(n, roots, coroots), p};
}

RatVec to_quotient_coordinates(const CentralQuotient& q, const RatVec& point) {
  return *inverse(q.cocharacter_basis) * point;
}

RootDatum transform_cocharacters(const RootDatum& d, const IntMatrix& g) {
  const IntMatrix on_characters = character_action(g);
  std::vector<IntVec> roots, coroots;
  for (const auto& a : d.simple_roots()) roots.push_back(on_characters * a);
  for (const auto& c : d.simple_coroots()) coroots.push_back(g * c);
  return build_root_datum(d.rank(), roots, coroots);
}

RootDatum product(const RootDatum& a, const RootDatum& b) {
  const std::size_t n = a.rank() + b.rank();
  std::vector<IntVec> roots, coroots;
  auto embed = [n](const IntVec& v, std::size_t offset) {
    IntVec r(n, 0);
    std::copy(v.begin(), v.end(), r.begin() + static_cast<std::ptrdiff_t>(offset));
    return r;
  };
  for (std::size_t i = 0; i < a.semisimple_rank(); ++i) {
    roots.push_back(embed(a.simple_roots()[i], 0));
    coroots.push_back(embed(a.simple_coroots()[i], 0));
  }
  for (std::size_t i = 0; i < b.semisimple_rank(); ++i) {
    roots.push_back(embed(b.simple_roots()[i], a.rank()));
    coroots.push_back(embed(b.simple_coroots()[i], a.rank()));
  }
  return build_root_datum(n, roots, coroots);
}

std::string canonical_key(const RootDatum& d) {
  const std::size_t l = d.semisimple_rank();
  const IntMatrix cartan = d.cartan_matrix();
  std::vector<std::size_t> perm(l);
  std::iota(perm.begin(), perm.end(), 0);

  // Minimal relabelled Cartan matrix first, then minimal lattice forms among
  // the labellings that attain it (these differ by diagram automorphisms).
  std::vector<std::int64_t> best_cartan;
  std::vector<std::vector<std::size_t>> attaining;
  do {
    std::vector<std::int64_t> flat;
    flat.reserve(l * l);
    for (std::size_t i = 0; i < l; ++i)
      for (std::size_t j = 0; j < l; ++j) flat.push_back(cartan(perm[i], perm[j]));
    if (attaining.empty() || flat < best_cartan) {
      best_cartan = std::move(flat);
      attaining.assign(1, perm);
    } else if (flat == best_cartan) {
      attaining.push_back(perm);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<std::int64_t> best_lattice;
  bool first = true;
  for (const auto& p : attaining) {
    IntMatrix roots(l, d.rank()), coroots(l, d.rank());
    for (std::size_t i = 0; i < l; ++i)
      for (std::size_t j = 0; j < d.rank(); ++j) {
        roots(i, j) = d.simple_roots()[p[i]][j];
        coroots(i, j) = d.simple_coroots()[p[i]][j];
      }
    std::vector<std::int64_t> flat;
    for (const IntMatrix& h : {column_hermite_form(roots), column_hermite_form(coroots)}) {
      flat.push_back(static_cast<std::int64_t>(h.cols()));
      flat.insert(flat.end(), h.data().begin(), h.data().end());
    }
    if (first || flat < best_lattice) {
      best_lattice = std::move(flat);
      first = false;
    }
  }

  std::ostringstream key;
  key << cartan_type(d) << "|n=" << d.rank() << "|C=";
  for (auto x : best_cartan) key << x << ',';
  key << "|L=";
  for (auto x : best_lattice) key << x << ',';
  return key.str();
}

std::optional<RootDatum> catalog_datum(const std::string& name) {
  if (name == "trivial") return build_root_datum(0, {}, {});
  if (name == "gl1") return build_root_datum(1, {}, {});
  if (name == "sl2") return build_root_datum(1, {{2}}, {{1}});
  if (name == "pgl2") return build_root_datum(1, {{1}}, {{2}});
  if (name == "gl2") return build_root_datum(2, {{1, -1}}, {{1, -1}});
  if (name == "sl3") return build_root_datum(2, {{2, -1}, {-1, 2}}, {{1, 0}, {0, 1}});
  if (name == "pgl3") return build_root_datum(2, {{1, 0}, {0, 1}}, {{2, -1}, {-1, 2}});
  // Simply connected C2 (alpha_1 short, alpha_2 long).
  if (name == "sp4") return build_root_datum(2, {{2, -1}, {-2, 2}}, {{1, 0}, {0, 1}});
  // Adjoint B2.
  if (name == "so5") return build_root_datum(2, {{1, 0}, {0, 1}}, {{2, -2}, {-1, 2}});
  if (name == "g2") return build_root_datum(2, {{2, -1}, {-3, 2}}, {{1, 0}, {0, 1}});
  if (name == "sl2xsl2") return build_root_datum(2, {{2, 0}, {0, 2}}, {{1, 0}, {0, 1}});
  return std::nullopt;
}

std::vector<std::string> catalog_datum_names() {
  return {"trivial", "gl1", "gl2", "sl2", "pgl2", "sl2xsl2", "sl3", "pgl3", "sp4", "so5", "g2"};
}

}  // namespace lts
