#include "lts/elliptic.hpp"

#include "lts/error.hpp"
#include "lts/parallel.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

namespace lts {

namespace {

bool integral(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

RatVec act(const IntMatrix& m, const RatVec& v) {
  RatVec r(m.rows(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) r[i] += m(i, j) * v[j];
  return r;
}

std::vector<std::size_t> integral_roots(const RootDatum& d, const RatVec& t) {
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < d.roots().size(); ++k)
    if (integral(dot(d.roots()[k], t))) idx.push_back(k);
  return idx;
}

// Sub-datum on the same lattice whose roots are the given (closed) subset.
RootDatum subsystem_datum(const RootDatum& d, const std::vector<std::size_t>& idx) {
  std::set<IntVec> positive;
  for (auto k : idx)
    if (d.is_positive(k)) positive.insert(d.roots()[k]);
  std::vector<IntVec> roots, coroots;
  for (auto k : idx) {
    if (!d.is_positive(k)) continue;
    const IntVec& g = d.roots()[k];
    bool decomposable = false;
    for (const auto& a : positive) {
      IntVec rest(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) rest[i] = g[i] - a[i];
      if (positive.count(rest)) {
        decomposable = true;
        break;
      }
    }
    if (decomposable) continue;
    roots.push_back(g);
    coroots.push_back(d.coroots()[k]);
  }
  return build_root_datum(d.rank(), roots, coroots);
}

RatVec orbit_min(const std::vector<WeylElement>& w, const RatVec& t) {
  RatVec best = reduce_mod_one(t);
  for (const auto& e : w) {
    RatVec img = reduce_mod_one(act(e.matrix, t));
    if (img < best) best = std::move(img);
  }
  return best;
}

std::int64_t stabilizer_size(const std::vector<WeylElement>& w, const RatVec& t) {
  const RatVec base = reduce_mod_one(t);
  std::int64_t count = 0;
  for (const auto& e : w)
    if (reduce_mod_one(act(e.matrix, t)) == base) ++count;
  return count;
}

// Roots of the subsystem generated by `base` (root indices), with coefficients.
std::vector<std::pair<std::size_t, IntVec>> closure(const RootDatum& d, const std::vector<std::size_t>& base) {
  std::vector<std::pair<std::size_t, IntVec>> out;
  std::map<std::size_t, std::size_t> where;
  for (std::size_t i = 0; i < base.size(); ++i) {
    IntVec coeff(base.size(), 0);
    coeff[i] = 1;
    where[base[i]] = out.size();
    out.emplace_back(base[i], coeff);
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    for (std::size_t i = 0; i < base.size(); ++i) {
      const auto [g, coeff] = out[k];
      const std::int64_t p = dot(d.roots()[g], d.coroots()[base[i]]);
      if (p == 0) continue;
      IntVec r = d.roots()[g];
      for (std::size_t j = 0; j < r.size(); ++j) r[j] -= p * d.roots()[base[i]][j];
      const std::size_t idx = *d.root_index(r);
      if (where.count(idx)) continue;
      IntVec c = coeff;
      c[i] -= p;
      where[idx] = out.size();
      out.emplace_back(idx, std::move(c));
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> split_components(const RootDatum& d, const std::vector<std::size_t>& base) {
  std::vector<int> seen(base.size(), 0);
  std::vector<std::vector<std::size_t>> comps;
  for (std::size_t s = 0; s < base.size(); ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> members{s};
    seen[s] = 1;
    for (std::size_t k = 0; k < members.size(); ++k)
      for (std::size_t j = 0; j < base.size(); ++j)
        if (!seen[j] && dot(d.roots()[base[members[k]]], d.coroots()[base[j]]) != 0) {
          seen[j] = 1;
          members.push_back(j);
        }
    std::vector<std::size_t> comp;
    for (auto m : members) comp.push_back(base[m]);
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

// All full-rank subsystems reachable by repeated extended-diagram node deletion,
// returned as bases (root indices). Deduplicated by root set.
std::vector<std::vector<std::size_t>> maximal_rank_subsystems(const RootDatum& d) {
  std::vector<std::size_t> start;
  for (const auto& a : d.simple_roots()) start.push_back(*d.root_index(a));
  std::vector<std::vector<std::size_t>> queue{start};
  std::set<std::vector<std::size_t>> seen_sets;
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const auto base = queue[q];
    std::vector<std::size_t> roots;
    const auto comps = split_components(d, base);
    std::vector<std::vector<std::pair<std::size_t, IntVec>>> closures;
    for (const auto& comp : comps) {
      closures.push_back(closure(d, comp));
      for (const auto& [idx, c] : closures.back()) roots.push_back(idx);
    }
    std::sort(roots.begin(), roots.end());
    if (!seen_sets.insert(roots).second) continue;
    out.push_back(base);
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
      std::size_t highest = 0;
      std::int64_t best = -1;
      for (const auto& [idx, c] : closures[ci]) {
        const std::int64_t h = std::accumulate(c.begin(), c.end(), std::int64_t{0});
        if (h > best) {
          best = h;
          highest = idx;
        }
      }
      IntVec neg = d.roots()[highest];
      for (auto& x : neg) x = -x;
      const std::size_t lowest = *d.root_index(neg);
      for (std::size_t drop = 0; drop < comps[ci].size(); ++drop) {
        std::vector<std::size_t> next;
        for (std::size_t cj = 0; cj < comps.size(); ++cj)
          if (cj != ci) next.insert(next.end(), comps[cj].begin(), comps[cj].end());
        for (std::size_t k = 0; k < comps[ci].size(); ++k)
          if (k != drop) next.push_back(comps[ci][k]);
        next.push_back(lowest);
        std::sort(next.begin(), next.end());
        queue.push_back(std::move(next));
      }
    }
  }
  return out;
}

// Solutions of <beta, t> in Z for the rows of m (square, full rank), mod X^vee.
std::vector<RatVec> dual_torsion_points(const IntMatrix& m) {
  const auto s = smith_normal_form(m);
  const std::size_t n = m.rows();
  std::vector<std::int64_t> d(n);
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = s.D(i, i);
    total *= static_cast<std::size_t>(d[i]);
  }
  std::vector<RatVec> out;
  out.reserve(total);
  std::vector<std::int64_t> k(n, 0);
  for (std::size_t c = 0; c < total; ++c) {
    RatVec frac(n);
    for (std::size_t i = 0; i < n; ++i) frac[i] = Rational(k[i], d[i]);
    out.push_back(reduce_mod_one(act(s.V, frac)));
    for (std::size_t i = 0; i < n; ++i) {
      if (++k[i] < d[i]) break;
      k[i] = 0;
    }
  }
  return out;
}

std::vector<SemisimpleClass> untwisted_classes(const RootDatum& d) {
  const std::size_t n = d.rank();
  if (d.central_rank() > 0) return {};
  const auto w = weyl_group(d);
  const auto subsystems = maximal_rank_subsystems(d);

  std::set<RatVec> reps;
  std::mutex reps_mutex;
  parallel_for(subsystems.size(), [&](std::size_t si) {
    std::vector<IntVec> rows;
    for (auto k : subsystems[si]) rows.push_back(d.roots()[k]);
    std::set<RatVec> local;
    for (const auto& t : dual_torsion_points(IntMatrix::from_rows(rows, n))) {
      std::vector<IntVec> phi_t;
      for (auto k : integral_roots(d, t)) phi_t.push_back(d.roots()[k]);
      if (rank_of_rows(phi_t, n) != n) continue;
      local.insert(orbit_min(w, t));
    }
    std::lock_guard<std::mutex> lock(reps_mutex);
    reps.insert(local.begin(), local.end());
  });

  std::vector<SemisimpleClass> out;
  for (const auto& t : reps) {
    SemisimpleClass s;
    s.rep = make_torus_point(t);
    const auto idx = integral_roots(d, t);
    s.centralizer_datum = subsystem_datum(d, idx);
    s.pi0 = stabilizer_size(w, t) / weyl_group_order(s.centralizer_datum);
    s.elliptic = true;
    s.central = idx.size() == d.roots().size();
    s.component_tag = "id";
    s.torus_embedding = IntMatrix::identity(n);
    s.ambient_roots = s.centralizer_datum.simple_roots();
    out.push_back(std::move(s));
  }
  return out;
}

// A coordinate subset of the base, with its sub-datum and the restricted theta.
struct Block {
  std::vector<std::size_t> coords;
  RootDatum datum;
  IntMatrix theta;
};

IntVec restrict_vec(const IntVec& v, const std::vector<std::size_t>& coords) {
  IntVec r;
  for (auto c : coords) r.push_back(v[c]);
  return r;
}

bool supported_in(const IntVec& v, const std::vector<std::size_t>& coords) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0 && std::find(coords.begin(), coords.end(), i) == coords.end()) return false;
  return true;
}

RootDatum restrict_datum(const RootDatum& d, const std::vector<std::size_t>& coords) {
  std::vector<IntVec> roots, coroots;
  for (std::size_t i = 0; i < d.semisimple_rank(); ++i) {
    if (!supported_in(d.simple_roots()[i], coords)) continue;
    roots.push_back(restrict_vec(d.simple_roots()[i], coords));
    coroots.push_back(restrict_vec(d.simple_coroots()[i], coords));
  }
  return build_root_datum(coords.size(), roots, coroots);
}

IntMatrix restrict_matrix(const IntMatrix& m, const std::vector<std::size_t>& coords) {
  IntMatrix r(coords.size(), coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i)
    for (std::size_t j = 0; j < coords.size(); ++j) r(i, j) = m(coords[i], coords[j]);
  return r;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
  std::vector<std::vector<std::size_t>> groups() {
    std::map<std::size_t, std::vector<std::size_t>> g;
    for (std::size_t i = 0; i < parent.size(); ++i) g[find(i)].push_back(i);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [root, members] : g) out.push_back(std::move(members));
    std::sort(out.begin(), out.end());
    return out;
  }
};

void link_support(UnionFind& uf, const IntVec& v) {
  std::size_t first = v.size();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (first == v.size())
      first = i;
    else
      uf.unite(first, i);
  }
}

std::vector<std::vector<std::size_t>> root_components(const RootDatum& d) {
  UnionFind uf(d.rank());
  for (const auto& r : d.roots()) link_support(uf, r);
  for (const auto& c : d.coroots()) link_support(uf, c);
  return uf.groups();
}

// Class data of one block, in block coordinates.
struct Piece {
  RatVec rep;
  RootDatum centralizer;
  std::int64_t pi0;
  IntMatrix embedding;
  std::vector<IntVec> ambient_roots;
};

std::vector<Piece> untwisted_pieces(const RootDatum& d) {
  std::vector<Piece> out;
  for (auto& s : untwisted_classes(d))
    out.push_back({s.rep.coords, s.centralizer_datum, s.pi0, s.torus_embedding, s.ambient_roots});
  return out;
}

bool is_involutive_permutation(const IntMatrix& m) {
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) {
    int ones = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (m(i, j) == 1)
        ++ones;
      else if (m(i, j) != 0)
        return false;
    }
    if (ones != 1 || m(i, i) != 0) return false;
  }
  return m * m == IntMatrix::identity(n);
}

std::size_t image_of(const IntMatrix& perm, std::size_t i) {
  for (std::size_t r = 0; r < perm.rows(); ++r)
    if (perm(r, i) == 1) return r;
  return perm.rows();
}

// Swap shape: returns the A-side coordinates and the involution, if some v theta fits.
std::optional<std::pair<std::vector<std::size_t>, IntMatrix>> swap_shape(const Block& b,
                                                                         const std::vector<WeylElement>& w) {
  const auto comps = root_components(b.datum);
  for (const auto& v : w) {
    const IntMatrix m = v.matrix * b.theta;
    if (!is_involutive_permutation(m)) continue;
    std::vector<std::size_t> a_side;
    bool ok = true;
    for (const auto& comp : comps) {
      std::vector<std::size_t> img;
      for (auto i : comp) img.push_back(image_of(m, i));
      std::sort(img.begin(), img.end());
      if (std::find(comps.begin(), comps.end(), img) == comps.end() || img == comp) {
        ok = false;
        break;
      }
      if (comp.front() < img.front()) a_side.insert(a_side.end(), comp.begin(), comp.end());
    }
    if (!ok) continue;
    std::sort(a_side.begin(), a_side.end());
    return std::make_pair(a_side, m);
  }
  return std::nullopt;
}

std::vector<Piece> block_pieces(const Block& b) {
  const std::size_t k = b.coords.size();
  const IntMatrix id = IntMatrix::identity(k);
  if (b.datum.semisimple_rank() == 0) {
    const std::int64_t det = determinant(b.theta - id);
    if (det == 0) return {};
    return {{RatVec(k, Rational(0)), build_root_datum(0, {}, {}), std::llabs(det), IntMatrix(k, 0), {}}};
  }
  const auto w = weyl_group(b.datum);
  for (const auto& v : w)
    if (v.matrix * b.theta == id) return untwisted_pieces(b.datum);

  if (auto shape = swap_shape(b, w)) {
    const auto& [a_side, m] = *shape;
    const RootDatum folded = restrict_datum(b.datum, a_side);
    std::vector<Piece> out;
    for (auto& p : untwisted_pieces(folded)) {
      Piece q;
      q.rep.assign(k, Rational(0));
      for (std::size_t i = 0; i < a_side.size(); ++i) q.rep[a_side[i]] = p.rep[i];
      q.centralizer = p.centralizer;
      q.pi0 = p.pi0;
      q.embedding = IntMatrix(k, a_side.size());
      for (std::size_t i = 0; i < a_side.size(); ++i) {
        q.embedding(a_side[i], i) += 1;
        q.embedding(image_of(m, a_side[i]), i) += 1;
      }
      for (const auto& r : p.ambient_roots) {
        IntVec full(k, 0);
        for (std::size_t i = 0; i < a_side.size(); ++i) full[a_side[i]] = r[i];
        q.ambient_roots.push_back(std::move(full));
      }
      out.push_back(std::move(q));
    }
    return out;
  }
  throw Error(ErrorKind::TwistedUnsupported, "theta restricted to coordinates of type " + cartan_type(b.datum) +
                                                  " is neither inner, a torus twist, nor a factor swap");
}

}  // namespace

TorusPoint make_torus_point(RatVec coords) {
  TorusPoint t;
  t.coords = reduce_mod_one(std::move(coords));
  t.order = lcm_of_denominators(t.coords);
  return t;
}

std::pair<RootDatum, std::int64_t> centralizer(const TwistedComponent& c, const TorusPoint& t) {
  if (!c.untwisted()) throw Error(ErrorKind::TwistedUnsupported, "centralizer of a point in a twisted component");
  const auto idx = integral_roots(c.base, t.coords);
  RootDatum cent = subsystem_datum(c.base, idx);
  const std::int64_t pi0 = stabilizer_size(weyl_group(c.base), t.coords) / weyl_group_order(cent);
  return {std::move(cent), pi0};
}

bool is_elliptic(const TwistedComponent& c, const TorusPoint& t) {
  if (!c.untwisted()) throw Error(ErrorKind::TwistedUnsupported, "ellipticity test in a twisted component");
  std::vector<IntVec> rows;
  for (auto k : integral_roots(c.base, t.coords)) rows.push_back(c.base.roots()[k]);
  return rank_of_rows(rows, c.base.rank()) == c.base.rank();
}

std::vector<SemisimpleClass> elliptic_classes(const TwistedComponent& c) {
  if (c.untwisted()) return untwisted_classes(c.base);

  const RootDatum& d = c.base;
  const std::size_t n = d.rank();
  UnionFind uf(n);
  for (const auto& r : d.roots()) link_support(uf, r);
  for (const auto& r : d.coroots()) link_support(uf, r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (c.theta(i, j) != 0) uf.unite(i, j);

  std::vector<Block> blocks;
  for (auto& coords : uf.groups()) {
    Block b;
    b.datum = restrict_datum(d, coords);
    b.theta = restrict_matrix(c.theta, coords);
    b.coords = std::move(coords);
    blocks.push_back(std::move(b));
  }
  std::vector<std::vector<Piece>> pieces;
  for (const auto& b : blocks) {
    pieces.push_back(block_pieces(b));
    if (pieces.back().empty()) return {};
  }

  std::vector<SemisimpleClass> out;
  std::vector<std::size_t> choice(blocks.size(), 0);
  for (;;) {
    SemisimpleClass s;
    RatVec rep(n, Rational(0));
    RootDatum cent = build_root_datum(0, {}, {});
    std::int64_t pi0 = 1;
    std::size_t cols = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) cols += pieces[b][choice[b]].embedding.cols();
    IntMatrix emb(n, cols);
    std::size_t col = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const Piece& p = pieces[b][choice[b]];
      const auto& coords = blocks[b].coords;
      for (std::size_t i = 0; i < coords.size(); ++i) rep[coords[i]] = p.rep[i];
      cent = product(cent, p.centralizer);
      pi0 *= p.pi0;
      for (std::size_t j = 0; j < p.embedding.cols(); ++j, ++col)
        for (std::size_t i = 0; i < coords.size(); ++i) emb(coords[i], col) = p.embedding(i, j);
      for (const auto& r : p.ambient_roots) {
        IntVec full(n, 0);
        for (std::size_t i = 0; i < coords.size(); ++i) full[coords[i]] = r[i];
        s.ambient_roots.push_back(std::move(full));
      }
    }
    s.rep = make_torus_point(std::move(rep));
    s.centralizer_datum = std::move(cent);
    s.pi0 = pi0;
    s.elliptic = true;
    s.central = false;
    s.component_tag = component_tag(c);
    s.torus_embedding = std::move(emb);
    out.push_back(std::move(s));

    std::size_t b = 0;
    for (; b < blocks.size(); ++b) {
      if (++choice[b] < pieces[b].size()) break;
      choice[b] = 0;
    }
    if (b == blocks.size()) break;
  }
  std::sort(out.begin(), out.end(),
            [](const SemisimpleClass& a, const SemisimpleClass& b) { return a.rep.coords < b.rep.coords; });
  return out;
}

bool in_centralizer_torus(const SemisimpleClass& s, const RatVec& z) {
  const IntMatrix& e = s.torus_embedding;
  const std::size_t n = e.rows();
  const auto snf = smith_normal_form(e);
  std::size_t r = 0;
  while (r < std::min(n, e.cols()) && snf.D(r, r) != 0) ++r;
  const RatVec uz = act(snf.U, z);
  for (std::size_t i = r; i < n; ++i)
    if (!integral(uz[i])) return false;
  return true;
}

}  // namespace lts
