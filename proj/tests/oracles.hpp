#pragma once

// Brute-force reference computations used by the unit and acceptance tests.
// They share only the datum container and exact arithmetic with the library.

#include "lts/rootdata.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using namespace lts;

// Group generated by the reflections in all roots.
inline std::vector<IntMatrix> weyl_closure(const RootDatum& d, const std::vector<std::size_t>& roots) {
  std::vector<IntMatrix> gens;
  for (auto k : roots) gens.push_back(d.coroot_reflection(k));
  std::set<IntMatrix> seen{IntMatrix::identity(d.rank())};
  std::vector<IntMatrix> todo(seen.begin(), seen.end());
  for (std::size_t k = 0; k < todo.size(); ++k)
    for (const auto& g : gens) {
      IntMatrix m = g * todo[k];
      if (seen.insert(m).second) todo.push_back(m);
    }
  return todo;
}

inline std::vector<IntMatrix> weyl_closure(const RootDatum& d) {
  std::vector<std::size_t> all(d.roots().size());
  for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
  return weyl_closure(d, all);
}

// Positive coroots cut out by a generic functional on X^vee.
inline std::vector<bool> generic_positive(const RootDatum& d) {
  for (std::int64_t base = 7;; base += 2) {
    IntVec lambda(d.rank());
    std::int64_t p = 1;
    for (auto& x : lambda) {
      x = p;
      p *= base;
    }
    std::vector<bool> pos;
    bool generic = true;
    for (const auto& c : d.coroots()) {
      const std::int64_t v = dot(lambda, c);
      if (v == 0) generic = false;
      pos.push_back(v > 0);
    }
    if (generic) return pos;
  }
}

inline Rational i_number(const RootDatum& d, const IntMatrix& theta) {
  const auto w = weyl_closure(d);
  const auto pos = generic_positive(d);
  std::map<IntVec, std::size_t> index;
  for (std::size_t k = 0; k < d.coroots().size(); ++k) index[d.coroots()[k]] = k;
  const IntMatrix id = IntMatrix::identity(d.rank());
  Rational sum = 0;
  for (const auto& v : w) {
    const IntMatrix total = v * theta;
    const Rational det = determinant(to_rational(total - id));
    if (det == 0) continue;
    int flips = 0;
    for (std::size_t k = 0; k < d.coroots().size(); ++k)
      if (pos[k] && !pos[index.at(total * d.coroots()[k])]) ++flips;
    sum += Rational(flips % 2 ? -1 : 1) / abs(det);
  }
  return sum / Rational(static_cast<std::int64_t>(w.size()));
}

struct EllipticClass {
  RatVec rep;
  std::int64_t pi0;
  std::string type;
  friend bool operator==(const EllipticClass&, const EllipticClass&) = default;
};

inline std::string type_by_count(std::size_t rank, std::size_t roots) {
  if (rank == 0) return "T0";
  if (rank == 1) return "A1";
  switch (roots) {
    case 4: return "A1xA1";
    case 6: return "A2";
    case 8: return "B2";
    case 12: return "G2";
  }
  return "?";
}

namespace detail {

// Walks (a, b) over (Z/N)^2 tracking <alpha, (a, b)> mod N for each positive root.
template <std::size_t M, typename Check>
void scan2(const RootDatum& d, const std::vector<std::size_t>& positive, std::int64_t n, Check&& check) {
  const std::size_t m = M ? M : positive.size();
  auto md = [n](std::int64_t x) { return ((x % n) + n) % n; };
  std::vector<std::int64_t> step0(m), step1(m), row(m, 0), cur(m);
  for (std::size_t r = 0; r < m; ++r) {
    step0[r] = md(d.roots()[positive[r]][0]);
    step1[r] = md(d.roots()[positive[r]][1]);
  }
  for (std::int64_t a = 0; a < n; ++a) {
    cur = row;
    for (std::int64_t b = 0; b < n; ++b) {
      int zeros = 0;
      for (std::size_t r = 0; r < (M ? M : m); ++r) zeros += cur[r] == 0;
      if (zeros >= 2) check({a, b}, cur);
      for (std::size_t r = 0; r < (M ? M : m); ++r) {
        const std::int64_t v = cur[r] + step1[r];
        cur[r] = v >= n ? v - n : v;
      }
    }
    for (std::size_t r = 0; r < m; ++r) {
      row[r] += step0[r];
      if (row[r] >= n) row[r] -= n;
    }
  }
}

}  // namespace detail

// Every point k/N of (Z/N)^rank, rank <= 2, whose integral roots span;
// classes are W-orbits, represented by their lexicographically least point.
inline std::vector<EllipticClass> elliptic_grid(const RootDatum& d, std::int64_t n_grid) {
  const std::size_t rank = d.rank();
  if (rank > 2) return {};
  std::vector<std::size_t> positive;
  for (std::size_t k = 0; k < d.roots().size(); ++k)
    if (d.is_positive(k)) positive.push_back(k);
  std::vector<IntVec> hits;
  auto md = [n_grid](std::int64_t x) { return ((x % n_grid) + n_grid) % n_grid; };
  auto check = [&](const IntVec& k, const std::vector<std::int64_t>& pairing) {
    std::vector<IntVec> integral;
    for (std::size_t r = 0; r < positive.size(); ++r)
      if (pairing[r] == 0) integral.push_back(d.roots()[positive[r]]);
    if (rank_of_rows(integral, rank) == rank) hits.push_back(k);
  };
  if (rank == 0) {
    hits.push_back({});
  } else if (rank == 1) {
    for (std::int64_t a = 0; a < n_grid; ++a) {
      std::vector<std::int64_t> pairing;
      for (auto r : positive) pairing.push_back(md(d.roots()[r][0] * a));
      check({a}, pairing);
    }
  } else {
    switch (positive.size()) {
      case 1: detail::scan2<1>(d, positive, n_grid, check); break;
      case 2: detail::scan2<2>(d, positive, n_grid, check); break;
      case 3: detail::scan2<3>(d, positive, n_grid, check); break;
      case 4: detail::scan2<4>(d, positive, n_grid, check); break;
      case 6: detail::scan2<6>(d, positive, n_grid, check); break;
      default: detail::scan2<0>(d, positive, n_grid, check); break;
    }
  }

  const auto w = weyl_closure(d);
  auto image = [&](const IntMatrix& g, const IntVec& k) {
    IntVec r = g * k;
    for (auto& x : r) x = md(x);
    return r;
  };
  std::set<IntVec> seen;
  std::vector<EllipticClass> out;
  for (const auto& k : hits) {
    if (seen.count(k)) continue;
    IntVec least = k;
    std::int64_t stab = 0;
    for (const auto& g : w) {
      IntVec img = image(g, k);
      if (img == k) ++stab;
      least = std::min(least, img);
      seen.insert(img);
    }
    std::vector<std::size_t> integral;
    for (std::size_t r = 0; r < d.roots().size(); ++r) {
      std::int64_t p = 0;
      for (std::size_t i = 0; i < rank; ++i) p += d.roots()[r][i] * least[i];
      if (md(p) == 0) integral.push_back(r);
    }
    const auto sub = weyl_closure(d, integral);
    RatVec rep;
    for (auto x : least) rep.push_back(Rational(x, n_grid));
    out.push_back({rep, stab / static_cast<std::int64_t>(sub.size()), type_by_count(rank, integral.size())});
  }
  std::sort(out.begin(), out.end(), [](const EllipticClass& a, const EllipticClass& b) { return a.rep < b.rep; });
  return out;
}

}  // namespace oracle
