#pragma once

// Based root data on Z^rank, their Weyl groups, and central isogeny quotients.
//
// Coordinates: the character lattice X and the cocharacter lattice X^vee are
// both Z^rank, paired by the standard dot product. The Weyl group acts on
// X^vee by integer matrices; the induced action on X is the contragredient.

#include "lts/lattice.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lts {

class RootDatum {
 public:
  RootDatum() = default;

  std::size_t rank() const { return rank_; }
  std::size_t semisimple_rank() const { return simple_roots_.size(); }
  // Rank of the central torus: rank minus the rank of the span of the roots.
  std::size_t central_rank() const { return rank_ - simple_roots_.size(); }

  const std::vector<IntVec>& simple_roots() const { return simple_roots_; }
  const std::vector<IntVec>& simple_coroots() const { return simple_coroots_; }

  // roots()[k] and coroots()[k] correspond; ordering is lexicographic on roots.
  const std::vector<IntVec>& roots() const { return roots_; }
  const std::vector<IntVec>& coroots() const { return coroots_; }
  // Coefficients of roots()[k] in the simple roots.
  const IntVec& root_coefficients(std::size_t k) const { return coefficients_[k]; }
  bool is_positive(std::size_t k) const { return positive_[k]; }
  std::size_t num_positive_roots() const { return roots_.size() / 2; }

  std::optional<std::size_t> root_index(const IntVec& root) const;
  std::optional<std::size_t> coroot_index(const IntVec& coroot) const;

  // C(i, j) = <alpha_j, alpha_i^vee>.
  IntMatrix cartan_matrix() const;

  // Reflection s_k on X^vee: y -> y - <alpha_k, y> alpha_k^vee.
  IntMatrix coroot_reflection(std::size_t k) const;

  friend bool operator==(const RootDatum& a, const RootDatum& b) {
    return a.rank_ == b.rank_ && a.simple_roots_ == b.simple_roots_ &&
           a.simple_coroots_ == b.simple_coroots_;
  }

 private:
  friend RootDatum build_root_datum(std::size_t, const std::vector<IntVec>&, const std::vector<IntVec>&);

  std::size_t rank_ = 0;
  std::vector<IntVec> simple_roots_;
  std::vector<IntVec> simple_coroots_;
  std::vector<IntVec> roots_;
  std::vector<IntVec> coroots_;
  std::vector<IntVec> coefficients_;
  std::vector<bool> positive_;
  std::map<IntVec, std::size_t> root_lookup_;
  std::map<IntVec, std::size_t> coroot_lookup_;
};

// Throws NonCartan / InfiniteType.
RootDatum build_root_datum(std::size_t rank, const std::vector<IntVec>& simple_roots,
                           const std::vector<IntVec>& simple_coroots);

struct WeylElement {
  IntMatrix matrix;       // action on X^vee
  std::vector<int> word;  // reduced word in simple reflections (left to right)
};

// The full Weyl group, ordered by word length then matrix.
std::vector<WeylElement> weyl_group(const RootDatum& d);

// Action of an X^vee matrix on X (contragredient).
IntMatrix character_action(const IntMatrix& cocharacter_matrix);

// Simple components of the Dynkin diagram, e.g. {"A", 2}. Ordered by letter then rank.
struct SimpleType {
  char letter;
  int rank;
  friend auto operator<=>(const SimpleType&, const SimpleType&) = default;
};
std::vector<SimpleType> classify_cartan(const IntMatrix& cartan);

// e.g. "A1xA1", "B2", "A1xT1", "T1"; the rank-0 datum is "T0".
std::string cartan_type(const RootDatum& d);

// Order of the Weyl group from the classification (product formula).
std::int64_t weyl_group_order(const RootDatum& d);

// A finite subgroup of (X^vee (x) Q) / X^vee, i.e. of the maximal torus.
struct CentralSubgroup {
  std::vector<RatVec> generators;
  std::int64_t order = 1;
  std::vector<RatVec> elements;  // reduced mod 1, sorted
};

// Validates centrality (<alpha, g> integral for every root) and computes the order.
// Throws NotCentral.
CentralSubgroup make_central_subgroup(const RootDatum& d, const std::vector<RatVec>& generators);

// Subgroup of the torus generated by `generators` mod X^vee, without a centrality check.
CentralSubgroup torus_subgroup(std::size_t rank, const std::vector<RatVec>& generators);

struct CentralQuotient {
  RootDatum datum;
  // Columns: basis of the enlarged cocharacter lattice in old coordinates.
  RatMatrix cocharacter_basis;
};

// Datum of S/Z; roots and coroots re-expressed in the new bases. Throws NotCentral.
CentralQuotient quotient_by_central(const RootDatum& d, const CentralSubgroup& z);

// Express a torus point of `d` in the coordinates of a quotient produced above.
RatVec to_quotient_coordinates(const CentralQuotient& q, const RatVec& point);

// Basis change g in GL_n(Z) applied to X^vee (coroots y -> g y, roots x -> g^{-T} x).
RootDatum transform_cocharacters(const RootDatum& d, const IntMatrix& g);

RootDatum product(const RootDatum& a, const RootDatum& b);

// Invariant of the isomorphism class of the datum; usable as a memo key.
std::string canonical_key(const RootDatum& d);

// Built-in data: sl2, pgl2, gl1, gl2, trivial, sl3, pgl3, sp4, so5, g2, sl2xsl2.
std::optional<RootDatum> catalog_datum(const std::string& name);
std::vector<std::string> catalog_datum_names();

}  // namespace lts
