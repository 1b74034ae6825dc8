#pragma once

// Elliptic semisimple classes of a component, with centralizer data.

#include "lts/weylcoset.hpp"

#include <string>
#include <utility>
#include <vector>

namespace lts {

struct TorusPoint {
  RatVec coords;  // reduced into [0, 1)
  std::int64_t order = 1;
};

TorusPoint make_torus_point(RatVec coords);

struct SemisimpleClass {
  TorusPoint rep;  // ambient coordinates of the base datum
  RootDatum centralizer_datum;
  std::int64_t pi0 = 1;
  bool elliptic = true;
  // rep is central in S° (only meaningful for untwisted components)
  bool central = false;
  std::string component_tag;
  // Columns: basis of the cocharacter lattice of the maximal torus of the
  // identity component of the centralizer, inside X^vee of the base.
  IntMatrix torus_embedding;
  // Characters of the ambient torus restricting to the simple roots of the centralizer.
  std::vector<IntVec> ambient_roots;
};

// Untwisted only. Throws TwistedUnsupported otherwise.
std::pair<RootDatum, std::int64_t> centralizer(const TwistedComponent& c, const TorusPoint& t);
bool is_elliptic(const TwistedComponent& c, const TorusPoint& t);

// Complete list of E_ell(S), one representative per class, sorted by rep.
// Twisted components are split into theta-stable coordinate blocks; every
// block must be untwisted up to W, a torus, or a swap of two isomorphic
// factors. Anything else throws TwistedUnsupported.
std::vector<SemisimpleClass> elliptic_classes(const TwistedComponent& c);

// Is z in the identity component of the centralizer (z in span(E) + X^vee)?
bool in_centralizer_torus(const SemisimpleClass& s, const RatVec& z);

}  // namespace lts
