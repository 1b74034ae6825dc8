#pragma once

// Components S = S° theta of a possibly disconnected group, their Weyl sets
// W(S) = W(S°) theta, and the signed count i(S).

#include "lts/rootdata.hpp"

#include <string>
#include <vector>

namespace lts {

inline constexpr int kMaxThetaOrder = 64;

struct TwistedComponent {
  RootDatum base;
  IntMatrix theta;  // acts on X^vee
  int order_theta = 1;

  bool untwisted() const { return theta == IntMatrix::identity(base.rank()); }
};

// Throws NotAutomorphism, InfiniteOrder.
TwistedComponent component(const RootDatum& base, const IntMatrix& theta);
TwistedComponent untwisted_component(const RootDatum& base);

// Short identifier of the component ("id" or the theta matrix).
std::string component_tag(const TwistedComponent& c);

struct CosetElement {
  WeylElement weyl_part;
  IntMatrix total;        // weyl_part.matrix * theta
  Rational det_w_minus_1;
  int sign = 1;
  bool regular = false;
};

// (-1)^{#positive coroots sent to negative coroots by m}.
int inversion_sign(const RootDatum& d, const IntMatrix& m);

std::vector<CosetElement> weyl_set(const TwistedComponent& c);

Rational i_number(const TwistedComponent& c);

}  // namespace lts
