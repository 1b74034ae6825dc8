#include "lts/weylcoset.hpp"

#include "lts/error.hpp"
#include "lts/parallel.hpp"

#include <set>
#include <sstream>

namespace lts {

TwistedComponent component(const RootDatum& base, const IntMatrix& theta) {
  const std::size_t n = base.rank();
  if (theta.rows() != n || theta.cols() != n) throw Error(ErrorKind::NotAutomorphism, "theta has the wrong shape");
  auto inv = integer_inverse(theta);
  if (!inv) throw Error(ErrorKind::NotAutomorphism, "theta is not invertible over the integers");
  const IntMatrix on_x = inv->transpose();
  for (std::size_t k = 0; k < base.roots().size(); ++k) {
    auto c = base.coroot_index(theta * base.coroots()[k]);
    auto r = base.root_index(on_x * base.roots()[k]);
    if (!c || !r || *c != *r) throw Error(ErrorKind::NotAutomorphism, "theta does not permute the coroots");
  }
  TwistedComponent out{base, theta, 0};
  IntMatrix power = theta;
  const IntMatrix id = IntMatrix::identity(n);
  for (int k = 1; k <= kMaxThetaOrder; ++k) {
    if (power == id) {
      out.order_theta = k;
      return out;
    }
    power = power * theta;
  }
  throw Error(ErrorKind::InfiniteOrder, "theta has no identity power up to " + std::to_string(kMaxThetaOrder));
}

TwistedComponent untwisted_component(const RootDatum& base) {
  return TwistedComponent{base, IntMatrix::identity(base.rank()), 1};
}

std::string component_tag(const TwistedComponent& c) {
  if (c.untwisted()) return "id";
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < c.theta.rows(); ++i) {
    out << (i ? ",[" : "[");
    for (std::size_t j = 0; j < c.theta.cols(); ++j) out << (j ? "," : "") << c.theta(i, j);
    out << ']';
  }
  out << ']';
  return out.str();
}

int inversion_sign(const RootDatum& d, const IntMatrix& m) {
  int count = 0;
  for (std::size_t k = 0; k < d.coroots().size(); ++k) {
    if (!d.is_positive(k)) continue;
    auto img = d.coroot_index(m * d.coroots()[k]);
    if (img && !d.is_positive(*img)) ++count;
  }
  return count % 2 ? -1 : 1;
}

std::vector<CosetElement> weyl_set(const TwistedComponent& c) {
  const auto w = weyl_group(c.base);
  std::vector<CosetElement> out(w.size());
  const IntMatrix id = IntMatrix::identity(c.base.rank());
  parallel_for(w.size(), [&](std::size_t k) {
    CosetElement& e = out[k];
    e.weyl_part = w[k];
    e.total = w[k].matrix * c.theta;
    e.det_w_minus_1 = determinant(e.total - id);
    e.regular = e.det_w_minus_1 != 0;
    e.sign = inversion_sign(c.base, e.total);
  });
  return out;
}

Rational i_number(const TwistedComponent& c) {
  const auto set = weyl_set(c);
  Rational sum = 0;
  for (const auto& e : set) {
    if (!e.regular) continue;
    sum += Rational(e.sign) / abs(e.det_w_minus_1);
  }
  return sum / Rational(static_cast<std::int64_t>(set.size()));
}

}  // namespace lts
