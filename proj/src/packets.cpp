#include "lts/packets.hpp"

#include "lts/error.hpp"

#include <set>

namespace lts {

ParameterModel::ParameterModel(int id, int sm_dim, int r_dim) : id_(id), sm_dim_(sm_dim), r_dim_(r_dim) {
  if (sm_dim < 0 || r_dim < 0 || sm_dim + r_dim > 8)
    throw Error(ErrorKind::MalformedInput, "2-group dimensions must total at most 8");
  const Bits n = s_order();
  pairing_.resize(static_cast<std::size_t>(n) * n);
  for (Bits x = 0; x < n; ++x)
    for (Bits chi = 0; chi < n; ++chi) set_pairing(x, chi, character(chi, x));
}

std::vector<Tau> ParameterModel::taus() const {
  std::vector<Tau> out;
  for (Bits r = 0; r < r_order(); ++r)
    for (Bits eta = 0; eta < s_m_order(); ++eta) out.push_back({id_, eta, r});
  return out;
}

void ParameterModel::attach_dual_group(const RootDatum& base, const std::map<Bits, IntMatrix>& given) {
  const Bits n = s_order();
  const int dim = sm_dim_ + r_dim_;
  for (const auto& [x, m] : given)
    if (x >= n) throw Error(ErrorKind::MismatchedModel, "theta given for an element outside S");
  std::vector<IntMatrix> thetas(n);
  const IntMatrix id = IntMatrix::identity(base.rank());
  for (Bits x = 0; x < n; ++x) {
    auto it = given.find(x);
    if (it != given.end()) {
      thetas[x] = it->second;
      continue;
    }
    IntMatrix t = id;
    for (int b = 0; b < dim; ++b) {
      if (!(x >> b & 1)) continue;
      auto basis = given.find(Bits{1} << b);
      if (basis != given.end()) t = t * basis->second;
    }
    thetas[x] = t;
  }
  DualGroupModel dual{base, {}};
  for (Bits x = 0; x < n; ++x) dual.components.push_back(component(base, thetas[x]));

  std::set<IntMatrix> weyl;
  for (const auto& w : weyl_group(base)) weyl.insert(w.matrix);
  if (!weyl.count(thetas[0])) throw Error(ErrorKind::MalformedInput, "component of x = 0 is not the identity component");
  for (Bits x = 0; x < n; ++x)
    for (Bits y = 0; y < n; ++y) {
      const IntMatrix defect = thetas[x] * thetas[y] * *integer_inverse(thetas[x ^ y]);
      if (!weyl.count(defect))
        throw Error(ErrorKind::MalformedInput, "theta_x theta_y differs from theta_{x+y} outside the Weyl group");
    }
  dual_ = std::move(dual);
}

namespace {

void check_args(const ParameterModel& m, const Tau& tau, Bits x) {
  if (x >= m.s_order() || tau.eta >= m.s_m_order() || tau.r >= m.r_order())
    throw Error(ErrorKind::MismatchedModel, "argument outside the groups of model " + std::to_string(m.id()));
}

}  // namespace

Rational transfer_factor(const ParameterModel& m, const Tau& tau, Bits x) {
  if (tau.model != m.id()) return 0;
  check_args(m, tau, x);
  // <Pi^chi, phi^x> = <phi^x, Pi^chi> / |S|
  std::int64_t sum = 0;
  for (Bits chi = 0; chi < m.r_order(); ++chi)
    sum += character(chi, tau.r) * m.pairing(x, m.compose(tau.eta, chi));
  return Rational(sum, static_cast<std::int64_t>(m.s_order()));
}

Rational adjoint_factor(const ParameterModel& m, Bits x, const Tau& tau) {
  if (tau.model != m.id()) return 0;
  check_args(m, tau, x);
  std::int64_t sum = 0;
  for (Bits chi = 0; chi < m.r_order(); ++chi)
    sum += character(chi, tau.r) * m.pairing(x, m.compose(tau.eta, chi));
  return Rational(sum, static_cast<std::int64_t>(m.r_order()));
}

Rational transfer_factor_closed(const ParameterModel& m, const Tau& tau, Bits x) {
  if (tau.model != m.id()) return 0;
  check_args(m, tau, x);
  if (m.r_part(x) != tau.r) return 0;
  return Rational(character(tau.eta, m.x_m(x)) * static_cast<std::int64_t>(m.r_order()),
                  static_cast<std::int64_t>(m.s_order()));
}

Rational adjoint_factor_closed(const ParameterModel& m, Bits x, const Tau& tau) {
  if (tau.model != m.id()) return 0;
  check_args(m, tau, x);
  if (m.r_part(x) != tau.r) return 0;
  return character(tau.eta, m.x_m(x));
}

GaussianRational TestVector::at(int model, Bits x) const {
  auto it = values.find({model, x});
  return it == values.end() ? GaussianRational{} : it->second;
}

GaussianRational theta_transfer(const ParameterModel& m, const Tau& tau, const TestVector& f) {
  GaussianRational sum;
  for (Bits x = 0; x < m.s_order(); ++x) {
    const Rational d = transfer_factor(m, tau, x);
    if (d != 0) sum += GaussianRational{d, 0} * f.at(m.id(), x);
  }
  return sum;
}

GaussianRational invert_transfer(const ParameterModel& m, Bits x, const std::map<Tau, GaussianRational>& theta) {
  GaussianRational sum;
  for (const auto& [tau, value] : theta) {
    const Rational d = adjoint_factor(m, x, tau);
    if (d != 0) sum += GaussianRational{d, 0} * value;
  }
  return sum;
}

bool verify_adjoint(const ParameterModel& m) {
  const Bits n = m.s_order();
  const auto taus = m.taus();
  std::vector<Rational> fwd(taus.size() * n), adj(taus.size() * n);
  for (std::size_t t = 0; t < taus.size(); ++t)
    for (Bits x = 0; x < n; ++x) {
      fwd[t * n + x] = transfer_factor(m, taus[t], x);
      adj[t * n + x] = adjoint_factor(m, x, taus[t]);
    }
  for (Bits x1 = 0; x1 < n; ++x1)
    for (Bits x2 = 0; x2 < n; ++x2) {
      Rational s = 0;
      for (std::size_t t = 0; t < taus.size(); ++t) s += adj[t * n + x1] * fwd[t * n + x2];
      if (s != (x1 == x2 ? 1 : 0)) return false;
    }
  for (std::size_t t1 = 0; t1 < taus.size(); ++t1)
    for (std::size_t t2 = 0; t2 < taus.size(); ++t2) {
      Rational s = 0;
      for (Bits x = 0; x < n; ++x) s += fwd[t1 * n + x] * adj[t2 * n + x];
      if (s != (t1 == t2 ? 1 : 0)) return false;
    }
  return true;
}

bool routes_agree(const ParameterModel& m) {
  for (const auto& tau : m.taus())
    for (Bits x = 0; x < m.s_order(); ++x) {
      if (transfer_factor(m, tau, x) != transfer_factor_closed(m, tau, x)) return false;
      if (adjoint_factor(m, x, tau) != adjoint_factor_closed(m, x, tau)) return false;
      if (transfer_factor(m, tau, x) * Rational(static_cast<std::int64_t>(m.s_order())) !=
          adjoint_factor(m, x, tau) * Rational(static_cast<std::int64_t>(m.r_order())))
        return false;
    }
  return true;
}

}  // namespace lts
