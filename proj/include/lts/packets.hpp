#pragma once

// Finite models of a parameter: S = S_M x R (elementary abelian 2-groups),
// packets, spectral transfer factors and their adjoints.

#include "lts/weylcoset.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace lts {

using Bits = std::uint32_t;

struct TwoGroup {
  int dimension = 0;
  Bits order() const { return Bits{1} << dimension; }
};

// (-1)^{<chi, x>} for characters and elements written as bit masks.
inline int character(Bits chi, Bits x) { return __builtin_popcount(chi & x) % 2 ? -1 : 1; }

// tau = (eta, r): eta a character of S_M, r in R.
struct Tau {
  int model = 0;
  Bits eta = 0;
  Bits r = 0;
  friend auto operator<=>(const Tau&, const Tau&) = default;
};

struct DualGroupModel {
  RootDatum base;
  std::vector<TwistedComponent> components;  // indexed by x in S
};

class ParameterModel {
 public:
  ParameterModel(int id, int sm_dim, int r_dim);

  int id() const { return id_; }
  TwoGroup s_m() const { return {sm_dim_}; }
  TwoGroup r() const { return {r_dim_}; }
  Bits s_order() const { return Bits{1} << (sm_dim_ + r_dim_); }
  Bits s_m_order() const { return Bits{1} << sm_dim_; }
  Bits r_order() const { return Bits{1} << r_dim_; }

  // x = x_M + r: low bits carry x_M, high bits r.
  Bits x_m(Bits x) const { return x & (s_m_order() - 1); }
  Bits r_part(Bits x) const { return x >> sm_dim_; }
  Bits compose(Bits x_m, Bits r) const { return x_m | (r << sm_dim_); }

  std::vector<Tau> taus() const;
  Bits iota(const Tau& t) const { return compose(t.eta, t.r); }

  // <phi^x, Pi^chi>, chi a character of S. Defaults to chi(x).
  int pairing(Bits x, Bits chi) const { return pairing_[x * s_order() + chi]; }
  void set_pairing(Bits x, Bits chi, int value) { pairing_[x * s_order() + chi] = value; }

  // thetas: x -> matrix; missing entries are filled multiplicatively from
  // the basis elements, x = 0 defaults to the identity. Checks the cocycle
  // condition modulo W(base).
  void attach_dual_group(const RootDatum& base, const std::map<Bits, IntMatrix>& thetas);
  const std::optional<DualGroupModel>& dual_group() const { return dual_; }

 private:
  int id_;
  int sm_dim_;
  int r_dim_;
  std::vector<int> pairing_;
  std::optional<DualGroupModel> dual_;
};

// Character-sum routes through the pairing table.
Rational transfer_factor(const ParameterModel& m, const Tau& tau, Bits x);
Rational adjoint_factor(const ParameterModel& m, Bits x, const Tau& tau);
// Closed forms.
Rational transfer_factor_closed(const ParameterModel& m, const Tau& tau, Bits x);
Rational adjoint_factor_closed(const ParameterModel& m, Bits x, const Tau& tau);

struct TestVector {
  std::map<std::pair<int, Bits>, GaussianRational> values;
  GaussianRational at(int model, Bits x) const;
  void set(int model, Bits x, GaussianRational v) { values[{model, x}] = std::move(v); }
};

GaussianRational theta_transfer(const ParameterModel& m, const Tau& tau, const TestVector& f);
GaussianRational invert_transfer(const ParameterModel& m, Bits x, const std::map<Tau, GaussianRational>& theta);

bool verify_adjoint(const ParameterModel& m);
bool routes_agree(const ParameterModel& m);

}  // namespace lts
