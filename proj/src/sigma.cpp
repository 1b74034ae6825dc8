#include "lts/sigma.hpp"

#include "lts/error.hpp"

#include <stdexcept>

namespace lts {

std::optional<Rational> SigmaTable::lookup(const std::string& key) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second.value;
}

void SigmaTable::store(const std::string& key, Entry entry) {
  std::lock_guard<std::mutex> lock(mutex_);
  entries_[key] = std::move(entry);
}

std::map<std::string, SigmaTable::Entry> SigmaTable::entries() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return entries_;
}

Rational sigma(const RootDatum& d, SigmaTable& table) {
  const std::string key = canonical_key(d);
  if (auto hit = table.lookup(key)) return *hit;

  SigmaTable::Entry entry;
  entry.cartan_type = cartan_type(d);
  if (d.central_rank() > 0) {
    entry.value = 0;
    entry.trace.push_back("central torus of rank " + std::to_string(d.central_rank()));
  } else if (d.rank() == 0) {
    entry.value = 1;
    entry.trace.push_back("rank 0");
  } else {
    const TwistedComponent c = untwisted_component(d);
    const Rational i = i_number(c);
    entry.trace.push_back("i=" + to_string(i));
    Rational rest = 0;
    std::int64_t central = 0;
    for (const auto& s : elliptic_classes(c)) {
      if (s.central) {
        if (s.pi0 != 1) throw std::logic_error("central elliptic class with disconnected centralizer");
        ++central;
        continue;
      }
      if (canonical_key(s.centralizer_datum) == key)
        throw Error(ErrorKind::RecursionCycle, "non-central class with the centralizer of the whole group");
      const Rational term = sigma(s.centralizer_datum, table) / Rational(s.pi0);
      entry.trace.push_back(cartan_type(s.centralizer_datum) + "/" + std::to_string(s.pi0) + "=" + to_string(term));
      rest += term;
    }
    if (central == 0) throw std::logic_error("no central elliptic class");
    entry.trace.push_back("central=" + std::to_string(central));
    entry.value = (i - rest) / Rational(central);
  }
  const Rational value = entry.value;
  table.store(key, std::move(entry));
  return value;
}

EiReport verify_ei(const TwistedComponent& c, SigmaTable& table) {
  EiReport r;
  r.i = i_number(c);
  r.e = 0;
  for (const auto& s : elliptic_classes(c)) {
    EiTerm t{s.rep, s.pi0, cartan_type(s.centralizer_datum), sigma(s.centralizer_datum, table)};
    r.e += t.sigma / Rational(t.pi0);
    r.terms.push_back(std::move(t));
  }
  r.equal = r.e == r.i;
  return r;
}

CentralQuotientReport verify_central_quotient(const RootDatum& d, const CentralSubgroup& z, SigmaTable& table) {
  CentralQuotientReport r;
  const auto q = quotient_by_central(d, z);
  r.sigma_d = sigma(d, table);
  r.sigma_quotient = sigma(q.datum, table);
  r.order = z.order;
  r.holds = r.sigma_d == r.sigma_quotient / Rational(z.order);
  return r;
}

}  // namespace lts
