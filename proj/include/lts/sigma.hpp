#pragma once

// sigma-constants of connected reductive groups, computed by solving
// e(S) = i(S) for the untwisted component at the central classes.

#include "lts/elliptic.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace lts {

class SigmaTable {
 public:
  struct Entry {
    Rational value;
    std::string cartan_type;
    std::vector<std::string> trace;
  };

  std::optional<Rational> lookup(const std::string& key) const;
  void store(const std::string& key, Entry entry);
  std::map<std::string, Entry> entries() const;

 private:
  mutable std::mutex mutex_;
  std::map<std::string, Entry> entries_;
};

Rational sigma(const RootDatum& d, SigmaTable& table);

struct EiTerm {
  TorusPoint rep;
  std::int64_t pi0;
  std::string centralizer_type;
  Rational sigma;
};

struct EiReport {
  Rational e;
  Rational i;
  bool equal = false;
  std::vector<EiTerm> terms;
};

EiReport verify_ei(const TwistedComponent& c, SigmaTable& table);

struct CentralQuotientReport {
  Rational sigma_d;
  Rational sigma_quotient;
  std::int64_t order;
  bool holds = false;
};

CentralQuotientReport verify_central_quotient(const RootDatum& d, const CentralSubgroup& z, SigmaTable& table);

}  // namespace lts
