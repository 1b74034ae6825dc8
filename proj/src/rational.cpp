#include "lts/rational.hpp"

#include "lts/error.hpp"

#include <cctype>

namespace lts {

std::string to_string(const Rational& q) {
  if (q == 0) return "0/1";
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  std::string out = num > 0 ? "+" : "-";
  out += (num > 0 ? num : BigInt(-num)).str();
  out += "/";
  out += den.str();
  return out;
}

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty()) {
    throw Error(ErrorKind::MalformedInput, "malformed rational '" + std::string(whole) + "'");
  }
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw Error(ErrorKind::MalformedInput, "malformed rational '" + std::string(whole) + "'");
    }
  }
  return BigInt(std::string(text));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  BigInt num = parse_integer(body.substr(0, slash), text);
  BigInt den = 1;
  if (slash != std::string_view::npos) {
    den = parse_integer(body.substr(slash + 1), text);
    if (den == 0) {
      throw Error(ErrorKind::MalformedInput, "zero denominator in '" + std::string(text) + "'");
    }
  }
  Rational q(num, den);
  return negative ? Rational(-q) : q;
}

std::string to_string(const GaussianRational& z) {
  return to_string(z.re) + (z.im == 0 ? "+" : "") + to_string(z.im) + "i";
}

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonCartan: return "NonCartan";
    case ErrorKind::InfiniteType: return "InfiniteType";
    case ErrorKind::NotCentral: return "NotCentral";
    case ErrorKind::NotAutomorphism: return "NotAutomorphism";
    case ErrorKind::InfiniteOrder: return "InfiniteOrder";
    case ErrorKind::TwistedUnsupported: return "TwistedUnsupported";
    case ErrorKind::RecursionCycle: return "RecursionCycle";
    case ErrorKind::MismatchedModel: return "MismatchedModel";
    case ErrorKind::MissingDualGroup: return "MissingDualGroup";
    case ErrorKind::InconsistentDescriptor: return "InconsistentDescriptor";
    case ErrorKind::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

}  // namespace lts
