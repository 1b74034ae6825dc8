#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lts {

enum class ErrorKind {
  NonCartan,
  InfiniteType,
  NotCentral,
  NotAutomorphism,
  InfiniteOrder,
  TwistedUnsupported,
  RecursionCycle,
  MismatchedModel,
  MissingDualGroup,
  InconsistentDescriptor,
  MalformedInput,
};

std::string_view error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lts
