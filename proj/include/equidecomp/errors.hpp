#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace equidecomp {

// Usage or precondition errors. The CLI maps these to exit status 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AlgebraError : public Error {
 public:
  enum class Kind { RationalAlpha, OutOfRange, EmptyInterval, Parse };

  AlgebraError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class GroupError : public Error {
 public:
  using Error::Error;
};

class GraphError : public Error {
 public:
  using Error::Error;
};

class DynamicsError : public Error {
 public:
  enum class Kind {
    InvalidK,
    InvalidWindow,
    InvalidMatching,
    EmptyS,
    SNotEmpty,
    IterationCap,
    NotAMatching,
  };

  DynamicsError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

enum class FindingKind {
  EvenPathComponent,
  OddCycleComponent,
  ConnectorMissing,
  IntermediateOutOfRange,
  LemmaViolation,
  Claim1Violation,
  ExtractionFailure,
};

std::string_view to_string(FindingKind kind);

/// A computed result that contradicts a statement of the underlying
/// mathematics. Carries a minimal witness; the CLI exits with status 3.
class Finding : public std::runtime_error {
 public:
  Finding(FindingKind kind, const std::string& what, nlohmann::ordered_json witness)
      : std::runtime_error(what), kind_(kind), witness_(std::move(witness)) {}

  FindingKind kind() const noexcept { return kind_; }
  const nlohmann::ordered_json& witness() const noexcept { return witness_; }

  nlohmann::ordered_json to_json() const;

 private:
  FindingKind kind_;
  nlohmann::ordered_json witness_;
};

}  // namespace equidecomp
