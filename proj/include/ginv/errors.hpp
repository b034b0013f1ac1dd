#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ginv/matrix.hpp"

namespace ginv {

using NamedMatrices = std::vector<std::pair<std::string, Matrix>>;

/// One entry of a hypothesis / identity checklist.
struct Check {
  std::string name;
  bool holds = false;
};

/// Malformed input: bad JSON, bad fraction, non-prime modulus, unknown key.
class InputError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its domain (e.g. a non-idempotent p).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A hypothesis of a closed-form result does not hold, so the formula does
/// not apply. This is a value-level outcome, not a bug.
class HypothesisNotMet : public Error {
 public:
  HypothesisNotMet(std::string hypothesis, std::string detail,
                   std::vector<Check> checklist = {}, NamedMatrices witnesses = {})
      : Error(hypothesis + ": " + detail),
        hypothesis_(std::move(hypothesis)),
        detail_(std::move(detail)),
        checklist_(std::move(checklist)),
        witnesses_(std::move(witnesses)) {}

  const std::string& hypothesis() const { return hypothesis_; }
  const std::string& detail() const { return detail_; }
  const std::vector<Check>& checklist() const { return checklist_; }
  const NamedMatrices& witnesses() const { return witnesses_; }

 private:
  std::string hypothesis_;
  std::string detail_;
  std::vector<Check> checklist_;
  NamedMatrices witnesses_;
};

/// An identity that must hold whenever the hypotheses hold has failed.
/// Carries every input needed to replay the failure.
class InvariantViolation : public Error {
 public:
  InvariantViolation(std::string assertion, NamedMatrices counterexample)
      : Error("invariant violated: " + assertion),
        assertion_(std::move(assertion)),
        counterexample_(std::move(counterexample)) {}

  const std::string& assertion() const { return assertion_; }
  const NamedMatrices& counterexample() const { return counterexample_; }

 private:
  std::string assertion_;
  NamedMatrices counterexample_;
};

/// Records hypotheses and identities for one operation call. `require`
/// failures raise HypothesisNotMet, `ensure` failures raise
/// InvariantViolation; both carry the inputs the audit was opened with.
class Audit {
 public:
  explicit Audit(NamedMatrices inputs) : inputs_(std::move(inputs)) {}

  void require(const std::string& name, bool holds, const std::string& detail = "does not hold",
               NamedMatrices witnesses = {}) {
    checks_.push_back({name, holds});
    if (!holds) throw HypothesisNotMet(name, detail, checks_, std::move(witnesses));
  }

  void ensure(const std::string& name, bool holds) {
    checks_.push_back({name, holds});
    if (!holds) throw InvariantViolation(name, inputs_);
  }

  /// Records without throwing; used for diagnostics that are logged only.
  void note(const std::string& name, bool holds) { checks_.push_back({name, holds}); }

  const NamedMatrices& inputs() const { return inputs_; }
  const std::vector<Check>& checks() const { return checks_; }
  std::vector<Check> take() { return std::move(checks_); }

 private:
  NamedMatrices inputs_;
  std::vector<Check> checks_;
};

}  // namespace ginv
