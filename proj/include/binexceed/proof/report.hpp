#pragma once

#include <string>
#include <variant>
#include <vector>

#include "binexceed/numeric/enclosure.hpp"

namespace binexceed::proof {

using numeric::BigInt;
using numeric::BigRational;
using numeric::Enclosure;

enum class StepVerdict { True, False, Undecided };

std::string to_string(StepVerdict v);

struct Witness {
  std::string name;
  std::variant<BigRational, Enclosure> value;
};

struct ProofStep {
  std::string step_id;
  std::string anchor;  // which argument of the proof this step checks
  StepVerdict verdict = StepVerdict::Undecided;
  std::vector<Witness> witnesses;
  std::string note;
};

/// Ordered record of proof-step verdicts. Serializes to JSON with one object
/// per step: {step_id, paper_anchor, verdict, witnesses, note}.
class ProofReport {
 public:
  explicit ProofReport(std::string title = {}) : title_(std::move(title)) {}

  const std::string& title() const { return title_; }
  const std::vector<ProofStep>& steps() const { return steps_; }
  const std::vector<std::string>& notes() const { return notes_; }

  ProofStep& add(ProofStep step);
  /// Shorthand for a step decided by a boolean.
  ProofStep& add(std::string step_id, std::string anchor, bool ok, std::vector<Witness> witnesses = {},
                 std::string note = {});
  void add_note(std::string note) { notes_.push_back(std::move(note)); }
  /// Appends all steps and notes of `other`, prefixing its step ids.
  void append(const ProofReport& other, const std::string& prefix = {});

  bool passed() const;        // every step TRUE (and at least one step)
  bool has_failure() const;   // some step FALSE
  bool has_undecided() const;
  const ProofStep* find(const std::string& step_id) const;

  std::string to_json(int indent = 2) const;
  /// Human-readable summary: counts, failing steps and notes.
  std::string summary() const;

 private:
  std::string title_;
  std::vector<ProofStep> steps_;
  std::vector<std::string> notes_;
};

Witness rational_witness(std::string name, const BigRational& value);
Witness enclosure_witness(std::string name, const Enclosure& value);

}  // namespace binexceed::proof
