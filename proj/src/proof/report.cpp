#include "binexceed/proof/report.hpp"

#include <json.hpp>
#include <sstream>

namespace binexceed::proof {

std::string to_string(StepVerdict v) {
  switch (v) {
    case StepVerdict::True: return "TRUE";
    case StepVerdict::False: return "FALSE";
    case StepVerdict::Undecided: return "UNDECIDED";
  }
  return "UNDECIDED";
}

ProofStep& ProofReport::add(ProofStep step) {
  steps_.push_back(std::move(step));
  return steps_.back();
}

ProofStep& ProofReport::add(std::string step_id, std::string anchor, bool ok, std::vector<Witness> witnesses,
                            std::string note) {
  return add(ProofStep{std::move(step_id), std::move(anchor), ok ? StepVerdict::True : StepVerdict::False,
                       std::move(witnesses), std::move(note)});
}

void ProofReport::append(const ProofReport& other, const std::string& prefix) {
  for (ProofStep step : other.steps_) {
    step.step_id = prefix + step.step_id;
    steps_.push_back(std::move(step));
  }
  notes_.insert(notes_.end(), other.notes_.begin(), other.notes_.end());
}

bool ProofReport::passed() const {
  if (steps_.empty()) return false;
  for (const ProofStep& s : steps_) {
    if (s.verdict != StepVerdict::True) return false;
  }
  return true;
}

bool ProofReport::has_failure() const {
  for (const ProofStep& s : steps_) {
    if (s.verdict == StepVerdict::False) return true;
  }
  return false;
}

bool ProofReport::has_undecided() const {
  for (const ProofStep& s : steps_) {
    if (s.verdict == StepVerdict::Undecided) return true;
  }
  return false;
}

const ProofStep* ProofReport::find(const std::string& step_id) const {
  for (const ProofStep& s : steps_) {
    if (s.step_id == step_id) return &s;
  }
  return nullptr;
}

std::string ProofReport::to_json(int indent) const {
  nlohmann::ordered_json doc;
  doc["title"] = title_;
  doc["passed"] = passed();
  auto steps = nlohmann::ordered_json::array();
  for (const ProofStep& s : steps_) {
    nlohmann::ordered_json step;
    step["step_id"] = s.step_id;
    step["paper_anchor"] = s.anchor;
    step["verdict"] = to_string(s.verdict);
    auto witnesses = nlohmann::ordered_json::array();
    for (const Witness& w : s.witnesses) {
      nlohmann::ordered_json item;
      item["name"] = w.name;
      if (const auto* r = std::get_if<BigRational>(&w.value)) {
        item["rational"] = r->fraction_str();
      } else {
        const auto& e = std::get<Enclosure>(w.value);
        item["enclosure"] = {e.lo().fraction_str(), e.hi().fraction_str()};
      }
      witnesses.push_back(std::move(item));
    }
    step["witnesses"] = std::move(witnesses);
    if (!s.note.empty()) step["note"] = s.note;
    steps.push_back(std::move(step));
  }
  doc["steps"] = std::move(steps);
  doc["notes"] = notes_;
  return doc.dump(indent) + "\n";
}

std::string ProofReport::summary() const {
  std::size_t ok = 0;
  std::size_t bad = 0;
  std::size_t undecided = 0;
  for (const ProofStep& s : steps_) {
    if (s.verdict == StepVerdict::True) ++ok;
    if (s.verdict == StepVerdict::False) ++bad;
    if (s.verdict == StepVerdict::Undecided) ++undecided;
  }
  std::ostringstream os;
  os << title_ << ": " << steps_.size() << " steps, " << ok << " TRUE, " << bad << " FALSE, " << undecided
     << " UNDECIDED\n";
  for (const ProofStep& s : steps_) {
    if (s.verdict == StepVerdict::True) continue;
    os << "  " << to_string(s.verdict) << "  " << s.step_id;
    if (!s.note.empty()) os << "  (" << s.note << ")";
    os << "\n";
  }
  for (const std::string& note : notes_) os << "  note: " << note << "\n";
  return os.str();
}

Witness rational_witness(std::string name, const BigRational& value) { return Witness{std::move(name), value}; }

Witness enclosure_witness(std::string name, const Enclosure& value) { return Witness{std::move(name), value}; }

}  // namespace binexceed::proof
