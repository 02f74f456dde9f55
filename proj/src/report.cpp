#include "bruhat/report.hpp"

#include <json.hpp>

namespace bruhat {

Assertion& Report::add(std::string name, bool passed, std::string detail,
                       std::optional<std::string> witness) {
  assertions_.push_back({std::move(name), passed, std::move(detail), std::move(witness)});
  return assertions_.back();
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (const auto& a : other.assertions_) {
    Assertion copy = a;
    if (!prefix.empty()) copy.name = prefix + ": " + copy.name;
    assertions_.push_back(std::move(copy));
  }
}

bool Report::passed() const noexcept { return failures() == 0; }

std::size_t Report::failures() const noexcept {
  std::size_t count = 0;
  for (const auto& a : assertions_) count += a.passed ? 0 : 1;
  return count;
}

std::string Report::to_json(int indent) const {
  nlohmann::ordered_json doc;
  doc["schema"] = kSchema;
  doc["report"] = title_;
  doc["status"] = passed() ? "pass" : "fail";
  auto& list = doc["assertions"] = nlohmann::ordered_json::array();
  for (const auto& a : assertions_) {
    nlohmann::ordered_json item;
    item["assertion"] = a.name;
    item["status"] = a.passed ? "pass" : "fail";
    if (a.witness) item["witness"] = *a.witness;
    if (!a.detail.empty()) item["detail"] = a.detail;
    list.push_back(std::move(item));
  }
  return doc.dump(indent);
}

std::string Report::to_text() const {
  std::string out = title_ + ": " + (passed() ? "pass" : "FAIL") + "\n";
  for (const auto& a : assertions_) {
    out += std::string("  [") + (a.passed ? "pass" : "FAIL") + "] " + a.name;
    if (!a.detail.empty()) out += " (" + a.detail + ")";
    if (a.witness) out += " witness: " + *a.witness;
    out += "\n";
  }
  return out;
}

}  // namespace bruhat
