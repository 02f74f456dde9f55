#pragma once

#include <optional>
#include <string>
#include <vector>

namespace bruhat {

inline constexpr const char* kSchema = "bruhat/1";

struct Assertion {
  std::string name;
  bool passed = false;
  std::string detail;
  std::optional<std::string> witness;
};

/// Pass/fail list produced by the verification operations.
class Report {
 public:
  explicit Report(std::string title) : title_(std::move(title)) {}

  Assertion& add(std::string name, bool passed, std::string detail = {},
                 std::optional<std::string> witness = std::nullopt);
  /// Appends other's assertions with "prefix: " in front of each name.
  void merge(const Report& other, const std::string& prefix = {});

  const std::string& title() const noexcept { return title_; }
  const std::vector<Assertion>& assertions() const noexcept { return assertions_; }
  bool passed() const noexcept;
  std::size_t failures() const noexcept;

  std::string to_json(int indent = 2) const;
  std::string to_text() const;

 private:
  std::string title_;
  std::vector<Assertion> assertions_;
};

}  // namespace bruhat
