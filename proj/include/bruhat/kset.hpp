#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bruhat {

inline constexpr int kMaxGroundSet = 64;

/// A subset of {1..n}. Element x is stored as bit x-1 of the mask.
class KSet {
 public:
  KSet() = default;
  KSet(int n, std::initializer_list<int> elements);
  KSet(int n, std::span<const int> elements);

  static KSet from_mask(int n, std::uint64_t mask);

  int n() const noexcept { return n_; }
  int size() const noexcept { return std::popcount(mask_); }
  std::uint64_t mask() const noexcept { return mask_; }
  bool empty() const noexcept { return mask_ == 0; }

  bool contains(int x) const noexcept {
    return x >= 1 && x <= n_ && ((mask_ >> (x - 1)) & 1U);
  }
  bool is_subset_of(const KSet& other) const noexcept {
    return (mask_ & ~other.mask_) == 0;
  }

  std::vector<int> elements() const;
  int min() const;
  int max() const;

  /// The i-th smallest element, 1-based.
  int element(int i) const;

  /// x̂_i: this set with its i-th smallest element removed.
  KSet hat(int i) const;

  KSet without(int x) const;
  KSet with(int x) const;

  std::string to_string() const;

  friend bool operator==(const KSet& a, const KSet& b) noexcept {
    return a.mask_ == b.mask_ && a.n_ == b.n_;
  }
  friend std::strong_ordering operator<=>(const KSet& a, const KSet& b) noexcept;

 private:
  std::uint64_t mask_ = 0;
  int n_ = 0;
};

/// Lexicographic comparison of the sorted element sequences of two masks.
std::strong_ordering lex_compare(std::uint64_t a, std::uint64_t b) noexcept;

/// A generator together with its facets in lexicographic order,
/// x̂_{k+1} < ... < x̂_1.
struct Packet {
  KSet generator;
  std::vector<KSet> members;

  bool contains(const KSet& y) const noexcept {
    return y.size() + 1 == generator.size() && y.is_subset_of(generator);
  }
  /// Position of y in the lexicographic member order, or -1.
  int position(const KSet& y) const noexcept;
};

std::vector<KSet> enumerate_ksets(int n, int k);
Packet packet(const KSet& generator);
std::optional<KSet> shared_packet(const KSet& a, const KSet& b);

/// True when a and b lie in a common packet. Distinct same-size sets only.
inline bool shares_packet(const KSet& a, const KSet& b) noexcept {
  return std::popcount(a.mask() & b.mask()) + 1 == a.size() && a.mask() != b.mask();
}

void require_same_ground(const KSet& a, const KSet& b);

/// Parses "134", "1,3,14", "{1,3,14}" or "[1,3,14]".
KSet parse_kset(std::string_view text, int n);

}  // namespace bruhat

template <>
struct std::hash<bruhat::KSet> {
  std::size_t operator()(const bruhat::KSet& s) const noexcept {
    return std::hash<std::uint64_t>{}(s.mask() * 0x9E3779B97F4A7C15ULL ^
                                      static_cast<std::uint64_t>(s.n()));
  }
};
