#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "bruhat/family.hpp"
#include "bruhat/realizability.hpp"

namespace bruhat {

inline constexpr std::size_t kDefaultClassCap = 1'000'000;

/// A total order on a collection of k-sets from C(n,k). The domain is the set
/// of its elements.
class KOrder {
 public:
  KOrder() = default;
  KOrder(int n, int k, std::vector<KSet> sequence);

  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  std::size_t size() const noexcept { return sequence_.size(); }
  bool empty() const noexcept { return sequence_.empty(); }
  const std::vector<KSet>& sequence() const noexcept { return sequence_; }
  const KSet& operator[](std::size_t i) const { return sequence_[i]; }
  auto begin() const noexcept { return sequence_.begin(); }
  auto end() const noexcept { return sequence_.end(); }

  KSetFamily domain() const;
  bool is_full() const;
  KOrder reversed() const;

  /// Lex ranks of the elements in order.
  std::vector<std::uint32_t> ranks() const;
  static KOrder from_ranks(int n, int k, const std::vector<std::uint32_t>& ranks);

  /// "23<13<24".
  std::string to_string() const;

  friend bool operator==(const KOrder& a, const KOrder& b) noexcept {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.sequence_ == b.sequence_;
  }
  friend std::strong_ordering operator<=>(const KOrder& a, const KOrder& b) noexcept;

 private:
  int n_ = 0;
  int k_ = 0;
  std::vector<KSet> sequence_;
};

/// Parses "23<13<24" (or a single k-set). When k <= 0 it is taken from the
/// first entry.
KOrder parse_order(std::string_view text, int n, int k = 0);

KOrder lex_order(int n, int k);
KOrder antilex_order(int n, int k);

class InversionSet {
 public:
  InversionSet() = default;
  explicit InversionSet(KSetFamily members) : members_(std::move(members)) {}

  const KSetFamily& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool contains(const KSet& x) const { return members_.contains(x); }
  std::string to_string() const { return members_.to_string(); }

  friend bool operator==(const InversionSet& a, const InversionSet& b) noexcept = default;
  friend std::strong_ordering operator<=>(const InversionSet& a,
                                          const InversionSet& b) noexcept {
    return a.members_ <=> b.members_;
  }

 private:
  KSetFamily members_;
};

struct AdmissibilityCheck {
  bool admissible = true;
  std::vector<KSet> violations;

  explicit operator bool() const noexcept { return admissible; }
};

/// Full-domain admissibility; raises domain-mismatch on a partial order.
AdmissibilityCheck is_admissible(const KOrder& rho);

/// Admissibility as a J-order; raises domain-mismatch unless rho orders J.
AdmissibilityCheck is_admissible_on(const KOrder& rho, const RealizableSet& j);

/// Full domain when rho orders all of C(n,k), otherwise its own domain, which
/// must be realizable.
AdmissibilityCheck check_order(const KOrder& rho);

InversionSet inversion_set(const KOrder& rho);

KOrder transpose(const KOrder& rho);

std::vector<KOrder> elementary_neighbors(const KOrder& rho);

struct EquivalenceClass {
  std::vector<KOrder> members;  // sorted; members.front() is the representative
  const KOrder& representative() const { return members.front(); }
};

/// BFS closure under elementary swaps; raises cap-exceeded past `cap` members.
EquivalenceClass equivalence_class(const KOrder& rho, std::size_t cap = kDefaultClassCap);

/// N(ρ): generators full in the domain whose packet is contiguous in rho.
KSetFamily flippable_in(const KOrder& rho);

struct FlippableSplit {
  KSetFamily lex;      // packets the class orders lexicographically
  KSetFamily antilex;  // packets the class orders antilexicographically
};

/// N([ρ]) by enumerating the class.
KSetFamily flippable_bruteforce(const KOrder& rho, std::size_t cap = kDefaultClassCap);
FlippableSplit flippable_bruteforce_split(const KOrder& rho, std::size_t cap = kDefaultClassCap);

/// Reverses the contiguous packet P_X; raises not-a-chain when it is split.
KOrder packet_flip(const KOrder& rho, const KSet& x);

/// The lexicographically smallest admissible J-order whose inversion set is
/// `inv`, or none if no admissible J-order has that inversion set.
std::optional<KOrder> canonical_order(const RealizableSet& j, const KSetFamily& inv);

/// Calls `visit` on every admissible J-order (DFS on packet constraints).
/// Returns the number visited; raises cap-exceeded past `cap`.
std::size_t for_each_admissible_order(const RealizableSet& j,
                                      const std::function<void(const KOrder&)>& visit,
                                      std::size_t cap = kDefaultClassCap);

/// A random admissible order on C(n,k) built by adding elements while the
/// prefix stays realizable.
KOrder random_admissible_order(int n, int k, std::mt19937_64& rng);

/// A random realizable subset of C(n,k): a random-length prefix of a random
/// admissible order.
KSetFamily random_realizable_set(int n, int k, std::mt19937_64& rng);

}  // namespace bruhat

template <>
struct std::hash<bruhat::InversionSet> {
  std::size_t operator()(const bruhat::InversionSet& s) const noexcept {
    return s.members().hash();
  }
};
