#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bruhat/realizability.hpp"
#include "bruhat/report.hpp"

namespace bruhat {

/// An N-periodic permutation of Z given by the images of 1..N.
class PeriodicPermutation {
 public:
  PeriodicPermutation(int period, std::vector<long long> base);

  static PeriodicPermutation identity(int period);
  /// Letters 0..N; s_0 and s_N both swap N and N+1 periodically. The word
  /// acts rightmost letter first.
  static PeriodicPermutation from_word(int period, const std::vector<int>& letters);

  int period() const noexcept { return period_; }
  const std::vector<long long>& base() const noexcept { return base_; }
  long long operator()(long long x) const;

  /// Largest |w(i) - i|.
  long long displacement() const noexcept;

  friend bool operator==(const PeriodicPermutation&, const PeriodicPermutation&) = default;
  friend auto operator<=>(const PeriodicPermutation&, const PeriodicPermutation&) = default;

 private:
  int period_;
  std::vector<long long> base_;
};

/// Accepts "s0 s1 s2" style tokens or digit strings over 0..N.
std::vector<int> parse_affine_word(std::string_view text, int period);

/// A class of k-subsets of Z modulo diagonal shifts by N, stored by the
/// representative whose minimum lies in [0, N-1].
class AffineKSet {
 public:
  AffineKSet() = default;
  AffineKSet(int period, std::vector<long long> elements);

  int period() const noexcept { return period_; }
  int size() const noexcept { return static_cast<int>(rep_.size()); }
  const std::vector<long long>& rep() const noexcept { return rep_; }

  /// True when two entries are congruent mod N (a member of Y_k).
  bool degenerate() const noexcept;

  /// "[1,3,4]@3".
  std::string to_string() const;

  friend bool operator==(const AffineKSet&, const AffineKSet&) = default;
  friend auto operator<=>(const AffineKSet&, const AffineKSet&) = default;

 private:
  int period_ = 0;
  std::vector<long long> rep_;
};

/// Parses "[1,3,4]@3"; the "@N" suffix may be omitted when period > 0.
AffineKSet parse_affine_kset(std::string_view text, int period = 0);

struct AffinePacket {
  AffineKSet generator;
  /// [x̂_{k+1}] < ... < [x̂_1]; degenerate members keep their positions.
  std::vector<AffineKSet> members;

  int position(const AffineKSet& y) const noexcept;
};

AffinePacket affine_packet(const AffineKSet& x);

/// True when some shift of b together with a spans k+1 integers.
bool affine_shares_packet(const AffineKSet& a, const AffineKSet& b);

using AffineSet = std::vector<AffineKSet>;  // sorted, unique

AffineSet make_affine_set(std::vector<AffineKSet> items);

/// Inv(w) as classes [x,y] with x < y and w(y) < w(x).
AffineSet affine_word_inversions(const PeriodicPermutation& w);

/// Generators whose packet meets S in two or more members, or in a single
/// member that is neither first nor last. Every other packet meets S in a
/// prefix or suffix.
AffineSet relevant_generators(const AffineSet& s);

struct AffineRealizability {
  bool realizable = true;
  std::optional<AffineKSet> generator;
  std::string pattern;

  explicit operator bool() const noexcept { return realizable; }
};

/// Raises degenerate-input if S meets Y_k.
AffineRealizability affine_check_realizable(const AffineSet& s);

/// The finite relevant part of the partition: only generators meeting J in at
/// least two members are listed.
struct AffinePartition {
  AffineSet suffix;
  AffineSet prefix;
  AffineSet full;
};

AffinePartition affine_partition(const AffineSet& j);

/// Calls visit on every admissible order of J; raises not-realizable when J is
/// not realizable and budget-exceeded past `cap` orders.
std::size_t affine_admissible_orders(const AffineSet& j,
                                     const std::function<void(const std::vector<AffineKSet>&)>& visit,
                                     std::size_t cap = 1'000'000);

/// Inv(ρ) ∩ J_F: the part of the inversion set that differs between orders.
AffineSet affine_order_flips(const std::vector<AffineKSet>& order, const AffinePartition& part);

/// Empirical source/sink search over the elementary-equivalence classes of
/// admissible J-orders, linked by packet flips.
struct AffineClassSummary {
  std::size_t orders = 0;
  std::size_t classes = 0;
  std::size_t sources = 0;
  std::size_t sinks = 0;
  bool source_has_js = false;       // Inv ∩ J_F = ∅ at the unique source
  bool sink_has_js_jf = false;      // Inv ∩ J_F = J_F at the unique sink
  bool inv_determines_class = false;
};

AffineClassSummary affine_source_sink(const AffineSet& j, std::size_t cap = 1'000'000);

/// The summary as assertions, labelled empirical.
Report affine_source_sink_report(const AffineSet& j, std::size_t cap = 1'000'000);

std::string to_string(const AffineSet& s);

}  // namespace bruhat
