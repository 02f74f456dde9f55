#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bruhat/exec.hpp"
#include "bruhat/kset.hpp"
#include "bruhat/order.hpp"
#include "bruhat/report.hpp"

namespace bruhat {

enum class FlipDirection { up, down };

/// A packet that can be brought together by elementary swaps, the swaps that
/// do it, and the order after reversing the packet.
struct FlipResult {
  KSet generator;
  KOrder rearranged_order;
  /// Position p means entries p and p+1 of the running order were swapped.
  std::vector<std::size_t> swap_log;
  FlipDirection direction = FlipDirection::up;

  std::size_t moves() const noexcept { return swap_log.size(); }
};

struct SegmentResult {
  bool success = false;
  std::vector<KSet> segment;
  /// Swap positions relative to the start of the segment.
  std::vector<std::size_t> swap_log;
};

/// True iff elt shares a packet with no member of prefix.
bool move_down(std::span<const KSet> prefix, const KSet& elt);

/// Tries to move subexp[0] above the last packet member in subexp.
/// Recursion depth is capped at the segment length.
SegmentResult bubble_up(const KSet& head, std::span<const KSet> subexp, const Packet& packet);

/// Tries to make the packet contiguous inside its minimal slice.
SegmentResult come_together(std::span<const KSet> slice, const Packet& packet);

/// One result per packet that rho orders lexicographically and that some
/// elementary-equivalent order makes contiguous. For a partial domain only
/// packets full in the domain are candidates. Sorted by generator.
std::vector<FlipResult> find_flips(const KOrder& rho, Exec exec = Exec::serial);

/// The antilexicographic half, by running find_flips on the reversed order.
std::vector<FlipResult> find_flips_down(const KOrder& rho, Exec exec = Exec::serial);

/// Applies a swap log to rho; raises if any swap exchanges two k-sets that
/// share a packet.
KOrder replay_swaps(const KOrder& rho, std::span<const std::size_t> swaps);

/// Compares find_flips and find_flips_down with the class-enumeration oracle
/// on every admissible order of C(n,k), or on `random_orders` random ones.
Report verify_flip_oracle(int n, int k, std::size_t random_orders = 0, std::uint64_t seed = 0,
                          std::size_t class_cap = kDefaultClassCap);

}  // namespace bruhat
