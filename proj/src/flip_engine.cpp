#include "bruhat/flip_engine.hpp"

#include <algorithm>
#include <optional>
#include <random>

#include "bruhat/error.hpp"
#include "bruhat/packets.hpp"

namespace bruhat {

namespace {

bool is_member(const KSet& y, const KSet& generator) noexcept {
  return y.size() + 1 == generator.size() && y.is_subset_of(generator);
}

void swap_at(std::vector<KSet>& seq, std::size_t p, std::vector<std::size_t>& log) {
  std::swap(seq[p], seq[p + 1]);
  log.push_back(p);
}

// Moves seq[head] above seq[end] (the last packet member). Blockers outside
// the packet are pushed on an explicit stack and bubbled first; `end` tracks
// the last member as elements pass it.
bool bubble(std::vector<KSet>& seq, std::size_t head, std::size_t& end, const KSet& generator,
            std::vector<std::size_t>& log) {
  const std::size_t depth_cap = seq.size();
  std::vector<std::size_t> heads{head};
  while (!heads.empty()) {
    if (heads.size() > depth_cap) {
      throw LimitExceeded(ErrorKind::recursion_depth,
                          "bubble_up exceeded depth " + std::to_string(depth_cap),
                          heads.size());
    }
    const std::size_t cur = heads.back();
    if (cur > end) {
      heads.pop_back();
      continue;
    }
    const std::size_t next = cur + 1;
    if (!shares_packet(seq[cur], seq[next])) {
      swap_at(seq, cur, log);
      if (next == end) --end;
      heads.back() = next;
    } else if (is_member(seq[next], generator)) {
      return false;
    } else {
      heads.push_back(next);
    }
  }
  return true;
}

std::size_t require_member_at(std::span<const KSet> seg, const KSet& member, const char* what) {
  const auto it = std::find(seg.begin(), seg.end(), member);
  if (it == seg.end()) {
    fail(ErrorKind::malformed_slice,
         std::string(what) + " packet member " + member.to_string() + " is not in the segment");
  }
  return static_cast<std::size_t>(it - seg.begin());
}

bool together(std::vector<KSet>& seq, const Packet& packet, std::vector<std::size_t>& log) {
  const KSet& generator = packet.generator;
  std::size_t lo = 0;
  std::size_t hi = 0;
  std::size_t end = seq.size() - 1;
  while (hi != end) {
    const std::size_t next = hi + 1;
    if (is_member(seq[next], generator)) {
      ++hi;
      continue;
    }
    const std::span<const KSet> block(seq.data() + lo, hi - lo + 1);
    if (move_down(block, seq[next])) {
      for (std::size_t p = next; p > lo; --p) swap_at(seq, p - 1, log);
      ++lo;
      ++hi;
    } else if (!bubble(seq, next, end, generator, log)) {
      return false;
    }
  }
  return true;
}

std::optional<FlipResult> try_packet(const KOrder& rho, const std::vector<std::size_t>& where,
                                     const Packet& packet) {
  const std::size_t first = where.front();
  const std::size_t last = where.back();
  std::vector<KSet> seg(rho.begin() + static_cast<std::ptrdiff_t>(first),
                        rho.begin() + static_cast<std::ptrdiff_t>(last) + 1);
  std::vector<std::size_t> log;
  if (!together(seg, packet, log)) return std::nullopt;

  std::vector<KSet> seq = rho.sequence();
  std::copy(seg.begin(), seg.end(), seq.begin() + static_cast<std::ptrdiff_t>(first));
  const auto block = std::find(seq.begin(), seq.end(), packet.members.front());
  std::reverse(block, block + static_cast<std::ptrdiff_t>(packet.members.size()));
  for (auto& p : log) p += first;
  return FlipResult{packet.generator, KOrder(rho.n(), rho.k(), std::move(seq)), std::move(log),
                    FlipDirection::up};
}

}  // namespace

bool move_down(std::span<const KSet> prefix, const KSet& elt) {
  for (const KSet& x : prefix) {
    if (shares_packet(x, elt)) return false;
  }
  return true;
}

SegmentResult bubble_up(const KSet& head, std::span<const KSet> subexp, const Packet& packet) {
  if (subexp.empty() || subexp.front() != head) {
    fail(ErrorKind::malformed_slice, "bubble_up head must be the first segment entry");
  }
  std::size_t end = require_member_at(subexp, packet.members.back(), "last");
  SegmentResult out{false, std::vector<KSet>(subexp.begin(), subexp.end()), {}};
  if (is_member(head, packet.generator)) {
    fail(ErrorKind::malformed_slice, "bubble_up head " + head.to_string() + " is a packet member");
  }
  out.success = bubble(out.segment, 0, end, packet.generator, out.swap_log);
  return out;
}

SegmentResult come_together(std::span<const KSet> slice, const Packet& packet) {
  if (slice.empty() || slice.front() != packet.members.front() ||
      slice.back() != packet.members.back()) {
    fail(ErrorKind::malformed_slice,
         "slice must start and end with the first and last members of packet " +
             packet.generator.to_string());
  }
  std::size_t prev = 0;
  for (const KSet& member : packet.members) {
    const std::size_t at = require_member_at(slice, member, "a");
    if (at < prev) {
      fail(ErrorKind::malformed_slice,
           "packet " + packet.generator.to_string() + " is not in lex order in the slice");
    }
    prev = at;
  }
  SegmentResult out{false, std::vector<KSet>(slice.begin(), slice.end()), {}};
  out.success = together(out.segment, packet, out.swap_log);
  return out;
}

std::vector<FlipResult> find_flips(const KOrder& rho, Exec exec) {
  const auto table = PacketTable::get(rho.n(), rho.k());
  const auto& universe = table->ksets();
  std::vector<std::uint32_t> pos(universe.size(), UINT32_MAX);
  for (std::size_t i = 0; i < rho.size(); ++i) {
    pos[universe.rank(rho[i])] = static_cast<std::uint32_t>(i);
  }

  // Candidates: packets full in the domain and currently in lex order.
  std::vector<std::size_t> candidates;
  for (std::size_t g = 0; g < table->generator_count(); ++g) {
    bool ok = true;
    std::uint32_t prev = 0;
    bool first = true;
    for (std::uint32_t r : table->members(g)) {
      const std::uint32_t p = pos[r];
      if (p == UINT32_MAX || (!first && p < prev)) {
        ok = false;
        break;
      }
      prev = p;
      first = false;
    }
    if (ok) candidates.push_back(g);
  }

  std::vector<std::optional<FlipResult>> found(candidates.size());
  auto evaluate = [&](std::size_t i) {
    const std::size_t g = candidates[i];
    std::vector<std::size_t> where;
    for (std::uint32_t r : table->members(g)) where.push_back(pos[r]);
    found[i] = try_packet(rho, where, packet(table->generators().at(g)));
  };
  const long long count = static_cast<long long>(candidates.size());
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
    for (long long i = 0; i < count; ++i) evaluate(static_cast<std::size_t>(i));
  } else {
    for (long long i = 0; i < count; ++i) evaluate(static_cast<std::size_t>(i));
  }

  std::vector<FlipResult> out;
  for (auto& f : found) {
    if (f) out.push_back(std::move(*f));
  }
  return out;
}

std::vector<FlipResult> find_flips_down(const KOrder& rho, Exec exec) {
  std::vector<FlipResult> out = find_flips(rho.reversed(), exec);
  const std::size_t len = rho.size();
  for (auto& f : out) {
    f.rearranged_order = f.rearranged_order.reversed();
    for (auto& p : f.swap_log) p = len - 2 - p;
    f.direction = FlipDirection::down;
  }
  return out;
}

KOrder replay_swaps(const KOrder& rho, std::span<const std::size_t> swaps) {
  std::vector<KSet> seq = rho.sequence();
  for (std::size_t p : swaps) {
    if (p + 1 >= seq.size()) {
      fail(ErrorKind::invalid_arguments, "swap position " + std::to_string(p) + " out of range");
    }
    if (shares_packet(seq[p], seq[p + 1])) {
      fail(ErrorKind::not_a_chain, "swap at " + std::to_string(p) + " exchanges " +
                                       seq[p].to_string() + " and " + seq[p + 1].to_string() +
                                       ", which share a packet");
    }
    std::swap(seq[p], seq[p + 1]);
  }
  return KOrder(rho.n(), rho.k(), std::move(seq));
}

Report verify_flip_oracle(int n, int k, std::size_t random_orders, std::uint64_t seed,
                          std::size_t class_cap) {
  Report report("flip oracle at (" + std::to_string(n) + "," + std::to_string(k) + ")");
  std::size_t orders = 0;
  std::size_t up_bad = 0;
  std::size_t down_bad = 0;
  std::optional<std::string> up_witness;
  std::optional<std::string> down_witness;
  auto compare = [&](const KOrder& rho) {
    ++orders;
    const FlippableSplit split = flippable_bruteforce_split(rho, class_cap);
    auto names = [&](const std::vector<FlipResult>& flips) {
      KSetFamily f(n, k + 1);
      for (const auto& r : flips) f.insert(r.generator);
      return f;
    };
    if (names(find_flips(rho)) != split.lex && up_bad++ == 0) up_witness = rho.to_string();
    if (names(find_flips_down(rho)) != split.antilex && down_bad++ == 0) {
      down_witness = rho.to_string();
    }
  };
  if (random_orders == 0) {
    for_each_admissible_order(RealizableSet::full(n, k), compare);
  } else {
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < random_orders; ++i) compare(random_admissible_order(n, k, rng));
  }
  const std::string scope = std::to_string(orders) + (random_orders ? " random" : "") + " orders";
  report.add("find_flips equals the lexicographic brute-force split", up_bad == 0,
             scope + ", " + std::to_string(up_bad) + " mismatches", up_witness);
  report.add("find_flips_down equals the antilexicographic brute-force split", down_bad == 0,
             scope + ", " + std::to_string(down_bad) + " mismatches", down_witness);
  return report;
}

}  // namespace bruhat
