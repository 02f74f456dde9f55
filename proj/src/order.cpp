#include "bruhat/order.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <queue>
#include <unordered_set>

#include "bruhat/error.hpp"
#include "bruhat/packets.hpp"

namespace bruhat {

namespace {

constexpr std::uint32_t kAbsent = UINT32_MAX;

struct RankVectorHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto x : v) h = (h ^ x) * 0x100000001b3ULL;
    return static_cast<std::size_t>(h);
  }
};

/// Position of every k-set of C(n,k) in rho, kAbsent when outside the domain.
std::vector<std::uint32_t> positions_by_rank(const KOrder& rho, const KSetUniverse& universe) {
  std::vector<std::uint32_t> pos(universe.size(), kAbsent);
  for (std::size_t i = 0; i < rho.size(); ++i) {
    pos[universe.rank(rho[i])] = static_cast<std::uint32_t>(i);
  }
  return pos;
}

enum class Orientation { unconstrained, lex, antilex, mixed };

Orientation orientation(const PacketTable& table, std::size_t g,
                        const std::vector<std::uint32_t>& pos) {
  std::uint32_t prev = kAbsent;
  int present = 0;
  bool up = true;
  bool down = true;
  for (std::uint32_t r : table.members(g)) {
    const std::uint32_t p = pos[r];
    if (p == kAbsent) continue;
    if (present > 0) {
      if (p < prev) up = false;
      if (p > prev) down = false;
    }
    prev = p;
    ++present;
  }
  if (present < 2) return Orientation::unconstrained;
  if (up) return Orientation::lex;
  if (down) return Orientation::antilex;
  return Orientation::mixed;
}

bool full_in_domain(const PacketTable& table, std::size_t g,
                    const std::vector<std::uint32_t>& pos) {
  for (std::uint32_t r : table.members(g)) {
    if (pos[r] == kAbsent) return false;
  }
  return true;
}

AdmissibilityCheck check_against(const KOrder& rho, const Partition& part,
                                 const PacketTable& table) {
  const auto pos = positions_by_rank(rho, table.ksets());
  AdmissibilityCheck out;
  for (std::size_t g = 0; g < table.generator_count(); ++g) {
    const Orientation o = orientation(table, g, pos);
    if (o == Orientation::unconstrained) continue;
    bool ok = false;
    switch (part.class_of_rank(g)) {
      case PacketClass::suffix: ok = o == Orientation::antilex; break;
      case PacketClass::prefix: ok = o == Orientation::lex; break;
      case PacketClass::full: ok = o == Orientation::lex || o == Orientation::antilex; break;
      default: ok = false; break;
    }
    if (!ok) {
      out.admissible = false;
      out.violations.push_back(table.generators().at(g));
    }
  }
  return out;
}

RealizableSet domain_set(const KOrder& rho) {
  auto j = RealizableSet::try_make(rho.domain());
  if (!j) {
    fail(ErrorKind::not_realizable,
         "the domain of " + rho.to_string() + " is not a realizable set");
  }
  return std::move(*j);
}

}  // namespace

KOrder::KOrder(int n, int k, std::vector<KSet> sequence)
    : n_(n), k_(k), sequence_(std::move(sequence)) {
  if (n < 1 || n > kMaxGroundSet || k < 1 || k > n) {
    fail(ErrorKind::invalid_arguments,
         "bad order ambient n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
  std::unordered_set<std::uint64_t> seen;
  for (std::size_t i = 0; i < sequence_.size(); ++i) {
    const KSet& s = sequence_[i];
    if (s.n() != n || s.size() != k) {
      fail(ErrorKind::invalid_arguments, "entry " + std::to_string(i + 1) + " (" +
                                             s.to_string() + ") is not a " + std::to_string(k) +
                                             "-subset of [" + std::to_string(n) + "]");
    }
    if (!seen.insert(s.mask()).second) {
      const auto it = std::find(sequence_.begin(), sequence_.end(), s);
      fail(ErrorKind::invalid_arguments,
           "entry " + std::to_string(i + 1) + " (" + s.to_string() + ") duplicates entry " +
               std::to_string(static_cast<std::size_t>(it - sequence_.begin()) + 1));
    }
  }
}

KSetFamily KOrder::domain() const { return KSetFamily::of(n_, k_, sequence_); }

bool KOrder::is_full() const { return sequence_.size() == binomial(n_, k_); }

KOrder KOrder::reversed() const {
  std::vector<KSet> seq(sequence_.rbegin(), sequence_.rend());
  return KOrder(n_, k_, std::move(seq));
}

std::vector<std::uint32_t> KOrder::ranks() const {
  const auto universe = KSetUniverse::get(n_, k_);
  std::vector<std::uint32_t> out;
  out.reserve(sequence_.size());
  for (const auto& s : sequence_) out.push_back(static_cast<std::uint32_t>(universe->rank(s)));
  return out;
}

KOrder KOrder::from_ranks(int n, int k, const std::vector<std::uint32_t>& ranks) {
  const auto universe = KSetUniverse::get(n, k);
  std::vector<KSet> seq;
  seq.reserve(ranks.size());
  for (auto r : ranks) seq.push_back(universe->at(r));
  return KOrder(n, k, std::move(seq));
}

std::string KOrder::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < sequence_.size(); ++i) {
    if (i) out += '<';
    out += sequence_[i].to_string();
  }
  return out;
}

std::strong_ordering operator<=>(const KOrder& a, const KOrder& b) noexcept {
  if (a.n_ != b.n_) return a.n_ <=> b.n_;
  if (a.k_ != b.k_) return a.k_ <=> b.k_;
  return std::lexicographical_compare_three_way(a.sequence_.begin(), a.sequence_.end(),
                                                b.sequence_.begin(), b.sequence_.end());
}

KOrder parse_order(std::string_view text, int n, int k) {
  std::vector<KSet> seq;
  std::size_t start = 0;
  std::size_t index = 1;
  while (start <= text.size()) {
    std::size_t stop = text.find('<', start);
    if (stop == std::string_view::npos) stop = text.size();
    std::string_view token = text.substr(start, stop - start);
    while (!token.empty() && std::isspace(static_cast<unsigned char>(token.front()))) {
      token.remove_prefix(1);
    }
    while (!token.empty() && std::isspace(static_cast<unsigned char>(token.back()))) {
      token.remove_suffix(1);
    }
    if (token.empty()) {
      if (text.empty()) break;
      fail(ErrorKind::parse_error, "entry " + std::to_string(index) + " is empty");
    }
    try {
      seq.push_back(parse_kset(token, n));
    } catch (const Error& e) {
      fail(ErrorKind::parse_error, "entry " + std::to_string(index) + ": " + e.what());
    }
    if (k <= 0) k = seq.front().size();
    if (seq.back().size() != k) {
      fail(ErrorKind::parse_error, "entry " + std::to_string(index) + " (" +
                                       std::string(token) + ") has size " +
                                       std::to_string(seq.back().size()) + ", expected " +
                                       std::to_string(k));
    }
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
      if (seq[i] == seq.back()) {
        fail(ErrorKind::parse_error, "entry " + std::to_string(index) + " (" +
                                         std::string(token) + ") duplicates entry " +
                                         std::to_string(i + 1));
      }
    }
    start = stop + 1;
    ++index;
  }
  if (k <= 0) fail(ErrorKind::parse_error, "empty order needs an explicit k");
  return KOrder(n, k, std::move(seq));
}

KOrder lex_order(int n, int k) { return KOrder(n, k, enumerate_ksets(n, k)); }

KOrder antilex_order(int n, int k) { return lex_order(n, k).reversed(); }

AdmissibilityCheck is_admissible(const KOrder& rho) {
  if (!rho.is_full()) {
    fail(ErrorKind::domain_mismatch, "order has " + std::to_string(rho.size()) +
                                         " entries but C(" + std::to_string(rho.n()) + "," +
                                         std::to_string(rho.k()) + ") has " +
                                         std::to_string(binomial(rho.n(), rho.k())));
  }
  const auto table = PacketTable::get(rho.n(), rho.k());
  const RealizableSet full = RealizableSet::full(rho.n(), rho.k());
  return check_against(rho, full.partition(), *table);
}

AdmissibilityCheck is_admissible_on(const KOrder& rho, const RealizableSet& j) {
  if (rho.n() != j.n() || rho.k() != j.k() || !(rho.domain() == j.members())) {
    fail(ErrorKind::domain_mismatch, "order " + rho.to_string() + " does not order " +
                                         j.members().to_string());
  }
  const auto table = PacketTable::get(rho.n(), rho.k());
  return check_against(rho, j.partition(), *table);
}

AdmissibilityCheck check_order(const KOrder& rho) {
  if (rho.is_full()) return is_admissible(rho);
  return is_admissible_on(rho, domain_set(rho));
}

InversionSet inversion_set(const KOrder& rho) {
  const RealizableSet j = domain_set(rho);
  const auto table = PacketTable::get(rho.n(), rho.k());
  const Partition& part = j.partition();
  if (!check_against(rho, part, *table)) {
    fail(ErrorKind::not_admissible, "order " + rho.to_string() + " is not admissible");
  }
  const auto pos = positions_by_rank(rho, table->ksets());
  KSetFamily inv = part.suffix;
  part.full.for_each_rank([&](std::size_t g) {
    if (orientation(*table, g, pos) == Orientation::antilex) inv.insert_rank(g);
  });
  return InversionSet(std::move(inv));
}

KOrder transpose(const KOrder& rho) { return rho.reversed(); }

std::vector<KOrder> elementary_neighbors(const KOrder& rho) {
  std::vector<KOrder> out;
  for (std::size_t i = 0; i + 1 < rho.size(); ++i) {
    if (shares_packet(rho[i], rho[i + 1])) continue;
    std::vector<KSet> seq = rho.sequence();
    std::swap(seq[i], seq[i + 1]);
    out.emplace_back(rho.n(), rho.k(), std::move(seq));
  }
  return out;
}

EquivalenceClass equivalence_class(const KOrder& rho, std::size_t cap) {
  const auto universe = KSetUniverse::get(rho.n(), rho.k());
  const auto start = rho.ranks();
  std::unordered_set<std::vector<std::uint32_t>, RankVectorHash> seen{start};
  std::deque<std::vector<std::uint32_t>> queue{start};
  while (!queue.empty()) {
    auto cur = std::move(queue.front());
    queue.pop_front();
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      if (shares_packet(universe->at(cur[i]), universe->at(cur[i + 1]))) continue;
      auto next = cur;
      std::swap(next[i], next[i + 1]);
      if (seen.count(next)) continue;
      if (seen.size() >= cap) {
        throw LimitExceeded(ErrorKind::cap_exceeded,
                            "equivalence class exceeds cap of " + std::to_string(cap),
                            seen.size());
      }
      seen.insert(next);
      queue.push_back(std::move(next));
    }
  }
  std::vector<std::vector<std::uint32_t>> sorted(seen.begin(), seen.end());
  std::sort(sorted.begin(), sorted.end());
  EquivalenceClass out;
  out.members.reserve(sorted.size());
  for (const auto& r : sorted) out.members.push_back(KOrder::from_ranks(rho.n(), rho.k(), r));
  return out;
}

KSetFamily flippable_in(const KOrder& rho) {
  const auto table = PacketTable::get(rho.n(), rho.k());
  const auto pos = positions_by_rank(rho, table->ksets());
  KSetFamily out(rho.n(), rho.k() + 1);
  for (std::size_t g = 0; g < table->generator_count(); ++g) {
    if (!full_in_domain(*table, g, pos)) continue;
    std::uint32_t lo = kAbsent;
    std::uint32_t hi = 0;
    for (std::uint32_t r : table->members(g)) {
      lo = std::min(lo, pos[r]);
      hi = std::max(hi, pos[r]);
    }
    if (hi - lo == static_cast<std::uint32_t>(rho.k())) out.insert_rank(g);
  }
  return out;
}

KSetFamily flippable_bruteforce(const KOrder& rho, std::size_t cap) {
  KSetFamily out(rho.n(), rho.k() + 1);
  for (const auto& member : equivalence_class(rho, cap).members) out |= flippable_in(member);
  return out;
}

FlippableSplit flippable_bruteforce_split(const KOrder& rho, std::size_t cap) {
  const KSetFamily all = flippable_bruteforce(rho, cap);
  const auto table = PacketTable::get(rho.n(), rho.k());
  const auto pos = positions_by_rank(rho, table->ksets());
  FlippableSplit out{KSetFamily(rho.n(), rho.k() + 1), KSetFamily(rho.n(), rho.k() + 1)};
  all.for_each_rank([&](std::size_t g) {
    if (orientation(*table, g, pos) == Orientation::lex) {
      out.lex.insert_rank(g);
    } else {
      out.antilex.insert_rank(g);
    }
  });
  return out;
}

KOrder packet_flip(const KOrder& rho, const KSet& x) {
  if (x.n() != rho.n() || x.size() != rho.k() + 1) {
    fail(ErrorKind::invalid_arguments, "flip generator " + x.to_string() + " has wrong size");
  }
  std::vector<std::size_t> where;
  for (const KSet& member : packet(x).members) {
    const auto it = std::find(rho.begin(), rho.end(), member);
    if (it == rho.end()) {
      fail(ErrorKind::invalid_arguments,
           "packet " + x.to_string() + " is not full in the domain (missing " +
               member.to_string() + ")");
    }
    where.push_back(static_cast<std::size_t>(it - rho.begin()));
  }
  const auto [lo, hi] = std::minmax_element(where.begin(), where.end());
  if (*hi - *lo != static_cast<std::size_t>(rho.k())) {
    fail(ErrorKind::not_a_chain, "packet " + x.to_string() + " is not contiguous in " +
                                     rho.to_string());
  }
  std::vector<KSet> seq = rho.sequence();
  std::reverse(seq.begin() + static_cast<std::ptrdiff_t>(*lo),
               seq.begin() + static_cast<std::ptrdiff_t>(*hi) + 1);
  return KOrder(rho.n(), rho.k(), std::move(seq));
}

std::optional<KOrder> canonical_order(const RealizableSet& j, const KSetFamily& inv) {
  const int n = j.n();
  const int k = j.k();
  const Partition& part = j.partition();
  if (inv.n() != n || inv.k() != k + 1) {
    fail(ErrorKind::invalid_arguments, "inversion set over the wrong ambient");
  }
  if (!part.suffix.is_subset_of(inv) || !inv.is_subset_of(part.suffix | part.full)) {
    return std::nullopt;
  }
  const auto table = PacketTable::get(n, k);
  const std::size_t m = table->ksets().size();
  std::vector<std::vector<std::uint32_t>> succ(m);
  std::vector<std::uint32_t> indegree(m, 0);
  std::vector<std::uint32_t> present;
  for (std::size_t g = 0; g < table->generator_count(); ++g) {
    present.clear();
    for (std::uint32_t r : table->members(g)) {
      if (j.members().contains_rank(r)) present.push_back(r);
    }
    if (present.size() < 2) continue;
    if (inv.contains_rank(g)) std::reverse(present.begin(), present.end());
    for (std::size_t i = 0; i + 1 < present.size(); ++i) {
      succ[present[i]].push_back(present[i + 1]);
      ++indegree[present[i + 1]];
    }
  }
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> ready;
  j.members().for_each_rank([&](std::size_t r) {
    if (indegree[r] == 0) ready.push(static_cast<std::uint32_t>(r));
  });
  std::vector<std::uint32_t> out;
  while (!ready.empty()) {
    const std::uint32_t r = ready.top();
    ready.pop();
    out.push_back(r);
    for (std::uint32_t s : succ[r]) {
      if (--indegree[s] == 0) ready.push(s);
    }
  }
  if (out.size() != j.size()) return std::nullopt;
  return KOrder::from_ranks(n, k, out);
}

std::size_t for_each_admissible_order(const RealizableSet& j,
                                      const std::function<void(const KOrder&)>& visit,
                                      std::size_t cap) {
  const int n = j.n();
  const int k = j.k();
  const auto table = PacketTable::get(n, k);
  const Partition& part = j.partition();
  const std::vector<std::size_t> elements = j.members().ranks();

  // For each constrained packet: its J-members in lex order and the allowed
  // directions (+1 lex, -1 antilex, 0 either until decided).
  struct PacketState {
    std::vector<std::uint32_t> list;
    int dir = 0;
    int placed = 0;
    bool fixed = false;
  };
  std::vector<PacketState> states(table->generator_count());
  for (std::size_t g = 0; g < states.size(); ++g) {
    for (std::uint32_t r : table->members(g)) {
      if (j.members().contains_rank(r)) states[g].list.push_back(r);
    }
    if (states[g].list.size() < 2) continue;
    switch (part.class_of_rank(g)) {
      case PacketClass::suffix: states[g].dir = -1; states[g].fixed = true; break;
      case PacketClass::prefix: states[g].dir = 1; states[g].fixed = true; break;
      default: break;
    }
  }

  std::vector<std::uint32_t> current;
  std::vector<char> used(table->ksets().size(), 0);
  std::size_t count = 0;

  auto allowed = [&](std::uint32_t r) {
    for (const auto& inc : table->incidences(r)) {
      const PacketState& st = states[inc.generator];
      if (st.list.size() < 2) continue;
      const int size = static_cast<int>(st.list.size());
      const auto idx =
          static_cast<int>(std::find(st.list.begin(), st.list.end(), r) - st.list.begin());
      if (st.dir == 1 && idx != st.placed) return false;
      if (st.dir == -1 && idx != size - 1 - st.placed) return false;
      if (st.dir == 0 && idx != 0 && idx != size - 1) return false;
    }
    return true;
  };

  std::function<void()> dfs = [&] {
    if (current.size() == elements.size()) {
      if (++count > cap) {
        throw LimitExceeded(ErrorKind::cap_exceeded,
                            "admissible order enumeration exceeds cap of " + std::to_string(cap),
                            cap);
      }
      visit(KOrder::from_ranks(n, k, current));
      return;
    }
    for (std::size_t r : elements) {
      const auto rr = static_cast<std::uint32_t>(r);
      if (used[r] || !allowed(rr)) continue;
      std::vector<std::pair<std::uint32_t, int>> decided;
      for (const auto& inc : table->incidences(rr)) {
        PacketState& st = states[inc.generator];
        if (st.list.size() < 2) continue;
        if (st.dir == 0) {
          st.dir = st.list.front() == rr ? 1 : -1;
          decided.push_back({inc.generator, 0});
        }
        ++st.placed;
      }
      used[r] = 1;
      current.push_back(rr);
      dfs();
      current.pop_back();
      used[r] = 0;
      for (const auto& inc : table->incidences(rr)) {
        PacketState& st = states[inc.generator];
        if (st.list.size() < 2) continue;
        --st.placed;
      }
      for (const auto& [g, _] : decided) states[g].dir = 0;
    }
  };
  dfs();
  return count;
}

KOrder random_admissible_order(int n, int k, std::mt19937_64& rng) {
  const auto table = PacketTable::get(n, k);
  const std::size_t m = table->ksets().size();
  KSetFamily prefix(n, k);
  std::vector<std::uint32_t> seq;
  std::vector<std::size_t> candidates;
  while (seq.size() < m) {
    candidates.clear();
    for (std::size_t r = 0; r < m; ++r) {
      if (!prefix.contains_rank(r) && stays_realizable_with(prefix, r, *table)) {
        candidates.push_back(r);
      }
    }
    if (candidates.empty()) {
      fail(ErrorKind::internal_consistency,
           "realizable prefix " + prefix.to_string() + " cannot be extended");
    }
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    const std::size_t r = candidates[pick(rng)];
    prefix.insert_rank(r);
    seq.push_back(static_cast<std::uint32_t>(r));
  }
  return KOrder::from_ranks(n, k, seq);
}

KSetFamily random_realizable_set(int n, int k, std::mt19937_64& rng) {
  const KOrder rho = random_admissible_order(n, k, rng);
  std::uniform_int_distribution<std::size_t> len(0, rho.size());
  const std::size_t l = len(rng);
  return KSetFamily::of(n, k, std::span<const KSet>(rho.sequence().data(), l));
}

}  // namespace bruhat
