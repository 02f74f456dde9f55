#include "bruhat/realizability.hpp"

#include <algorithm>
#include <unordered_set>

#include "bruhat/error.hpp"

namespace bruhat {

char label(PacketClass c) noexcept {
  switch (c) {
    case PacketClass::suffix: return 's';
    case PacketClass::prefix: return 'p';
    case PacketClass::full: return 'F';
    case PacketClass::empty: return '0';
    case PacketClass::invalid: return 'x';
  }
  return '?';
}

std::uint64_t packet_pattern(const KSetFamily& s, const PacketTable& table, std::size_t g) {
  std::uint64_t pattern = 0;
  const auto members = table.members(g);
  for (std::size_t pos = 0; pos < members.size(); ++pos) {
    if (s.contains_rank(members[pos])) pattern |= std::uint64_t{1} << pos;
  }
  return pattern;
}

PacketClass classify_pattern(std::uint64_t pattern, int packet_size) noexcept {
  const std::uint64_t all =
      packet_size >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << packet_size) - 1;
  if (pattern == 0) return PacketClass::empty;
  if (pattern == all) return PacketClass::full;
  if ((pattern & (pattern + 1)) == 0) return PacketClass::prefix;
  const std::uint64_t rest = all ^ pattern;
  if ((rest & (rest + 1)) == 0) return PacketClass::suffix;
  return PacketClass::invalid;
}

PacketClass Partition::class_of_rank(std::size_t g) const {
  if (suffix.contains_rank(g)) return PacketClass::suffix;
  if (prefix.contains_rank(g)) return PacketClass::prefix;
  if (full.contains_rank(g)) return PacketClass::full;
  if (empty.contains_rank(g)) return PacketClass::empty;
  return PacketClass::invalid;
}

PacketClass Partition::class_of(const KSet& x) const {
  return class_of_rank(suffix.universe().rank(x));
}

Partition classify(const KSetFamily& s, Exec exec) {
  const int n = s.n();
  const int k = s.k();
  const auto table = PacketTable::get(n, k);
  const std::size_t gens = table->generator_count();
  std::vector<PacketClass> classes(gens);
  const long long count = static_cast<long long>(gens);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static) num_threads(thread_count())
    for (long long g = 0; g < count; ++g) {
      classes[static_cast<std::size_t>(g)] = classify_pattern(
          packet_pattern(s, *table, static_cast<std::size_t>(g)), table->packet_size());
    }
  } else {
    for (std::size_t g = 0; g < gens; ++g) {
      classes[g] = classify_pattern(packet_pattern(s, *table, g), table->packet_size());
    }
  }
  Partition part{KSetFamily(n, k + 1), KSetFamily(n, k + 1), KSetFamily(n, k + 1),
                 KSetFamily(n, k + 1), {}};
  for (std::size_t g = 0; g < gens; ++g) {
    switch (classes[g]) {
      case PacketClass::suffix: part.suffix.insert_rank(g); break;
      case PacketClass::prefix: part.prefix.insert_rank(g); break;
      case PacketClass::full: part.full.insert_rank(g); break;
      case PacketClass::empty: part.empty.insert_rank(g); break;
      case PacketClass::invalid: part.invalid.push_back(table->generators().at(g)); break;
    }
  }
  return part;
}

RealizabilityCheck check_realizable(const KSetFamily& s) {
  const auto table = PacketTable::get(s.n(), s.k());
  for (std::size_t g = 0; g < table->generator_count(); ++g) {
    const std::uint64_t pattern = packet_pattern(s, *table, g);
    if (classify_pattern(pattern, table->packet_size()) != PacketClass::invalid) continue;
    RealizabilityCheck out;
    out.realizable = false;
    out.generator = table->generators().at(g);
    for (int pos = 0; pos < table->packet_size(); ++pos) {
      out.pattern += ((pattern >> pos) & 1U) ? '1' : '0';
    }
    return out;
  }
  return {};
}

bool check_convex(const KSetFamily& s) {
  const int n = s.n();
  const int k = s.k();
  if (k + 1 > n || k + 1 < 3) return true;
  const auto& universe = s.universe();
  for (const KSet& big : enumerate_ksets(n, k + 1)) {
    const std::vector<int> el = big.elements();
    const std::size_t m = el.size();
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a + 1; b < m; ++b) {
        for (std::size_t c = b + 1; c < m; ++c) {
          // Lexicographic order inside the triple: ĵ3 < ĵ2 < ĵ1.
          const bool first = s.contains_rank(universe.rank(big.without(el[c])));
          const bool middle = s.contains_rank(universe.rank(big.without(el[b])));
          const bool last = s.contains_rank(universe.rank(big.without(el[a])));
          if (first && last && !middle) return false;
          if (!first && !last && middle) return false;
        }
      }
    }
  }
  return true;
}

bool stays_realizable_with(const KSetFamily& s, std::size_t r, const PacketTable& table) {
  for (const auto& inc : table.incidences(r)) {
    const std::uint64_t pattern =
        packet_pattern(s, table, inc.generator) | (std::uint64_t{1} << inc.position);
    if (classify_pattern(pattern, table.packet_size()) == PacketClass::invalid) return false;
  }
  return true;
}

RealizableSet::RealizableSet(KSetFamily members)
    : members_(std::move(members)), memo_(std::make_shared<Memo>()) {
  const auto check = check_realizable(members_);
  if (!check) {
    fail(ErrorKind::not_realizable, "set " + members_.to_string() + " meets packet " +
                                        check.generator->to_string() + " in pattern " +
                                        check.pattern);
  }
}

std::optional<RealizableSet> RealizableSet::try_make(KSetFamily members) {
  if (!check_realizable(members)) return std::nullopt;
  return RealizableSet(std::move(members));
}

RealizableSet RealizableSet::full(int n, int k) { return RealizableSet(KSetFamily::full(n, k)); }

RealizableSet RealizableSet::empty(int n, int k) { return RealizableSet(KSetFamily(n, k)); }

const Partition& RealizableSet::partition() const {
  std::call_once(memo_->once, [this] { memo_->value = classify(members_); });
  return *memo_->value;
}

RealizableSet RealizableSet::complement() const { return RealizableSet(members_.complement()); }

const Partition& partition(const RealizableSet& j) { return j.partition(); }

std::string Segmentation::shape() const {
  std::string out;
  for (const auto& run : runs) out += run.label;
  return out;
}

Segmentation segmentation_by(const Partition& part, const KSet& x) {
  const Packet p = packet(x);
  Segmentation seg{x, {}};
  for (const KSet& member : p.members) {
    const std::string lab(1, label(part.class_of(member)));
    if (seg.runs.empty() || seg.runs.back().label != lab) seg.runs.push_back({lab, {}});
    seg.runs.back().members.push_back(member);
  }
  return seg;
}

Segmentation segmentation(const RealizableSet& j, const KSet& x) {
  if (x.size() != j.k() + 2 || x.n() != j.n()) {
    fail(ErrorKind::invalid_arguments, "segmentation needs a (k+2)-set generator");
  }
  Segmentation seg = segmentation_by(j.partition(), x);
  if (!is_allowed_shape(seg.shape())) {
    fail(ErrorKind::shape_violation,
         "packet " + x.to_string() + " has segmentation " + seg.shape());
  }
  return seg;
}

bool is_allowed_shape(std::string_view shape) noexcept {
  static constexpr std::string_view kShapes[] = {"sFp", "pFs", "s0p", "p0s"};
  for (std::string_view full : kShapes) {
    std::size_t at = 0;
    bool ok = true;
    for (char c : shape) {
      while (at < full.size() && full[at] != c) ++at;
      if (at == full.size()) {
        ok = false;
        break;
      }
      ++at;
    }
    if (ok) return true;
  }
  return false;
}

bool is_forbidden_shape(std::string_view shape) noexcept {
  return shape == "Fs" || shape == "pF" || shape == "s0" || shape == "0p";
}

std::vector<ForbiddenHit> forbidden_segmentations(const KSetFamily& s) {
  std::vector<ForbiddenHit> hits;
  const int n = s.n();
  const int k = s.k();
  if (k + 2 > n) return hits;
  const Partition part = classify(s);
  for (const KSet& x : enumerate_ksets(n, k + 2)) {
    const std::string shape = segmentation_by(part, x).shape();
    if (is_forbidden_shape(shape)) hits.push_back({x, shape});
  }
  return hits;
}

namespace {

bool chain_search(const KSetFamily& current, const std::vector<std::size_t>& remaining,
                  const PacketTable& table,
                  std::unordered_set<KSetFamily, KSetFamilyHash>& dead) {
  bool any_left = false;
  for (std::size_t r : remaining) {
    if (current.contains_rank(r)) continue;
    any_left = true;
    if (!stays_realizable_with(current, r, table)) continue;
    KSetFamily next = current;
    next.insert_rank(r);
    if (dead.count(next)) continue;
    if (chain_search(next, remaining, table, dead)) return true;
    dead.insert(std::move(next));
  }
  return !any_left;
}

}  // namespace

bool single_step_leq(const RealizableSet& u1, const RealizableSet& u2) {
  if (u1.n() != u2.n() || u1.k() != u2.k()) {
    fail(ErrorKind::invalid_arguments, "single_step_leq over different ambients");
  }
  if (!u1.members().is_subset_of(u2.members())) return false;
  const auto table = PacketTable::get(u1.n(), u1.k());
  const std::vector<std::size_t> remaining = (u2.members() - u1.members()).ranks();

  // Greedy: always take the smallest element that keeps the set realizable.
  KSetFamily current = u1.members();
  std::size_t added = 0;
  bool progress = true;
  while (progress && added < remaining.size()) {
    progress = false;
    for (std::size_t r : remaining) {
      if (current.contains_rank(r) || !stays_realizable_with(current, r, *table)) continue;
      current.insert_rank(r);
      ++added;
      progress = true;
      break;
    }
  }
  if (added == remaining.size()) return true;

  std::unordered_set<KSetFamily, KSetFamilyHash> dead;
  return chain_search(u1.members(), remaining, *table, dead);
}

std::vector<KSetFamily> all_realizable_sets(int n, int k, std::size_t max_universe) {
  const auto universe = KSetUniverse::get(n, k);
  const std::size_t m = universe->size();
  if (m > max_universe) {
    fail(ErrorKind::budget_exceeded, "subset filtering over 2^" + std::to_string(m) +
                                         " subsets exceeds the configured budget");
  }
  std::vector<KSetFamily> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
    KSetFamily f(n, k);
    for (std::size_t r = 0; r < m; ++r) {
      if ((bits >> r) & 1U) f.insert_rank(r);
    }
    if (check_realizable(f)) out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace bruhat
