#include "bruhat/ladder.hpp"

#include <algorithm>
#include <set>

#include "bruhat/error.hpp"

namespace bruhat {

namespace {

std::string level_name(int i) { return "i=" + std::to_string(i); }

std::optional<std::string> first_difference(const std::set<KSetFamily>& a,
                                            const std::set<KSetFamily>& b) {
  for (const auto& x : a) {
    if (!b.count(x)) return "only in lifts: " + x.to_string();
  }
  for (const auto& x : b) {
    if (!a.count(x)) return "missing from lifts: " + x.to_string();
  }
  return std::nullopt;
}

KSetFamily family_of(int n, std::initializer_list<const char*> items, int k) {
  KSetFamily f(n, k);
  for (const char* s : items) f.insert(parse_kset(s, n));
  return f;
}

}  // namespace

LadderLevel next_level(const LadderLevel& level) {
  const Partition upper = classify(level.upper);
  const Partition diff = classify(level.upper - level.lower);
  return {level.i + 1, upper.suffix, upper.suffix | diff.full};
}

const LadderLevel& LMLadder::level(int i) const {
  for (const auto& l : levels) {
    if (l.i == i) return l;
  }
  fail(ErrorKind::invalid_arguments, "ladder has no level " + std::to_string(i));
}

LMLadder lm_ladder(const RealizableSet& j, int cap) {
  if (j.k() != 2) {
    fail(ErrorKind::invalid_arguments,
         "the ladder is defined for 2-sets, got k = " + std::to_string(j.k()));
  }
  const int n = j.n();
  const int top = cap <= 0 ? n : std::min(cap, n);
  LMLadder out{j, {}, false};
  LadderLevel cur{2, KSetFamily(n, 2), j.members()};
  out.levels.push_back(cur);
  while (cur.i < top) {
    cur = next_level(cur);
    for (const auto* f : {&cur.lower, &cur.upper}) {
      const auto check = check_realizable(*f);
      if (!check) {
        fail(ErrorKind::internal_consistency,
             "ladder level " + std::to_string(cur.i) + " is not realizable at packet " +
                 check.generator->to_string() + " (pattern " + check.pattern + ")");
      }
    }
    if (!cur.lower.is_subset_of(cur.upper)) {
      fail(ErrorKind::internal_consistency,
           "ladder level " + std::to_string(cur.i) + " has L not contained in M");
    }
    out.levels.push_back(cur);
  }
  out.stabilized = out.levels.back().upper.empty();
  return out;
}

BruhatPoset build_bi(const LMLadder& ladder, int i, const BuildOptions& options) {
  const LadderLevel& level = ladder.level(i);
  const BruhatPoset paths = build_paths_to(RealizableSet(level.upper), options);
  if (level.lower.empty()) return paths;
  const Partition lower = classify(level.lower);
  return paths.restrict([&](const BruhatNode& node) {
    const KSetFamily& u = node.inv.members();
    return lower.suffix.is_subset_of(u) && !lower.prefix.intersects(u);
  });
}

BruhatPoset build_bi(const RealizableSet& j, int i, const BuildOptions& options) {
  return build_bi(lm_ladder(j, i), i, options);
}

std::vector<KSetFamily> realizable_between(const KSetFamily& lower, const KSetFamily& upper,
                                           std::size_t max_free) {
  if (!lower.is_subset_of(upper)) return {};
  const auto free = (upper - lower).ranks();
  if (free.size() > max_free || free.size() >= 63) {
    throw LimitExceeded(ErrorKind::cap_exceeded,
                        std::to_string(free.size()) + " free elements exceed the filter cap of " +
                            std::to_string(max_free),
                        0);
  }
  std::vector<KSetFamily> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
    KSetFamily k = lower;
    for (std::size_t b = 0; b < free.size(); ++b) {
      if (mask >> b & 1) k.insert_rank(free[b]);
    }
    if (check_realizable(k)) out.push_back(std::move(k));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string pair_shape(const Partition& a, const Partition& b, const KSet& x) {
  std::string out;
  std::string last;
  for (const KSet& m : packet(x).members) {
    std::string run{label(a.class_of(m)), label(b.class_of(m))};
    if (run == last) continue;
    if (!out.empty()) out += '|';
    out += run;
    last = run;
  }
  return out;
}

std::vector<KSet> find_pair_shape(const Partition& a, const Partition& b, std::string_view shape) {
  std::vector<KSet> hits;
  const int n = a.full.n();
  const int size = a.full.k() + 1;
  if (size > n) return hits;
  for (const KSet& x : enumerate_ksets(n, size)) {
    if (pair_shape(a, b, x) == shape) hits.push_back(x);
  }
  return hits;
}

Report verify_ladder_theorem(const RealizableSet& j, int i_max, const BuildOptions& options,
                          std::size_t chain_cap) {
  Report report("ladder theorem for J = " + j.members().to_string());
  const int top = std::min(i_max, j.n() - 1);
  std::optional<LMLadder> built;
  try {
    built = lm_ladder(j, top + 1);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::internal_consistency) throw;
    report.add("ladder levels realizable", false, e.what());
    return report;
  }
  const LMLadder& ladder = *built;
  report.add("ladder levels realizable", true,
             std::to_string(ladder.levels.size()) + " levels up to i=" +
                 std::to_string(ladder.max_level()));

  for (int i = 2; i <= top; ++i) {
    const std::string at = level_name(i);
    const LadderLevel& next = ladder.level(i + 1);
    const BruhatPoset bi = build_bi(ladder, i, options);

    const Report structure = check_poset_structure(bi);
    report.merge(structure, at);

    std::set<KSetFamily> keys;
    for (const auto& node : bi.nodes()) keys.insert(node.inv.members());
    report.add(at + ": nodes determined by inversion set", keys.size() == bi.nodes().size());

    const auto sources = bi.sources();
    const auto sinks = bi.sinks();
    const bool min_ok = sources.size() == 1 && bi.nodes()[sources[0]].inv.members() == next.lower;
    const bool max_ok = sinks.size() == 1 && bi.nodes()[sinks[0]].inv.members() == next.upper;
    report.add(at + ": min inversion set is L^{i+1}", min_ok, "L^{i+1} = " + next.lower.to_string(),
               min_ok || sources.empty() ? std::nullopt
                                         : std::optional(bi.nodes()[sources[0]].inv.to_string()));
    report.add(at + ": max inversion set is M^{i+1}", max_ok, "M^{i+1} = " + next.upper.to_string(),
               max_ok || sinks.empty() ? std::nullopt
                                       : std::optional(bi.nodes()[sinks[0]].inv.to_string()));

    // Lift every maximal chain by putting an admissible L^{i+1}-order first.
    const RealizableSet upper_next(next.upper);
    const RealizableSet lower_next(next.lower);
    const auto prefix = canonical_order(lower_next, lower_next.partition().suffix);
    if (!prefix) {
      report.add(at + ": chain lift", false, "no admissible order on L^{i+1}");
      continue;
    }
    std::set<KSetFamily> lifted;
    std::optional<std::string> bad_lift;
    std::size_t chains = 0;
    ChainEnumerator it(bi, chain_cap);
    while (auto chain = it.next()) {
      ++chains;
      std::vector<KSet> seq(prefix->begin(), prefix->end());
      seq.insert(seq.end(), chain->begin(), chain->end());
      const KOrder lift(j.n(), i + 1, std::move(seq));
      if (!(lift.domain() == next.upper) || !is_admissible_on(lift, upper_next)) {
        if (!bad_lift) bad_lift = lift.to_string();
        continue;
      }
      lifted.insert(inversion_set(lift).members());
    }
    report.add(at + ": maximal chains lift to admissible M^{i+1}-orders with L^{i+1} first",
               !bad_lift, std::to_string(chains) + " chains", bad_lift);

    const BruhatPoset bnext = build_bi(ladder, i + 1, options);
    std::set<KSetFamily> next_keys;
    for (const auto& node : bnext.nodes()) next_keys.insert(node.inv.members());
    const auto diff = first_difference(lifted, next_keys);
    report.add(at + ": lifts cover B_{i+1}(J)", !diff,
               std::to_string(lifted.size()) + " of " + std::to_string(next_keys.size()) +
                   " classes reached",
               diff);
  }
  return report;
}

Report check_counterexample_n9() {
  Report report("n = 9 ladder counterexample");
  constexpr int n = 9;
  const KSet core(n, {1, 2, 3, 4, 5});

  KSetFamily m5 = KSetFamily::full(n, 5);
  m5.erase(core);
  const LadderLevel l5{5, KSetFamily(n, 5), m5};
  const LadderLevel l6 = next_level(l5);
  const LadderLevel l7 = next_level(l6);

  KSetFamily want_l6(n, 6);
  for (const KSet& x : enumerate_ksets(n, 6)) {
    if (core.is_subset_of(x)) want_l6.insert(x);
  }
  KSetFamily want_m7(n, 7);
  for (const KSet& x : enumerate_ksets(n, 7)) {
    if (!core.is_subset_of(x)) want_m7.insert(x);
  }
  const bool levels_ok = l6.lower == want_l6 && l6.upper == KSetFamily::full(n, 6) &&
                         l7.lower.empty() && l7.upper == want_m7 && want_m7.size() == 30;
  report.add("ladder levels L^6, M^6, L^7, M^7", levels_ok,
             "|L^6| = " + std::to_string(l6.lower.size()) + ", |M^7| = " +
                 std::to_string(l7.upper.size()));

  const KSetFamily k = family_of(n, {"2356789", "2456789", "3456789"}, 7);
  const auto k_check = check_realizable(k);
  report.add("K is realizable", k_check.realizable);
  report.add("L^7 ⊆ K ⊆ M^7", l7.lower.is_subset_of(k) && k.is_subset_of(l7.upper));

  const Partition kp = classify(k);
  const Partition mp = classify(l7.upper);
  const KSetFamily union_s = kp.suffix | mp.suffix;
  const auto union_check = check_realizable(union_s);
  report.add("K_s ∪ M^7_s is not realizable", !union_check.realizable,
             union_check.generator ? "packet " + union_check.generator->to_string() + " pattern " +
                                         union_check.pattern
                                   : "realizable",
             union_check.generator ? std::optional(union_check.generator->to_string())
                                   : std::nullopt);

  const KSet x(n, {1, 2, 3, 4, 5, 6, 7, 8, 9});
  const KSet w1(n, {1, 2, 3, 4, 5, 7, 8, 9});
  const KSet w2(n, {1, 2, 3, 4, 6, 7, 8, 9});
  const KSet w3(n, {1, 2, 3, 5, 6, 7, 8, 9});
  const bool witnesses = kp.class_of(w1) == PacketClass::empty &&
                         mp.class_of(w1) == PacketClass::suffix &&
                         kp.class_of(w2) == PacketClass::empty &&
                         mp.class_of(w2) == PacketClass::full &&
                         kp.class_of(w3) == PacketClass::suffix &&
                         mp.class_of(w3) == PacketClass::full;
  const std::string shape = pair_shape(kp, mp, x);
  report.add("P_123456789 is segmented K0/Ms < K0/MF < Ks/MF", witnesses && shape == kShapeK0MF,
             "shape " + shape, x.to_string());
  return report;
}

Report forbidden_ladder_segmentations(const LMLadder& ladder, int i, std::size_t max_free) {
  Report report("forbidden ladder segmentations at i=" + std::to_string(i));
  const LadderLevel& level = ladder.level(i);
  const Partition mp = classify(level.upper);
  const Partition lp = classify(level.lower);

  const auto lpmf = find_pair_shape(lp, mp, kShapeLpMF);
  report.add("no LpMF segmentation", lpmf.empty(), {},
             lpmf.empty() ? std::nullopt : std::optional(lpmf.front().to_string()));

  std::optional<std::string> k0mf;
  std::optional<std::string> not_real;
  std::size_t count = 0;
  for (const KSetFamily& k : realizable_between(level.lower, level.upper, max_free)) {
    ++count;
    const Partition kp = classify(k);
    const auto hits = find_pair_shape(kp, mp, kShapeK0MF);
    if (!hits.empty() && !k0mf) k0mf = "K = " + k.to_string() + " at " + hits.front().to_string();
    if (!check_realizable(kp.suffix | mp.suffix) && !not_real) not_real = "K = " + k.to_string();
  }
  report.add("no K0MF segmentation", !k0mf, std::to_string(count) + " sets K", k0mf);
  report.add("K_s ∪ M^i_s realizable", !not_real, std::to_string(count) + " sets K", not_real);
  return report;
}

}  // namespace bruhat
