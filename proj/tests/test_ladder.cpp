#include <doctest.h>

#include <random>

#include "bruhat/error.hpp"
#include "bruhat/ladder.hpp"
#include "oracle.hpp"

using namespace bruhat;

namespace {

KSetFamily fam(int n, int k, std::initializer_list<const char*> items) {
  KSetFamily f(n, k);
  for (const char* s : items) f.insert(parse_kset(s, n));
  return f;
}

/// Brute ladder step on plain sets.
std::pair<std::set<oracle::Set>, std::set<oracle::Set>> oracle_step(int n, int i,
                                                                    const std::set<oracle::Set>& l,
                                                                    const std::set<oracle::Set>& m) {
  std::set<oracle::Set> next_l, next_m;
  for (const auto& x : oracle::subsets(n, i + 1)) {
    if (oracle::classify(m, x) == 's') {
      next_l.insert(x);
      next_m.insert(x);
    }
    bool all = true;
    for (const auto& f : oracle::facets(x)) all &= m.count(f) && !l.count(f);
    if (all) next_m.insert(x);
  }
  return {next_l, next_m};
}

std::set<KSetFamily> keys(const BruhatPoset& p) {
  std::set<KSetFamily> out;
  for (const auto& node : p.nodes()) out.insert(node.inv.members());
  return out;
}

}  // namespace

TEST_CASE("ladder examples") {
  const LMLadder full = lm_ladder(RealizableSet::full(4, 2));
  CHECK(full.level(3).lower.empty());
  CHECK(full.level(3).upper == KSetFamily::full(4, 3));
  CHECK(full.level(4).lower.empty());
  CHECK(full.level(4).upper == KSetFamily::full(4, 4));

  const RealizableSet tri(fam(4, 2, {"12", "13", "23"}));
  const LMLadder t = lm_ladder(tri);
  CHECK(t.level(3).lower.empty());
  CHECK(t.level(3).upper.to_string() == "{123}");
  CHECK(t.level(4).upper.empty());
  CHECK(t.stabilized);
  CHECK(build_bi(tri, 2).nodes().size() == 2);
  CHECK(build_bi(tri, 3).nodes().size() == 1);

  CHECK_THROWS_AS(lm_ladder(RealizableSet::full(4, 3)), Error);
  CHECK_THROWS_AS(t.level(7), Error);
  CHECK(lm_ladder(RealizableSet::full(6, 2), 3).max_level() == 3);
}

TEST_CASE("ladder levels agree with the oracle") {
  for (int n : {4, 5}) {
    for (const auto& f : all_realizable_sets(n, 2)) {
      const LMLadder ladder = lm_ladder(RealizableSet(f));
      std::set<oracle::Set> l;
      std::set<oracle::Set> m = oracle::from_family(f);
      for (int i = 2; i < n; ++i) {
        auto [nl, nm] = oracle_step(n, i, l, m);
        CHECK(oracle::from_family(ladder.level(i + 1).lower) == nl);
        CHECK(oracle::from_family(ladder.level(i + 1).upper) == nm);
        l = nl;
        m = nm;
      }
    }
  }
}

TEST_CASE("ladder levels are realizable for every 2-set at n <= 6") {
  for (int n : {3, 4, 5, 6}) {
    std::size_t count = 0;
    for (const auto& f : all_realizable_sets(n, 2)) {
      const LMLadder ladder = lm_ladder(RealizableSet(f));
      for (const auto& level : ladder.levels) {
        CHECK(check_realizable(level.lower).realizable);
        CHECK(check_realizable(level.upper).realizable);
        CHECK(level.lower.is_subset_of(level.upper));
      }
      ++count;
    }
    CHECK(count == static_cast<std::size_t>(n == 3 ? 6 : n == 4 ? 24 : n == 5 ? 120 : 720));
  }
}

TEST_CASE("B_2(J) is the second Bruhat order of J") {
  for (const auto& f : all_realizable_sets(4, 2)) {
    const RealizableSet j(f);
    CHECK(keys(build_bi(j, 2)) == keys(build_paths_to(j)));
  }
  CHECK(build_bi(RealizableSet::full(4, 2), 2).nodes().size() == 8);
  CHECK(keys(build_bi(RealizableSet::full(5, 2), 2)) == keys(build_bnk(5, 2)));
  CHECK(keys(build_bi(RealizableSet::full(5, 2), 3)) == keys(build_bnk(5, 3)));
}

TEST_CASE("B_i(J) nodes are the classes of M^i-orders with L^i first") {
  for (int n : {4, 5}) {
    for (const auto& f : all_realizable_sets(n, 2)) {
      const LMLadder ladder = lm_ladder(RealizableSet(f));
      for (int i = 2; i <= std::min(3, n - 1); ++i) {
        const LadderLevel& level = ladder.level(i);
        std::set<KSetFamily> brute;
        for_each_admissible_order(RealizableSet(level.upper), [&](const KOrder& rho) {
          KSetFamily head(n, i);
          for (std::size_t p = 0; p < level.lower.size(); ++p) head.insert(rho[p]);
          if (head == level.lower) brute.insert(inversion_set(rho).members());
        });
        CHECK(keys(build_bi(ladder, i)) == brute);
      }
    }
  }
}

TEST_CASE("verify_ladder_theorem on every 2-set at n = 4") {
  for (const auto& f : all_realizable_sets(4, 2)) {
    const Report r = verify_ladder_theorem(RealizableSet(f), 3);
    CHECK_MESSAGE(r.passed(), r.to_text());
  }
  const Report empty = verify_ladder_theorem(RealizableSet::empty(4, 2), 3);
  CHECK(empty.passed());
}

TEST_CASE("verify_ladder_theorem on sampled 2-sets at n = 5 and n = 6") {
  std::mt19937_64 rng(23);
  const auto sets5 = all_realizable_sets(5, 2);
  for (int t = 0; t < 15; ++t) {
    const auto& f = sets5[rng() % sets5.size()];
    const Report r = verify_ladder_theorem(RealizableSet(f), 3);
    CHECK_MESSAGE(r.passed(), r.to_text());
  }
  const Report full = verify_ladder_theorem(RealizableSet::full(5, 2), 2);
  CHECK(full.passed());
  for (int t = 0; t < 3; ++t) {
    const Report r = verify_ladder_theorem(RealizableSet(random_realizable_set(6, 2, rng)), 2);
    CHECK_MESSAGE(r.passed(), r.to_text());
  }
}

TEST_CASE("pair_shape agrees with brute run labels") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    const KSetFamily a = random_realizable_set(5, 2, rng);
    const KSetFamily b = random_realizable_set(5, 2, rng);
    const Partition pa = classify(a), pb = classify(b);
    const auto sa = oracle::from_family(a), sb = oracle::from_family(b);
    for (const auto& x : oracle::subsets(5, 4)) {
      std::string want, last;
      for (const auto& f : oracle::facets(x)) {
        const std::string run{oracle::classify(sa, f), oracle::classify(sb, f)};
        if (run == last) continue;
        if (!want.empty()) want += '|';
        want += run;
        last = run;
      }
      CHECK(pair_shape(pa, pb, oracle::to_kset(5, x)) == want);
    }
  }
}

TEST_CASE("realizable_between") {
  const auto all = realizable_between(KSetFamily(4, 2), KSetFamily::full(4, 2));
  CHECK(all.size() == 24);
  const auto some = realizable_between(fam(4, 3, {"123"}), KSetFamily::full(4, 3));
  CHECK(some.size() == 4);
  CHECK(realizable_between(fam(4, 3, {"123"}), fam(4, 3, {"234"})).empty());
  CHECK_THROWS_AS(realizable_between(KSetFamily(6, 2), KSetFamily::full(6, 2), 10), LimitExceeded);
}

TEST_CASE("no forbidden ladder segmentations for 2-sets at n = 4, 5") {
  for (int n : {4, 5}) {
    for (const auto& f : all_realizable_sets(n, 2)) {
      const LMLadder ladder = lm_ladder(RealizableSet(f));
      for (int i = 2; i <= std::min(3, n - 1); ++i) {
        const Report r = forbidden_ladder_segmentations(ladder, i);
        CHECK_MESSAGE(r.passed(), r.to_text());
      }
    }
  }
  const Report full = forbidden_ladder_segmentations(lm_ladder(RealizableSet::full(4, 2)), 2);
  CHECK(full.passed());
}

TEST_CASE("the n = 9 configuration") {
  const Report r = check_counterexample_n9();
  CHECK(r.assertions().size() == 5);
  CHECK_MESSAGE(r.passed(), r.to_text());

  // Negative control: the K0MF shape is found on exactly the top packet.
  KSetFamily m7(9, 7);
  const KSet core(9, {1, 2, 3, 4, 5});
  for (const auto& x : enumerate_ksets(9, 7)) {
    if (!core.is_subset_of(x)) m7.insert(x);
  }
  CHECK(m7.size() == 30);
  const KSetFamily k = fam(9, 7, {"2356789", "2456789", "3456789"});
  const auto hits = find_pair_shape(classify(k), classify(m7), kShapeK0MF);
  REQUIRE(hits.size() == 1);
  CHECK(hits.front().to_string() == "123456789");
  const auto bad = check_realizable(classify(k).suffix | classify(m7).suffix);
  CHECK_FALSE(bad.realizable);
  CHECK(bad.pattern == "111101111");
}
