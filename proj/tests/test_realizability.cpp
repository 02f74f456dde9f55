#include <doctest.h>

#include <random>

#include "bruhat/error.hpp"
#include "bruhat/order.hpp"
#include "bruhat/realizability.hpp"
#include "oracle.hpp"

using namespace bruhat;

namespace {

KSetFamily fam(int n, int k, std::initializer_list<const char*> items) {
  KSetFamily f(n, k);
  for (const char* s : items) f.insert(parse_kset(s, n));
  return f;
}

/// Every subset of C(n,k) as a family, via mask enumeration.
std::vector<KSetFamily> all_subsets(int n, int k) {
  const auto universe = oracle::subsets(n, k);
  std::vector<KSetFamily> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << universe.size()); ++mask) {
    KSetFamily f(n, k);
    for (std::size_t i = 0; i < universe.size(); ++i) {
      if (mask >> i & 1) f.insert(oracle::to_kset(n, universe[i]));
    }
    out.push_back(std::move(f));
  }
  return out;
}

/// Collapsed run labels of P_X under the class labels of s.
std::string oracle_shape(const std::set<oracle::Set>& s, const oracle::Set& x) {
  std::string out;
  for (const auto& f : oracle::facets(x)) {
    const char c = oracle::classify(s, f);
    if (out.empty() || out.back() != c) out += c;
  }
  return out;
}

KSetFamily random_subset(int n, int k, std::mt19937_64& rng) {
  KSetFamily f(n, k);
  std::bernoulli_distribution coin(0.5);
  for (const auto& s : enumerate_ksets(n, k)) {
    if (coin(rng)) f.insert(s);
  }
  return f;
}

}  // namespace

TEST_CASE("check_realizable examples") {
  CHECK(check_realizable(fam(4, 3, {"123", "124"})).realizable);
  const auto bad = check_realizable(fam(4, 3, {"124"}));
  CHECK_FALSE(bad.realizable);
  REQUIRE(bad.generator.has_value());
  CHECK(bad.generator->to_string() == "1234");
  CHECK(bad.pattern == "0100");
  CHECK(check_realizable(KSetFamily(5, 2)).realizable);
  CHECK(check_realizable(KSetFamily::full(5, 2)).realizable);
  CHECK(check_convex(KSetFamily(5, 2)));
}

TEST_CASE("check_realizable and check_convex agree with the oracle exhaustively") {
  for (auto [n, k] : {std::pair{4, 3}, {4, 2}, {5, 3}, {4, 1}, {5, 4}}) {
    std::size_t realizable = 0;
    for (const auto& f : all_subsets(n, k)) {
      const bool expected = oracle::realizable(n, k, oracle::from_family(f));
      CHECK(check_realizable(f).realizable == expected);
      CHECK(check_convex(f) == expected);
      realizable += expected;
    }
    if (n == 4 && k == 3) CHECK(realizable == 8);
    if (n == 4 && k == 2) CHECK(realizable == 24);
  }
}

TEST_CASE("check_convex agrees with check_realizable on random subsets of C(6,3)") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10000; ++i) {
    const KSetFamily f = random_subset(6, 3, rng);
    CHECK(check_convex(f) == check_realizable(f).realizable);
  }
  for (int i = 0; i < 2000; ++i) {
    const KSetFamily f = random_realizable_set(6, 3, rng);
    CHECK(check_realizable(f).realizable);
    CHECK(check_convex(f));
  }
}

TEST_CASE("stays_realizable_with matches a full recheck") {
  std::mt19937_64 rng(5);
  const auto table_ptr = PacketTable::get(6, 2);
  const PacketTable& table = *table_ptr;
  for (int i = 0; i < 500; ++i) {
    const KSetFamily f = random_realizable_set(6, 2, rng);
    for (std::size_t r = 0; r < 15; ++r) {
      if (f.contains_rank(r)) continue;
      KSetFamily g = f;
      g.insert_rank(r);
      CHECK(stays_realizable_with(f, r, table) == check_realizable(g).realizable);
    }
  }
}

TEST_CASE("partition examples") {
  const Partition full = RealizableSet::full(5, 2).partition();
  CHECK(full.full == KSetFamily::full(5, 3));
  CHECK(full.suffix.empty());
  CHECK(full.prefix.empty());
  CHECK(full.empty.empty());

  const RealizableSet j(fam(4, 3, {"234", "134"}));
  CHECK(j.partition().suffix.to_string() == "{1234}");
  CHECK(j.partition().full.empty());

  const RealizableSet big(fam(4, 2, {"12", "13", "23", "14", "24"}));
  const Partition& p = big.partition();
  CHECK(p.full.to_string() == "{123,124}");
  CHECK(p.prefix.to_string() == "{134,234}");
  CHECK(p.suffix.empty());
  CHECK(p.empty.empty());
  CHECK(p.class_of(KSet(4, {1, 3, 4})) == PacketClass::prefix);

  CHECK_THROWS_AS(RealizableSet(fam(4, 3, {"124"})), Error);
  CHECK_FALSE(RealizableSet::try_make(fam(4, 3, {"124"})).has_value());
}

TEST_CASE("partition classes agree with the oracle and cover C(n,k+1)") {
  for (auto [n, k] : {std::pair{4, 2}, {5, 3}, {4, 1}}) {
    for (const auto& f : all_realizable_sets(n, k)) {
      const Partition p = RealizableSet(f).partition();
      const auto s = oracle::from_family(f);
      CHECK(p.invalid.empty());
      CHECK((p.suffix | p.prefix | p.full | p.empty) == KSetFamily::full(n, k + 1));
      CHECK(p.suffix.size() + p.prefix.size() + p.full.size() + p.empty.size() ==
            KSetFamily::full(n, k + 1).size());
      for (const auto& x : oracle::subsets(n, k + 1)) {
        CHECK(label(p.class_of(oracle::to_kset(n, x))) == oracle::classify(s, x));
      }
    }
  }
}

TEST_CASE("complement swaps prefix and suffix classes") {
  for (const auto& f : all_realizable_sets(5, 2)) {
    const RealizableSet j(f);
    const RealizableSet c = j.complement();
    CHECK(c.partition().prefix == j.partition().suffix);
    CHECK(c.partition().suffix == j.partition().prefix);
    CHECK(c.partition().full == j.partition().empty);
    CHECK(c.partition().empty == j.partition().full);
  }
}

TEST_CASE("all_realizable_sets counts") {
  CHECK(all_realizable_sets(4, 3).size() == 8);
  CHECK(all_realizable_sets(4, 2).size() == 24);
  CHECK(all_realizable_sets(5, 2).size() == 120);
  CHECK(all_realizable_sets(5, 4).size() == 10);
  CHECK(all_realizable_sets(3, 2).size() == 6);
  for (const auto& f : all_realizable_sets(4, 2)) CHECK(check_realizable(f).realizable);
  CHECK_THROWS_AS(all_realizable_sets(7, 3), Error);
}

TEST_CASE("segmentation examples") {
  const KSet x(4, {1, 2, 3, 4});
  const auto full = segmentation(RealizableSet::full(4, 2), x);
  CHECK(full.shape() == "F");
  REQUIRE(full.runs.size() == 1);
  CHECK(full.runs.front().members.size() == 4);
  CHECK(segmentation(RealizableSet::empty(4, 2), x).shape() == "0");

  const RealizableSet j(fam(4, 2, {"23", "13"}));
  const auto seg = segmentation(j, x);
  CHECK(seg.shape() == "s0p");
  CHECK(seg.runs[0].members == std::vector<KSet>{KSet(4, {1, 2, 3})});
  CHECK(seg.runs[1].members == std::vector<KSet>{KSet(4, {1, 2, 4})});
  CHECK(seg.runs[2].members == std::vector<KSet>{KSet(4, {1, 3, 4}), KSet(4, {2, 3, 4})});
}

TEST_CASE("segmentation shapes agree with the oracle and are allowed") {
  for (auto [n, k] : {std::pair{4, 2}, {5, 2}, {5, 3}, {4, 1}}) {
    for (const auto& f : all_realizable_sets(n, k)) {
      const RealizableSet j(f);
      const auto s = oracle::from_family(f);
      for (const auto& x : oracle::subsets(n, k + 2)) {
        const auto seg = segmentation(j, oracle::to_kset(n, x));
        CHECK(seg.shape() == oracle_shape(s, x));
        CHECK(is_allowed_shape(seg.shape()));
      }
      CHECK(forbidden_segmentations(f).empty());
    }
  }
}

TEST_CASE("shape predicates") {
  for (const char* s : {"sFp", "pFs", "s0p", "p0s", "sF", "Fp", "F", "0", "s", "p", "sp", "ps"}) {
    CHECK(is_allowed_shape(s));
  }
  // Sub-arrangements with empty parts; the forbidden ones are still allowed here.
  for (const char* s : {"Fs", "pF", "s0", "0p"}) CHECK(is_allowed_shape(s));
  for (const char* s : {"F0", "0F", "sFs", "sp0", "x", "Fx"}) CHECK_FALSE(is_allowed_shape(s));
  for (const char* s : {"Fs", "pF", "s0", "0p"}) CHECK(is_forbidden_shape(s));
  for (const char* s : {"sF", "Fp", "0s", "p0", "sFp"}) CHECK_FALSE(is_forbidden_shape(s));
}

// The forbidden shapes follow from membership alone, so no set of k-sets
// produces them; the detector and the oracle must both find nothing.
TEST_CASE("forbidden_segmentations matches the oracle on arbitrary sets") {
  std::size_t hits = 0;
  for (const auto& f : all_subsets(5, 2)) {
    const auto s = oracle::from_family(f);
    std::vector<std::pair<std::string, std::string>> expected;
    for (const auto& x : oracle::subsets(5, 4)) {
      const std::string shape = oracle_shape(s, x);
      if (shape == "Fs" || shape == "pF" || shape == "s0" || shape == "0p") {
        expected.emplace_back(oracle::to_kset(5, x).to_string(), shape);
      }
    }
    std::vector<std::pair<std::string, std::string>> got;
    for (const auto& h : forbidden_segmentations(f)) got.emplace_back(h.generator.to_string(), h.shape);
    CHECK(got == expected);
    hits += got.size();
  }
  CHECK(hits == 0);
}

TEST_CASE("single_step_leq") {
  const auto empty = RealizableSet::empty(4, 2);
  for (const auto& f : all_realizable_sets(4, 2)) {
    CHECK(single_step_leq(empty, RealizableSet(f)));
    CHECK(single_step_leq(RealizableSet(f), RealizableSet::full(4, 2)));
  }
  CHECK(single_step_leq(RealizableSet(fam(4, 3, {"123"})), RealizableSet(fam(4, 3, {"123", "124"}))));
  CHECK_FALSE(single_step_leq(RealizableSet(fam(4, 3, {"123"})), RealizableSet(fam(4, 3, {"234"}))));
  CHECK_FALSE(single_step_leq(RealizableSet(fam(4, 3, {"123", "124"})), RealizableSet(fam(4, 3, {"123"}))));
}

TEST_CASE("single_step_leq agrees with a brute reachability search") {
  const auto sets = all_realizable_sets(4, 2);
  std::set<std::set<oracle::Set>> realizable;
  for (const auto& f : sets) realizable.insert(oracle::from_family(f));
  for (const auto& a : sets) {
    // Brute: BFS upward from a through realizable one-element extensions.
    std::set<std::set<oracle::Set>> reach{oracle::from_family(a)};
    std::vector<std::set<oracle::Set>> stack{oracle::from_family(a)};
    while (!stack.empty()) {
      auto cur = stack.back();
      stack.pop_back();
      for (const auto& x : oracle::subsets(4, 2)) {
        if (cur.count(x)) continue;
        auto next = cur;
        next.insert(x);
        if (realizable.count(next) && reach.insert(next).second) stack.push_back(next);
      }
    }
    for (const auto& b : sets) {
      CHECK(single_step_leq(RealizableSet(a), RealizableSet(b)) ==
            (reach.count(oracle::from_family(b)) > 0));
    }
  }
}

TEST_CASE("partition structure for realizable 2-sets") {
  for (int n : {4, 5}) {
    for (const auto& f : all_realizable_sets(n, 2)) {
      const RealizableSet j(f);
      const Partition& p = j.partition();
      const auto js = RealizableSet::try_make(p.suffix);
      const auto jp = RealizableSet::try_make(p.prefix);
      REQUIRE(js.has_value());
      REQUIRE(jp.has_value());
      CHECK(js->partition().full.empty());
      // No 4-packet meets both J_F and J_empty.
      for (const auto& x : enumerate_ksets(n, 4)) {
        bool f_hit = false, e_hit = false;
        for (const auto& m : packet(x).members) {
          f_hit |= p.full.contains(m);
          e_hit |= p.empty.contains(m);
        }
        CHECK_FALSE((f_hit && e_hit));
      }
    }
  }
}
