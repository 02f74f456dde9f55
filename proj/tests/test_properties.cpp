#include <doctest.h>

#include <random>

#include "bruhat/flip_engine.hpp"
#include "bruhat/exec.hpp"
#include "bruhat/order.hpp"
#include "bruhat/realizability.hpp"
#include "lemmas.hpp"

using namespace bruhat;

namespace {

void require_clean(const lemmas::Suite& suite) {
  for (const auto& [name, t] : suite.tallies()) {
    INFO(name << ": " << t.violations << " of " << t.checked << ", first " << t.witness);
    CHECK(t.violations == 0);
    CHECK(t.checked > 0);
  }
}

}  // namespace

TEST_CASE("lemma suite: exhaustive small cases and random n = 6") {
  lemmas::Suite suite;
  lemmas::sweep({.exhaustive_n = 4, .random_n = 6, .random_sets = 500, .seed = 7}, suite);
  CHECK(suite.tallies().size() == 9);
  require_clean(suite);
}

TEST_CASE("lemma suite: random n = 5 with a different seed") {
  lemmas::Suite suite;
  lemmas::sweep({.exhaustive_n = 0, .random_n = 5, .random_sets = 300, .seed = 11}, suite);
  require_clean(suite);
}

TEST_CASE("check_convex agrees with check_realizable on random sets") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 400; ++t) {
    const int n = 5 + t % 2;
    const int k = 2 + t % 2;
    KSetFamily s(n, k);
    for (const auto& x : KSetUniverse::get(n, k)->sets()) {
      if (rng() % 3 == 0) s.insert(x);
    }
    CHECK(check_convex(s) == check_realizable(s).realizable);
    const KSetFamily r = random_realizable_set(n, k, rng);
    CHECK(check_convex(r));
    CHECK(check_realizable(r.complement()));
  }
}

TEST_CASE("random admissible orders: parallel kernels match serial") {
  std::mt19937_64 rng(5);
  const int saved = thread_count();
  set_thread_count(4);
  for (int t = 0; t < 200; ++t) {
    const int n = 5 + t % 3;
    const KOrder rho = random_admissible_order(n, 2, rng);
    CHECK(is_admissible(rho));
    const auto serial = find_flips(rho, Exec::serial);
    const auto parallel = find_flips(rho, Exec::parallel);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
      CHECK(serial[i].generator == parallel[i].generator);
      CHECK(serial[i].rearranged_order == parallel[i].rearranged_order);
      CHECK(serial[i].swap_log == parallel[i].swap_log);
    }
    const KSetFamily j = random_realizable_set(n, 2, rng);
    const Partition a = classify(j, Exec::serial);
    const Partition b = classify(j, Exec::parallel);
    CHECK(a.suffix == b.suffix);
    CHECK(a.prefix == b.prefix);
    CHECK(a.full == b.full);
    CHECK(a.empty == b.empty);
  }
  set_thread_count(saved);
}
