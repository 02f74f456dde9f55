#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "bruhat/affine.hpp"
#include "bruhat/error.hpp"

using namespace bruhat;

namespace {

AffineKSet ks(const char* text) { return parse_affine_kset(text); }

AffineSet set_of(std::initializer_list<const char*> items) {
  std::vector<AffineKSet> v;
  for (const char* t : items) v.push_back(ks(t));
  return make_affine_set(std::move(v));
}

PeriodicPermutation word(int n, const char* text) {
  return PeriodicPermutation::from_word(n, parse_affine_word(text, n));
}

/// Brute: all words of length exactly len over letters 0..N-1.
std::vector<std::vector<int>> words_of_length(int n, int len) {
  std::vector<std::vector<int>> out{{}};
  for (int i = 0; i < len; ++i) {
    std::vector<std::vector<int>> next;
    for (const auto& w : out) {
      for (int l = 0; l < n; ++l) {
        auto longer = w;
        longer.push_back(l);
        next.push_back(std::move(longer));
      }
    }
    out = std::move(next);
  }
  return out;
}

/// Brute: inversion classes from a wide fixed window.
AffineSet brute_inversions(const PeriodicPermutation& w) {
  std::vector<AffineKSet> out;
  const long long n = w.period();
  for (long long x = 1; x <= n; ++x) {
    for (long long y = x + 1; y <= x + 60 * n; ++y) {
      if (w(y) < w(x)) out.emplace_back(w.period(), std::vector<long long>{x, y});
    }
  }
  return make_affine_set(std::move(out));
}

/// Brute: member positions of every 3-element generator in a window.
std::vector<std::vector<AffineKSet>> brute_packets(int n, long long width) {
  std::vector<std::vector<AffineKSet>> out;
  for (long long a = 0; a < n; ++a) {
    for (long long b = a + 1; b <= a + width; ++b) {
      for (long long c = b + 1; c <= a + width; ++c) {
        out.push_back({AffineKSet(n, {a, b}), AffineKSet(n, {a, c}), AffineKSet(n, {b, c})});
      }
    }
  }
  return out;
}

std::vector<int> hits(const AffineSet& s, const std::vector<AffineKSet>& members) {
  std::vector<int> out;
  for (const auto& m : members) out.push_back(std::binary_search(s.begin(), s.end(), m) ? 1 : 0);
  return out;
}

bool prefix_or_suffix(const std::vector<int>& h) {
  const auto count = std::count(h.begin(), h.end(), 1);
  if (count <= 1 && !(count == 1 && h.front() == 0 && h.back() == 0)) return true;
  const bool prefix = std::all_of(h.begin(), h.begin() + count, [](int v) { return v == 1; });
  const bool suffix = std::all_of(h.end() - count, h.end(), [](int v) { return v == 1; });
  return prefix || suffix;
}

bool brute_realizable(const AffineSet& s, int n) {
  for (const auto& p : brute_packets(n, 12)) {
    if (!prefix_or_suffix(hits(s, p))) return false;
  }
  return true;
}

/// Brute: admissible orders by filtering all permutations.
std::set<std::vector<AffineKSet>> brute_orders(const AffineSet& j, int n) {
  std::set<std::vector<AffineKSet>> out;
  std::vector<AffineKSet> perm = j;
  const auto packets = brute_packets(n, 12);
  do {
    std::map<AffineKSet, std::size_t> pos;
    for (std::size_t i = 0; i < perm.size(); ++i) pos.emplace(perm[i], i);
    bool ok = true;
    for (const auto& p : packets) {
      const auto h = hits(j, p);
      std::vector<std::size_t> at;
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (h[i]) at.push_back(pos.at(p[i]));
      }
      if (at.size() < 2) continue;
      const bool lex = std::is_sorted(at.begin(), at.end());
      const bool antilex = std::is_sorted(at.rbegin(), at.rend());
      const bool full = at.size() == p.size();
      const bool prefix = h.front() == 1 && !full;
      if (full ? !(lex || antilex) : prefix ? !lex : !antilex) {
        ok = false;
        break;
      }
    }
    if (ok) out.insert(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace

TEST_CASE("periodic permutations") {
  const auto id = PeriodicPermutation::identity(3);
  CHECK(id(-4) == -4);
  CHECK(id(7) == 7);
  const auto s1 = word(3, "s1");
  CHECK(s1.base() == std::vector<long long>{2, 1, 3});
  CHECK(s1(4) == 5);
  CHECK(s1(5) == 4);
  const auto s0 = word(3, "s0");
  CHECK(s0.base() == std::vector<long long>{0, 2, 4});
  CHECK(word(3, "s3") == s0);
  CHECK(word(3, "s1 s1") == id);
  CHECK(word(3, "010") == word(3, "101"));
  CHECK(word(3, "") == id);
  CHECK_THROWS_AS(PeriodicPermutation(3, {1, 4, 2}), Error);
  CHECK_THROWS_AS(parse_affine_word("s5", 3), Error);
  CHECK_THROWS_AS(parse_affine_word("sx", 3), Error);
  for (int n = 2; n <= 4; ++n) {
    for (int len = 0; len <= 4; ++len) {
      for (const auto& letters : words_of_length(n, len)) {
        const auto w = PeriodicPermutation::from_word(n, letters);
        for (long long x = -2 * n; x <= 2 * n; ++x) CHECK(w(x + n) == w(x) + n);
      }
    }
  }
}

TEST_CASE("affine k-set canonicalization") {
  CHECK(ks("[4,6]@3") == ks("[1,3]@3"));
  CHECK(ks("[-2,0]@3") == ks("[1,3]@3"));
  CHECK(ks("[3,4]@3") == ks("[0,1]@3"));
  CHECK(ks("[3,4]@3").to_string() == "[0,1]@3");
  CHECK(ks("[1,4]@3").degenerate());
  CHECK_FALSE(ks("[1,3]@3").degenerate());
  CHECK(parse_affine_kset("[1,3]", 3) == ks("[1,3]@3"));
  CHECK_THROWS_AS(parse_affine_kset("[1,3]"), Error);
  CHECK_THROWS_AS(parse_affine_kset("[1,1]@3"), Error);
  CHECK_THROWS_AS(parse_affine_kset("[1,x]@3"), Error);
  for (long long a = -6; a <= 6; ++a) {
    for (long long b = a + 1; b <= a + 7; ++b) {
      for (long long m = -3; m <= 3; ++m) {
        CHECK(AffineKSet(3, {a, b}) == AffineKSet(3, {a + 3 * m, b + 3 * m}));
        CHECK((AffineKSet(3, {a, b}) == AffineKSet(3, {a + 3 * m, b + 3 * m + 1})) == false);
      }
      const auto c = AffineKSet(3, {a, b});
      CHECK(c.rep().front() >= 0);
      CHECK(c.rep().front() < 3);
      CHECK(parse_affine_kset(c.to_string()) == c);
    }
  }
}

TEST_CASE("affine packets") {
  const auto p = affine_packet(ks("[1,3,4]@3"));
  REQUIRE(p.members.size() == 3);
  CHECK(p.members[0] == ks("[1,3]@3"));
  CHECK(p.members[1] == ks("[1,4]@3"));
  CHECK(p.members[1].degenerate());
  CHECK(p.members[2] == ks("[0,1]@3"));
  const auto q = affine_packet(ks("[0,1,3]@3"));
  CHECK(q.members == std::vector<AffineKSet>{ks("[0,1]@3"), ks("[0,3]@3"), ks("[1,3]@3")});
  CHECK(q.position(ks("[3,4]@3")) == 0);
  CHECK(q.position(ks("[1,2]@3")) == -1);
  for (long long m = -2; m <= 2; ++m) {
    const auto shifted = affine_packet(AffineKSet(3, {1 + 3 * m, 3 + 3 * m, 4 + 3 * m}));
    CHECK(shifted.members == p.members);
  }
  CHECK_THROWS_AS(affine_packet(ks("[1]@3")), Error);
}

TEST_CASE("affine inversions") {
  CHECK(affine_word_inversions(PeriodicPermutation::identity(3)).empty());
  CHECK(affine_word_inversions(word(3, "s1")) == set_of({"[1,2]@3"}));
  CHECK(affine_word_inversions(word(3, "s0")) == set_of({"[0,1]@3"}));
  const auto two = affine_word_inversions(word(3, "s1 s2"));
  CHECK(two.size() == 2);
  CHECK(two == brute_inversions(word(3, "s1 s2")));
  // A pure translation has no inversions.
  CHECK(affine_word_inversions(PeriodicPermutation(3, {2, 3, 4})).empty());
  for (int n = 3; n <= 4; ++n) {
    for (int len = 0; len <= 5; ++len) {
      for (const auto& letters : words_of_length(n, len)) {
        const auto w = PeriodicPermutation::from_word(n, letters);
        const auto inv = affine_word_inversions(w);
        CHECK(inv == brute_inversions(w));
        for (const auto& x : inv) CHECK_FALSE(x.degenerate());
      }
    }
  }
}

TEST_CASE("affine realizability") {
  // The singleton is blocked by the packet of [1,2,3], where [1,3] sits in the middle.
  const auto single = affine_check_realizable(set_of({"[1,3]@3"}));
  CHECK_FALSE(single.realizable);
  REQUIRE(single.generator);
  CHECK(*single.generator == ks("[1,2,3]@3"));
  CHECK(single.pattern == "010");
  CHECK_FALSE(affine_check_realizable(set_of({"[1,3]@3", "[3,4]@3"})));
  CHECK(affine_check_realizable(set_of({"[1,2]@3"})));
  CHECK(affine_check_realizable({}));
  CHECK_THROWS_AS(affine_check_realizable(set_of({"[1,4]@3"})), Error);
  try {
    affine_check_realizable(set_of({"[1,4]@3"}));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::degenerate_input);
  }
  CHECK(affine_shares_packet(ks("[1,2]@3"), ks("[2,3]@3")));
  CHECK_FALSE(affine_shares_packet(ks("[1,2]@3"), ks("[1,2]@3")));
  CHECK_FALSE(affine_shares_packet(ks("[1,2]@4"), ks("[3,4]@4")));

  for (int n = 3; n <= 4; ++n) {
    for (int len = 0; len <= 6; ++len) {
      for (const auto& letters : words_of_length(n, len)) {
        const auto inv = affine_word_inversions(PeriodicPermutation::from_word(n, letters));
        CHECK(affine_check_realizable(inv).realizable);
      }
    }
  }
  // Random small non-degenerate sets agree with the windowed brute force.
  std::vector<AffineKSet> pool;
  for (long long a = 0; a < 3; ++a) {
    for (long long b = a + 1; b <= a + 5; ++b) {
      if ((b - a) % 3 != 0) pool.emplace_back(3, std::vector<long long>{a, b});
    }
  }
  for (unsigned mask = 0; mask < (1U << pool.size()); mask += 7) {
    std::vector<AffineKSet> items;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (mask >> i & 1) items.push_back(pool[i]);
    }
    const auto s = make_affine_set(items);
    CHECK(affine_check_realizable(s).realizable == brute_realizable(s, 3));
  }
}

TEST_CASE("affine admissible orders") {
  const auto j1 = affine_word_inversions(word(3, "s1"));
  std::size_t count = affine_admissible_orders(j1, [](const auto&) {});
  CHECK(count == 1);
  const auto r1 = affine_source_sink(j1);
  CHECK(r1.classes == 1);
  CHECK(r1.sources == 1);
  CHECK(r1.sinks == 1);

  CHECK_THROWS_AS(affine_admissible_orders(set_of({"[1,3]@3", "[3,4]@3"}), [](const auto&) {}),
                  Error);

  for (int n = 3; n <= 4; ++n) {
    for (int len = 0; len <= 5; ++len) {
      for (const auto& letters : words_of_length(n, len)) {
        const auto j = affine_word_inversions(PeriodicPermutation::from_word(n, letters));
        std::set<std::vector<AffineKSet>> found;
        affine_admissible_orders(j, [&](const auto& o) { found.insert(o); });
        CHECK(found == brute_orders(j, n));
      }
    }
  }

  for (const auto& letters : words_of_length(3, 4)) {
    const auto j = affine_word_inversions(PeriodicPermutation::from_word(3, letters));
    const auto report = affine_source_sink_report(j);
    CHECK_MESSAGE(report.passed(), report.to_text());
  }

  const auto j = affine_word_inversions(word(3, "s0 s1 s2 s1"));
  CHECK_THROWS_AS(affine_admissible_orders(j, [](const auto&) {}, 0), LimitExceeded);
}
