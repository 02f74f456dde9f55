#include <doctest.h>

#include <json.hpp>

#include "bruhat/error.hpp"
#include "bruhat/poset.hpp"
#include "oracle.hpp"

using namespace bruhat;

namespace {

KSetFamily fam(int n, int k, std::initializer_list<const char*> items) {
  KSetFamily f(n, k);
  for (const char* s : items) f.insert(parse_kset(s, n));
  return f;
}

using EdgeKey = std::tuple<KSetFamily, KSetFamily, KSet>;

std::set<KSetFamily> node_keys(const BruhatPoset& p) {
  std::set<KSetFamily> out;
  for (const auto& n : p.nodes()) out.insert(n.inv.members());
  return out;
}

std::set<EdgeKey> edge_keys(const BruhatPoset& p) {
  std::set<EdgeKey> out;
  for (const auto& e : p.edges()) {
    out.emplace(p.nodes()[e.lower].inv.members(), p.nodes()[e.upper].inv.members(), e.flip);
  }
  return out;
}

std::vector<std::vector<KSet>> all_chains(const BruhatPoset& p) {
  std::vector<std::vector<KSet>> out;
  ChainEnumerator chains(p);
  while (auto c = chains.next()) out.push_back(*c);
  return out;
}

std::set<oracle::Seq> admissible_set(int n, int k) {
  std::set<oracle::Seq> out;
  for_each_admissible_order(RealizableSet::full(n, k),
                            [&](const KOrder& o) { out.insert(oracle::to_seq(o)); });
  return out;
}

/// Brute: realizable U with lo ⊆ U ⊆ hi, by filtering every subset of C(n,k).
std::set<KSetFamily> realizable_between(const KSetFamily& lo, const KSetFamily& hi) {
  std::set<KSetFamily> out;
  const auto universe = oracle::subsets(lo.n(), lo.k());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << universe.size()); ++mask) {
    std::set<oracle::Set> s;
    for (std::size_t i = 0; i < universe.size(); ++i) {
      if (mask >> i & 1) s.insert(universe[i]);
    }
    const KSetFamily f = oracle::to_family(lo.n(), lo.k(), s);
    if (lo.is_subset_of(f) && f.is_subset_of(hi) && oracle::realizable(lo.n(), lo.k(), s)) {
      out.insert(f);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("B(4,2) is the octagon of the figure") {
  const BruhatPoset p = build_bnk(4, 2);
  CHECK(p.nodes().size() == 8);
  CHECK(p.edges().size() == 8);
  CHECK(p.nodes().front().inv.members().empty());
  CHECK(p.nodes().back().inv.members() == KSetFamily::full(4, 3));
  std::multiset<std::string> labels;
  for (const auto& e : p.edges()) labels.insert(e.flip.to_string());
  CHECK(labels == std::multiset<std::string>{"123", "123", "124", "124", "134", "134", "234", "234"});

  // Class sizes by rank: {2}, {1,1}, {4,4}, {1,1}, {2}.
  std::map<std::size_t, std::multiset<std::size_t>> sizes;
  for (const auto& node : p.nodes()) {
    sizes[node.rank].insert(equivalence_class(node.representative).members.size());
  }
  CHECK(sizes[0] == std::multiset<std::size_t>{2});
  CHECK(sizes[1] == std::multiset<std::size_t>{1, 1});
  CHECK(sizes[2] == std::multiset<std::size_t>{4, 4});
  CHECK(sizes[3] == std::multiset<std::size_t>{1, 1});
  CHECK(sizes[4] == std::multiset<std::size_t>{2});

  std::set<std::string> from_min, into_max;
  for (std::size_t e : p.out_edges(0)) from_min.insert(p.edges()[e].flip.to_string());
  for (std::size_t e : p.in_edges(7)) into_max.insert(p.edges()[e].flip.to_string());
  CHECK(from_min == std::set<std::string>{"123", "234"});
  CHECK(into_max == std::set<std::string>{"123", "234"});

  const auto chains = all_chains(p);
  CHECK(chains.size() == 2);
  for (const auto& c : chains) CHECK(is_admissible(KOrder(4, 3, c)).admissible);
}

TEST_CASE("small B(n,k) sizes") {
  CHECK(build_bnk(4, 1).nodes().size() == 24);
  CHECK(build_bnk(3, 2).nodes().size() == 2);
  CHECK(build_bnk(3, 3).nodes().size() == 1);
  CHECK(build_bnk(3, 1).nodes().size() == 6);
  CHECK(build_bnk(5, 2).nodes().size() == all_realizable_sets(5, 3).size());
  CHECK(build_bnk(5, 1).nodes().size() == 120);
  CHECK_THROWS_AS(build_bnk(4, 0), Error);
  CHECK_THROWS_AS(build_bnk(4, 5), Error);
}

TEST_CASE("nodes carry consistent representatives and ranks") {
  for (auto [n, k] : {std::pair{4, 1}, {4, 2}, {5, 2}, {5, 3}, {6, 3}}) {
    const BruhatPoset p = build_bnk(n, k);
    for (const auto& node : p.nodes()) {
      CHECK(node.rank == node.inv.size());
      CHECK(inversion_set(node.representative) == node.inv);
      CHECK(is_admissible(node.representative).admissible);
      if (n <= 5) {
        CHECK(node.representative == equivalence_class(node.representative).representative());
      }
    }
    for (const auto& e : p.edges()) {
      KSetFamily up = p.nodes()[e.lower].inv.members();
      CHECK_FALSE(up.contains(e.flip));
      up.insert(e.flip);
      CHECK(up == p.nodes()[e.upper].inv.members());
    }
    CHECK(check_poset_structure(p).passed());
  }
}

TEST_CASE("maximal chains are the admissible orders one level up") {
  for (auto [n, k] : {std::pair{4, 1}, {4, 2}, {3, 2}, {5, 1}, {3, 1}}) {
    const BruhatPoset p = build_bnk(n, k);
    std::set<oracle::Seq> chains;
    for (const auto& c : all_chains(p)) chains.insert(oracle::to_seq(KOrder(n, k + 1, c)));
    CHECK(chains == admissible_set(n, k + 1));
    CHECK(count_maximal_chains(p) == chains.size());
  }
  CHECK(count_maximal_chains(build_bnk(4, 1)) == 16);
  CHECK(count_maximal_chains(build_bnk(5, 1)) == 768);
  CHECK(count_maximal_chains(build_bnk(3, 2)) == 1);
  CHECK(count_maximal_chains(build_bnk(3, 1)) == 2);
}

TEST_CASE("chain enumeration cap") {
  const BruhatPoset p = build_bnk(4, 1);
  ChainEnumerator chains(p, 3);
  for (int i = 0; i < 3; ++i) CHECK(chains.next().has_value());
  CHECK_THROWS_AS(chains.next(), LimitExceeded);
}

TEST_CASE("node budget") {
  BuildOptions small;
  small.max_nodes = 5;
  try {
    build_bnk(4, 2, small);
    FAIL("expected a budget error");
  } catch (const LimitExceeded& e) {
    CHECK(e.kind() == ErrorKind::budget_exceeded);
    CHECK(e.reached() >= 5);
  }
}

TEST_CASE("parallel construction matches serial") {
  BuildOptions par;
  par.exec = Exec::parallel;
  for (auto [n, k] : {std::pair{5, 2}, {6, 2}, {6, 3}}) {
    const BruhatPoset a = build_bnk(n, k);
    const BruhatPoset b = build_bnk(n, k, par);
    CHECK(node_keys(a) == node_keys(b));
    CHECK(edge_keys(a) == edge_keys(b));
    CHECK(to_json(a) == to_json(b));
  }
}

TEST_CASE("verify_ziegler_iso") {
  for (auto [n, k] : {std::pair{4, 2}, {5, 2}, {4, 3}, {4, 1}, {5, 3}}) {
    const Report r = verify_ziegler_iso(n, k);
    CHECK(r.passed());
  }
}

TEST_CASE("build_paths_to examples") {
  const BruhatPoset full = build_paths_to(RealizableSet::full(4, 2));
  const BruhatPoset bnk = build_bnk(4, 2);
  CHECK(node_keys(full) == node_keys(bnk));
  CHECK(edge_keys(full) == edge_keys(bnk));

  const BruhatPoset ex = build_paths_to(RealizableSet(fam(4, 3, {"134", "234", "124"})));
  CHECK(ex.find(fam(4, 4, {"1234"})).has_value());
  CHECK(ex.nodes().size() == 1);

  const BruhatPoset tri = build_paths_to(RealizableSet(fam(4, 2, {"12", "13", "23"})));
  REQUIRE(tri.nodes().size() == 2);
  CHECK(tri.nodes()[0].inv.to_string() == "{}");
  CHECK(tri.nodes()[1].inv.to_string() == "{123}");
}

TEST_CASE("paths-to node sets are the realizable sets between J_s and J_s plus J_F") {
  for (auto [n, k] : {std::pair{4, 2}, {5, 2}, {5, 3}}) {
    for (const auto& f : all_realizable_sets(n, k)) {
      const RealizableSet j(f);
      const Partition& part = j.partition();
      const BruhatPoset p = build_paths_to(j);
      CHECK(node_keys(p) == realizable_between(part.suffix, part.suffix | part.full));
      REQUIRE(p.sources().size() == 1);
      REQUIRE(p.sinks().size() == 1);
      CHECK(p.nodes()[p.sources()[0]].inv.members() == part.suffix);
      CHECK(p.nodes()[p.sinks()[0]].inv.members() == (part.suffix | part.full));
      CHECK(check_poset_structure(p).passed());
    }
  }
}

TEST_CASE("inversion sets of admissible J-orders are realizable") {
  for (auto [n, k] : {std::pair{4, 2}, {5, 2}, {4, 3}, {5, 3}}) {
    for (const auto& f : all_realizable_sets(n, k)) {
      for_each_admissible_order(RealizableSet(f), [&](const KOrder& rho) {
        const auto inv = oracle::inversions(n, k, oracle::to_seq(rho));
        CHECK(oracle::realizable(n, k + 1, inv));
      });
    }
  }
}

TEST_CASE("admissible J-orders are the paths from the empty set to J") {
  for (auto [n, k] : {std::pair{4, 2}, {4, 3}, {4, 1}}) {
    for (const auto& f : all_realizable_sets(n, k)) {
      // Brute: orderings of J whose every prefix is realizable.
      std::vector<oracle::Set> dom;
      for (const auto& x : f.members()) dom.push_back(x.elements());
      std::size_t paths = 0;
      do {
        std::set<oracle::Set> prefix;
        bool ok = true;
        for (const auto& x : dom) {
          prefix.insert(x);
          if (!oracle::realizable(n, k, prefix)) {
            ok = false;
            break;
          }
        }
        paths += ok;
      } while (std::next_permutation(dom.begin(), dom.end()));
      CHECK(for_each_admissible_order(RealizableSet(f), [](const KOrder&) {}) == paths);
    }
  }
}

TEST_CASE("extend_to_max_chain") {
  CHECK(extend_to_max_chain(lex_order(4, 2)) == lex_order(4, 2));
  const KOrder ext = extend_to_max_chain(parse_order("234<134<124", 4));
  CHECK(ext.to_string() == "234<134<124<123");
  CHECK(inversion_set(ext).to_string() == "{1234}");
  for (int n : {4, 5}) {
    for (const auto& f : all_realizable_sets(n, 2)) {
      const RealizableSet j(f);
      const auto min_order = canonical_order(j, j.partition().suffix);
      REQUIRE(min_order.has_value());
      const KOrder full = extend_to_max_chain(*min_order);
      CHECK(inversion_set(full).members() == j.partition().suffix);
      CHECK(std::equal(min_order->begin(), min_order->end(), full.begin()));
      if (n == 4) {
        for_each_admissible_order(j, [&](const KOrder& gamma) {
          const KOrder e = extend_to_max_chain(gamma);
          CHECK(is_admissible(e).admissible);
          CHECK(inversion_set(e) == inversion_set(gamma));
        });
      }
    }
  }
}

TEST_CASE("restrict keeps edges among kept nodes") {
  const BruhatPoset p = build_bnk(4, 2);
  const BruhatPoset low = p.restrict([](const BruhatNode& n) { return n.rank <= 2; });
  CHECK(low.nodes().size() == 5);
  CHECK(low.edges().size() == 4);
  CHECK(low.kind() == PosetKind::restricted);
}

TEST_CASE("exports") {
  const BruhatPoset p = build_bnk(4, 2);
  const std::string dot = to_dot(p);
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(dot.find("rank=same") != std::string::npos);
  CHECK(dot.find("\"{123,124}\"") != std::string::npos);
  const auto doc = nlohmann::json::parse(to_json(p));
  CHECK(doc["schema"] == "bruhat/1");
  CHECK(doc["nodes"].size() == 8);
  CHECK(doc["edges"].size() == 8);
  CHECK(doc["nodes"][0]["rank"] == 0);
  CHECK(doc["edges"][0]["flip"].size() == 3);
  CHECK(to_json(p) == to_json(build_bnk(4, 2)));
  CHECK(to_dot(p) == to_dot(build_bnk(4, 2)));
}
