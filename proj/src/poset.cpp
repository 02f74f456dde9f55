#include "bruhat/poset.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include <json.hpp>

#include "bruhat/error.hpp"
#include "bruhat/flip_engine.hpp"
#include "bruhat/packets.hpp"

namespace bruhat {

const char* to_string(PosetKind kind) noexcept {
  switch (kind) {
    case PosetKind::full: return "full";
    case PosetKind::paths_to_set: return "paths-to-set";
    case PosetKind::restricted: return "restricted";
  }
  return "unknown";
}

BruhatPoset::BruhatPoset(PosetKind kind, RealizableSet domain, std::vector<BruhatNode> nodes,
                         std::vector<BruhatEdge> edges)
    : kind_(kind), domain_(std::move(domain)), nodes_(std::move(nodes)),
      edges_(std::move(edges)), out_(nodes_.size()), in_(nodes_.size()) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) index_.emplace(nodes_[i].inv.members(), i);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    out_[edges_[e].lower].push_back(e);
    in_[edges_[e].upper].push_back(e);
  }
}

std::optional<std::size_t> BruhatPoset::find(const KSetFamily& inv) const {
  const auto it = index_.find(inv);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> BruhatPoset::sources() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (in_[i].empty()) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> BruhatPoset::sinks() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (out_[i].empty()) out.push_back(i);
  }
  return out;
}

std::size_t BruhatPoset::max_rank() const noexcept {
  std::size_t r = 0;
  for (const auto& node : nodes_) r = std::max(r, node.rank);
  return r;
}

BruhatPoset BruhatPoset::restrict(const std::function<bool(const BruhatNode&)>& keep) const {
  std::vector<std::size_t> remap(nodes_.size(), SIZE_MAX);
  std::vector<BruhatNode> nodes;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!keep(nodes_[i])) continue;
    remap[i] = nodes.size();
    nodes.push_back(nodes_[i]);
  }
  std::vector<BruhatEdge> edges;
  for (const auto& e : edges_) {
    if (remap[e.lower] == SIZE_MAX || remap[e.upper] == SIZE_MAX) continue;
    edges.push_back({remap[e.lower], remap[e.upper], e.flip});
  }
  return BruhatPoset(PosetKind::restricted, domain_, std::move(nodes), std::move(edges));
}

std::size_t default_max_nodes() {
  if (const char* env = std::getenv("BRUHAT_MAX_NODES")) {
    try {
      const long long v = std::stoll(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (...) {
    }
  }
  return 1'000'000;
}

namespace {

template <class F>
void for_range(Exec exec, std::size_t count, F&& f) {
  const long long total = static_cast<long long>(count);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
    for (long long i = 0; i < total; ++i) f(static_cast<std::size_t>(i));
  } else {
    for (long long i = 0; i < total; ++i) f(static_cast<std::size_t>(i));
  }
}

BruhatPoset build_from(PosetKind kind, const RealizableSet& j, const BuildOptions& options) {
  const Partition& part = j.partition();
  auto min = canonical_order(j, part.suffix);
  if (!min) {
    fail(ErrorKind::internal_consistency,
         "no admissible order with inversion set " + part.suffix.to_string());
  }
  std::vector<BruhatNode> nodes;
  std::vector<BruhatEdge> edges;
  std::unordered_map<KSetFamily, std::size_t, KSetFamilyHash> index;
  nodes.push_back({InversionSet(part.suffix), std::move(*min), part.suffix.size()});
  index.emplace(part.suffix, 0);

  std::vector<std::size_t> frontier{0};
  while (!frontier.empty()) {
    std::vector<std::vector<FlipResult>> flips(frontier.size());
    for_range(options.exec, frontier.size(), [&](std::size_t i) {
      flips[i] = find_flips(nodes[frontier[i]].representative, Exec::serial);
    });

    struct Pending {
      std::size_t lower;
      KSetFamily upper;
      KSet flip;
    };
    std::vector<Pending> pending;
    std::set<KSetFamily> fresh;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      for (const auto& f : flips[i]) {
        KSetFamily inv = nodes[frontier[i]].inv.members();
        inv.insert(f.generator);
        if (!index.count(inv)) fresh.insert(inv);
        pending.push_back({frontier[i], std::move(inv), f.generator});
      }
    }

    const std::vector<KSetFamily> added(fresh.begin(), fresh.end());
    if (nodes.size() + added.size() > options.max_nodes) {
      throw LimitExceeded(ErrorKind::budget_exceeded,
                          "poset exceeds " + std::to_string(options.max_nodes) +
                              " nodes (" + std::to_string(nodes.size()) +
                              " built through rank " + std::to_string(nodes.back().rank) + ")",
                          nodes.size());
    }
    std::vector<std::optional<KOrder>> reps(added.size());
    for_range(options.exec, added.size(),
              [&](std::size_t i) { reps[i] = canonical_order(j, added[i]); });

    std::vector<std::size_t> next;
    for (std::size_t i = 0; i < added.size(); ++i) {
      if (!reps[i]) {
        fail(ErrorKind::internal_consistency,
             "flip produced inversion set " + added[i].to_string() + " with no admissible order");
      }
      const std::size_t id = nodes.size();
      index.emplace(added[i], id);
      nodes.push_back({InversionSet(added[i]), std::move(*reps[i]), added[i].size()});
      next.push_back(id);
    }
    for (auto& p : pending) edges.push_back({p.lower, index.at(p.upper), p.flip});
    frontier = std::move(next);
  }
  return BruhatPoset(kind, j, std::move(nodes), std::move(edges));
}

}  // namespace

BruhatPoset build_bnk(int n, int k, const BuildOptions& options) {
  if (n < 1 || k < 1 || k > n) {
    fail(ErrorKind::invalid_arguments,
         "build_bnk needs 1 <= k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
  return build_from(PosetKind::full, RealizableSet::full(n, k), options);
}

BruhatPoset build_paths_to(const RealizableSet& j, const BuildOptions& options) {
  return build_from(PosetKind::paths_to_set, j, options);
}

ChainEnumerator::ChainEnumerator(const BruhatPoset& poset, std::size_t cap)
    : poset_(&poset), cap_(cap), roots_(poset.sources()) {}

std::optional<std::vector<KSet>> ChainEnumerator::next() {
  auto emit = [&](std::vector<KSet> chain) {
    if (++emitted_ > cap_) {
      throw LimitExceeded(ErrorKind::cap_exceeded,
                          "maximal chain enumeration exceeds cap of " + std::to_string(cap_),
                          cap_);
    }
    return std::optional<std::vector<KSet>>(std::move(chain));
  };
  while (true) {
    if (stack_.empty()) {
      if (roots_.empty()) return std::nullopt;
      const std::size_t root = roots_.front();
      roots_.erase(roots_.begin());
      labels_.clear();
      if (poset_->out_edges(root).empty()) return emit({});
      stack_.push_back({root, 0});
      continue;
    }
    Frame& top = stack_.back();
    const auto& outs = poset_->out_edges(top.node);
    if (top.next_edge >= outs.size()) {
      stack_.pop_back();
      if (!stack_.empty()) labels_.pop_back();
      continue;
    }
    const BruhatEdge& e = poset_->edges()[outs[top.next_edge++]];
    labels_.push_back(e.flip);
    if (poset_->out_edges(e.upper).empty()) {
      std::vector<KSet> chain = labels_;
      labels_.pop_back();
      return emit(std::move(chain));
    }
    stack_.push_back({e.upper, 0});
  }
}

std::size_t count_maximal_chains(const BruhatPoset& poset) {
  const auto& nodes = poset.nodes();
  std::vector<std::size_t> paths(nodes.size(), 0);
  std::size_t total = 0;
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    if (poset.in_edges(v).empty()) paths[v] = 1;
    for (std::size_t e : poset.in_edges(v)) paths[v] += paths[poset.edges()[e].lower];
    if (poset.out_edges(v).empty()) total += paths[v];
  }
  return total;
}

Report check_poset_structure(const BruhatPoset& poset) {
  Report report("poset structure");
  const auto sources = poset.sources();
  const auto sinks = poset.sinks();
  report.add("unique source", sources.size() == 1,
             std::to_string(sources.size()) + " source(s)");
  report.add("unique sink", sinks.size() == 1, std::to_string(sinks.size()) + " sink(s)");

  const Partition& part = poset.domain().partition();
  std::optional<std::string> bad_edge;
  for (const auto& e : poset.edges()) {
    const auto& lo = poset.nodes()[e.lower];
    const auto& hi = poset.nodes()[e.upper];
    KSetFamily expect = lo.inv.members();
    const bool fresh = !expect.contains(e.flip);
    expect.insert(e.flip);
    if (!fresh || !(expect == hi.inv.members()) || hi.rank != lo.rank + 1 ||
        !part.full.contains(e.flip)) {
      bad_edge = lo.inv.to_string() + " -" + e.flip.to_string() + "-> " + hi.inv.to_string();
      break;
    }
  }
  report.add("edges add one full-packet generator and climb one rank", !bad_edge, {}, bad_edge);

  std::optional<std::string> bad_rep;
  for (const auto& node : poset.nodes()) {
    if (node.rank != node.inv.size()) {
      bad_rep = node.inv.to_string();
      break;
    }
    const auto check = is_admissible_on(node.representative, poset.domain());
    if (!check || !(inversion_set(node.representative) == node.inv)) {
      bad_rep = node.representative.to_string();
      break;
    }
  }
  report.add("representatives are admissible with the node's inversion set", !bad_rep, {},
             bad_rep);
  return report;
}

Report verify_ziegler_iso(int n, int k, std::size_t max_universe) {
  Report report("ziegler isomorphism B(" + std::to_string(n) + "," + std::to_string(k) + ")");
  const BruhatPoset poset = build_bnk(n, k);
  const std::vector<KSetFamily> realizable = all_realizable_sets(n, k + 1, max_universe);

  std::vector<KSetFamily> node_keys;
  for (const auto& node : poset.nodes()) node_keys.push_back(node.inv.members());
  std::sort(node_keys.begin(), node_keys.end());
  std::optional<std::string> witness;
  if (node_keys != realizable) {
    std::vector<KSetFamily> diff;
    std::set_symmetric_difference(node_keys.begin(), node_keys.end(), realizable.begin(),
                                  realizable.end(), std::back_inserter(diff));
    if (!diff.empty()) witness = diff.front().to_string();
  }
  report.add("node inversion sets equal the realizable (k+1)-sets", node_keys == realizable,
             std::to_string(node_keys.size()) + " nodes, " + std::to_string(realizable.size()) +
                 " realizable sets",
             witness);

  // Single-step covers: U and U ∪ {X} both realizable.
  std::set<std::pair<KSetFamily, KSet>> covers;
  const std::set<KSetFamily> realizable_set(realizable.begin(), realizable.end());
  const auto generators = KSetUniverse::get(n, k + 1);
  for (const auto& u : realizable) {
    for (std::size_t g = 0; g < generators->size(); ++g) {
      if (u.contains_rank(g)) continue;
      KSetFamily up = u;
      up.insert_rank(g);
      if (realizable_set.count(up)) covers.insert({u, generators->at(g)});
    }
  }
  std::set<std::pair<KSetFamily, KSet>> edges;
  for (const auto& e : poset.edges()) edges.insert({poset.nodes()[e.lower].inv.members(), e.flip});
  std::optional<std::string> edge_witness;
  if (edges != covers) {
    for (const auto& c : covers) {
      if (!edges.count(c)) {
        edge_witness = "missing edge " + c.first.to_string() + " +" + c.second.to_string();
        break;
      }
    }
    if (!edge_witness) edge_witness = "extra edge";
  }
  report.add("edges equal single-step inclusion covers", edges == covers,
             std::to_string(edges.size()) + " edges, " + std::to_string(covers.size()) + " covers",
             edge_witness);
  return report;
}

KOrder extend_to_max_chain(const KOrder& gamma) {
  const int n = gamma.n();
  const int k = gamma.k();
  const KSetFamily inv = inversion_set(gamma).members();
  const KSetFamily rest = gamma.domain().complement();
  const auto table = PacketTable::get(n, k);
  const std::size_t m = table->ksets().size();

  std::vector<std::vector<std::uint32_t>> succ(m);
  std::vector<std::uint32_t> indegree(m, 0);
  std::vector<std::uint32_t> present;
  for (std::size_t g = 0; g < table->generator_count(); ++g) {
    present.clear();
    for (std::uint32_t r : table->members(g)) {
      if (rest.contains_rank(r)) present.push_back(r);
    }
    if (present.size() < 2) continue;
    if (inv.contains_rank(g)) std::reverse(present.begin(), present.end());
    for (std::size_t i = 0; i + 1 < present.size(); ++i) {
      succ[present[i]].push_back(present[i + 1]);
      ++indegree[present[i + 1]];
    }
  }
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> ready;
  rest.for_each_rank([&](std::size_t r) {
    if (indegree[r] == 0) ready.push(static_cast<std::uint32_t>(r));
  });
  std::vector<KSet> seq = gamma.sequence();
  while (!ready.empty()) {
    const std::uint32_t r = ready.top();
    ready.pop();
    seq.push_back(table->ksets().at(r));
    for (std::uint32_t s : succ[r]) {
      if (--indegree[s] == 0) ready.push(s);
    }
  }
  if (seq.size() != m) {
    fail(ErrorKind::extension_failure, "packet constraints on the complement of " +
                                           gamma.domain().to_string() + " are cyclic");
  }
  KOrder full(n, k, std::move(seq));
  if (!is_admissible(full) || !(inversion_set(full).members() == inv)) {
    fail(ErrorKind::extension_failure, "extension " + full.to_string() +
                                           " does not preserve the inversion set");
  }
  return full;
}

std::string to_dot(const BruhatPoset& poset) {
  std::ostringstream out;
  out << "digraph bruhat {\n";
  out << "  rankdir=BT;\n";
  out << "  node [shape=box];\n";
  std::map<std::size_t, std::vector<std::size_t>> by_rank;
  for (std::size_t i = 0; i < poset.nodes().size(); ++i) by_rank[poset.nodes()[i].rank].push_back(i);
  for (const auto& [rank, ids] : by_rank) {
    out << "  subgraph rank_" << rank << " {\n    rank=same;\n";
    for (std::size_t id : ids) {
      out << "    n" << id << " [label=\"" << poset.nodes()[id].inv.to_string() << "\"];\n";
    }
    out << "  }\n";
  }
  for (const auto& e : poset.edges()) {
    out << "  n" << e.lower << " -> n" << e.upper << " [label=\"" << e.flip.to_string()
        << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string to_json(const BruhatPoset& poset, int indent) {
  nlohmann::ordered_json doc;
  doc["schema"] = kSchema;
  doc["kind"] = to_string(poset.kind());
  doc["n"] = poset.n();
  doc["k"] = poset.k();
  auto& nodes = doc["nodes"] = nlohmann::ordered_json::array();
  for (const auto& node : poset.nodes()) {
    auto inv = nlohmann::ordered_json::array();
    for (const KSet& x : node.inv.members().members()) inv.push_back(x.elements());
    nodes.push_back({{"inv", std::move(inv)}, {"rank", node.rank}});
  }
  auto& edges = doc["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : poset.edges()) {
    edges.push_back({{"from", e.lower}, {"to", e.upper}, {"flip", e.flip.elements()}});
  }
  return doc.dump(indent);
}

}  // namespace bruhat
