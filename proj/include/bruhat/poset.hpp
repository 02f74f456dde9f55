#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bruhat/exec.hpp"
#include "bruhat/order.hpp"
#include "bruhat/realizability.hpp"
#include "bruhat/report.hpp"

namespace bruhat {

enum class PosetKind { full, paths_to_set, restricted };

const char* to_string(PosetKind kind) noexcept;

struct BruhatNode {
  InversionSet inv;
  KOrder representative;
  std::size_t rank = 0;
};

struct BruhatEdge {
  std::size_t lower = 0;
  std::size_t upper = 0;
  KSet flip;
};

/// Ranked DAG of equivalence classes keyed by inversion set. Nodes are sorted
/// by (rank, inversion set); edges by (lower, flip).
class BruhatPoset {
 public:
  BruhatPoset(PosetKind kind, RealizableSet domain, std::vector<BruhatNode> nodes,
              std::vector<BruhatEdge> edges);

  PosetKind kind() const noexcept { return kind_; }
  int n() const noexcept { return domain_.n(); }
  int k() const noexcept { return domain_.k(); }
  const RealizableSet& domain() const noexcept { return domain_; }
  const std::vector<BruhatNode>& nodes() const noexcept { return nodes_; }
  const std::vector<BruhatEdge>& edges() const noexcept { return edges_; }

  std::optional<std::size_t> find(const KSetFamily& inv) const;
  const std::vector<std::size_t>& out_edges(std::size_t node) const { return out_[node]; }
  const std::vector<std::size_t>& in_edges(std::size_t node) const { return in_[node]; }
  std::vector<std::size_t> sources() const;
  std::vector<std::size_t> sinks() const;
  std::size_t max_rank() const noexcept;

  /// Subposet on the nodes satisfying keep, with the edges among them.
  BruhatPoset restrict(const std::function<bool(const BruhatNode&)>& keep) const;

 private:
  PosetKind kind_;
  RealizableSet domain_;
  std::vector<BruhatNode> nodes_;
  std::vector<BruhatEdge> edges_;
  std::unordered_map<KSetFamily, std::size_t, KSetFamilyHash> index_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

/// BRUHAT_MAX_NODES, else 10^6.
std::size_t default_max_nodes();

struct BuildOptions {
  std::size_t max_nodes = default_max_nodes();
  Exec exec = Exec::serial;
};

BruhatPoset build_bnk(int n, int k, const BuildOptions& options = {});

/// Second Bruhat order of J: classes of admissible J-orders.
BruhatPoset build_paths_to(const RealizableSet& j, const BuildOptions& options = {});

/// Lazy source-to-sink path enumeration; each chain is its list of flip labels.
class ChainEnumerator {
 public:
  explicit ChainEnumerator(const BruhatPoset& poset, std::size_t cap = 1'000'000);

  std::optional<std::vector<KSet>> next();
  std::size_t emitted() const noexcept { return emitted_; }

 private:
  struct Frame {
    std::size_t node;
    std::size_t next_edge;
  };

  const BruhatPoset* poset_;
  std::size_t cap_;
  std::size_t emitted_ = 0;
  std::vector<std::size_t> roots_;
  std::vector<Frame> stack_;
  std::vector<KSet> labels_;
};

/// Number of source-to-sink paths, by dynamic programming.
std::size_t count_maximal_chains(const BruhatPoset& poset);

/// Structural checks: unique source and sink, gradedness, edge labels.
Report check_poset_structure(const BruhatPoset& poset);

Report verify_ziegler_iso(int n, int k, std::size_t max_universe = 20);

/// A full admissible order with gamma as a prefix and the same inversion set.
KOrder extend_to_max_chain(const KOrder& gamma);

std::string to_dot(const BruhatPoset& poset);
std::string to_json(const BruhatPoset& poset, int indent = 2);

}  // namespace bruhat
