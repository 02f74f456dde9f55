#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bruhat/poset.hpp"
#include "bruhat/realizability.hpp"
#include "bruhat/report.hpp"

namespace bruhat {

/// (L^i, M^i) at one level of the ladder; both are i-sets.
struct LadderLevel {
  int i = 0;
  KSetFamily lower;
  KSetFamily upper;
};

/// One ladder step: L' = M_s, M' = M_s ∪ (M \ L)_F.
LadderLevel next_level(const LadderLevel& level);

/// L^i and M^i for i = 2..cap of a realizable 2-set J.
struct LMLadder {
  RealizableSet j;
  std::vector<LadderLevel> levels;
  /// True when the last computed level has M^i = ∅, so every later level is
  /// empty too.
  bool stabilized = false;

  const LadderLevel& level(int i) const;
  int max_level() const noexcept { return levels.empty() ? 1 : levels.back().i; }
};

/// Levels up to min(cap, n); cap <= 0 means n. Raises invalid-arguments
/// unless J is a 2-set and internal-consistency if a level is not realizable.
LMLadder lm_ladder(const RealizableSet& j, int cap = 0);

/// B_i(J): classes of admissible M^i-orders whose inversion set U satisfies
/// L^i_s ⊆ U and L^i_p ∩ U = ∅.
BruhatPoset build_bi(const LMLadder& ladder, int i, const BuildOptions& options = {});
BruhatPoset build_bi(const RealizableSet& j, int i, const BuildOptions& options = {});

/// Realizable sets K with lower ⊆ K ⊆ upper by subset filtering; raises
/// cap-exceeded when |upper \ lower| > max_free.
std::vector<KSetFamily> realizable_between(const KSetFamily& lower, const KSetFamily& upper,
                                           std::size_t max_free = 16);

/// Run labels of P_X under a pair of partitions, each run written as the two
/// class labels, runs joined by '|', e.g. "pF|0F|0p".
std::string pair_shape(const Partition& a, const Partition& b, const KSet& x);

inline constexpr const char* kShapeLpMF = "pF|0F|0p";
inline constexpr const char* kShapeK0MF = "0s|0F|sF";

/// Generators X of size k+2 whose packet has exactly the given pair shape.
std::vector<KSet> find_pair_shape(const Partition& a, const Partition& b, std::string_view shape);

/// Checks the ladder statements at levels 2..i_max: levels realizable, B_i(J)
/// graded with unique min Inv = L^{i+1} and max Inv = M^{i+1}, maximal chains
/// lifting to admissible M^{i+1}-orders with L^{i+1} first, and the lifts
/// covering B_{i+1}(J).
Report verify_ladder_theorem(const RealizableSet& j, int i_max, const BuildOptions& options = {},
                          std::size_t chain_cap = 100'000);

/// The n = 9 configuration where K_s ∪ M^7_s fails to be realizable.
Report check_counterexample_n9();

/// Scans level i for the LpMF shape on L^i, M^i and, for every realizable K
/// between them, the K0MF shape on K, M^i. Also checks K_s ∪ M^i_s is
/// realizable for each K.
Report forbidden_ladder_segmentations(const LMLadder& ladder, int i, std::size_t max_free = 16);

}  // namespace bruhat
