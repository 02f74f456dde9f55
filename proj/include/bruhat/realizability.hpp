#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bruhat/exec.hpp"
#include "bruhat/family.hpp"
#include "bruhat/packets.hpp"

namespace bruhat {

/// How a set of k-sets meets one (k+1)-packet.
enum class PacketClass : std::uint8_t { suffix, prefix, full, empty, invalid };

/// 's', 'p', 'F', '0' or 'x'.
char label(PacketClass c) noexcept;

/// Bit i set iff the member at lexicographic position i lies in S.
std::uint64_t packet_pattern(const KSetFamily& s, const PacketTable& table, std::size_t g);
PacketClass classify_pattern(std::uint64_t pattern, int packet_size) noexcept;

/// J_s, J_p, J_F, J_∅ as families of (k+1)-sets, plus generators whose packet
/// meets S in neither a prefix nor a suffix.
struct Partition {
  KSetFamily suffix;
  KSetFamily prefix;
  KSetFamily full;
  KSetFamily empty;
  std::vector<KSet> invalid;

  PacketClass class_of(const KSet& x) const;
  PacketClass class_of_rank(std::size_t g) const;
};

Partition classify(const KSetFamily& s, Exec exec = Exec::serial);

struct RealizabilityCheck {
  bool realizable = true;
  std::optional<KSet> generator;
  /// Membership pattern over the violating packet in lex order, e.g. "010".
  std::string pattern;

  explicit operator bool() const noexcept { return realizable; }
};

RealizabilityCheck check_realizable(const KSetFamily& s);

/// Triple test: inside every (k+1)-set, U meets {ĵ3 < ĵ2 < ĵ1} in neither
/// {ĵ3, ĵ1} nor {ĵ2}.
bool check_convex(const KSetFamily& s);

/// True when s ∪ {r} stays realizable, given that s is realizable.
bool stays_realizable_with(const KSetFamily& s, std::size_t r, const PacketTable& table);

class RealizableSet {
 public:
  explicit RealizableSet(KSetFamily members);

  static std::optional<RealizableSet> try_make(KSetFamily members);
  static RealizableSet full(int n, int k);
  static RealizableSet empty(int n, int k);

  int n() const noexcept { return members_.n(); }
  int k() const noexcept { return members_.k(); }
  const KSetFamily& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }

  /// Computed once on first use; safe under concurrent first access.
  const Partition& partition() const;

  RealizableSet complement() const;

  friend bool operator==(const RealizableSet& a, const RealizableSet& b) noexcept {
    return a.members_ == b.members_;
  }

 private:
  struct Memo {
    std::once_flag once;
    std::optional<Partition> value;
  };

  KSetFamily members_;
  std::shared_ptr<Memo> memo_;
};

const Partition& partition(const RealizableSet& j);

struct SegmentRun {
  std::string label;
  std::vector<KSet> members;
};

/// The lexicographic run decomposition of a (k+2)-packet by class labels.
struct Segmentation {
  KSet generator;
  std::vector<SegmentRun> runs;

  /// Run labels joined, e.g. "sFp" or "s0".
  std::string shape() const;
};

Segmentation segmentation_by(const Partition& part, const KSet& x);

/// Segmentation of P_X for a realizable J; raises shape-violation if the
/// shape is not one of the four allowed arrangements.
Segmentation segmentation(const RealizableSet& j, const KSet& x);

/// Shapes that are sub-arrangements of sFp, pFs, s0p or p0s.
bool is_allowed_shape(std::string_view shape) noexcept;

/// The forbidden two-run shapes "Fs", "pF", "s0", "0p".
bool is_forbidden_shape(std::string_view shape) noexcept;

struct ForbiddenHit {
  KSet generator;
  std::string shape;
};

/// Scans every (k+2)-packet of S's partition for the forbidden shapes. S need
/// not be realizable; invalid generators are labelled 'x'.
std::vector<ForbiddenHit> forbidden_segmentations(const KSetFamily& s);

/// True iff U1 ⊆ U2 and a chain of realizable sets adds the elements of
/// U2 \ U1 one at a time.
bool single_step_leq(const RealizableSet& u1, const RealizableSet& u2);

/// Every realizable subset of C(n,k), by subset filtering. Guarded by a cap on
/// |C(n,k)|.
std::vector<KSetFamily> all_realizable_sets(int n, int k, std::size_t max_universe = 24);

}  // namespace bruhat
