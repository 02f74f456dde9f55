#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "bruhat/kset.hpp"

namespace bruhat {

std::uint64_t binomial(int n, int k) noexcept;

/// Largest C(n,k) for which a universe is materialized.
inline constexpr std::uint64_t kMaxUniverse = std::uint64_t{1} << 26;

/// All of C(n,k) in lexicographic order, with O(k) ranking.
class KSetUniverse {
 public:
  static std::shared_ptr<const KSetUniverse> get(int n, int k);

  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  std::size_t size() const noexcept { return sets_.size(); }
  const KSet& at(std::size_t rank) const { return sets_[rank]; }
  const std::vector<KSet>& sets() const noexcept { return sets_; }
  std::size_t rank(const KSet& s) const;

  KSetUniverse(int n, int k);

 private:
  int n_;
  int k_;
  std::vector<KSet> sets_;
};

/// A set of k-sets from C(n,k), stored as a bitset indexed by lex rank.
/// Iteration and comparison follow the lexicographic order of members.
class KSetFamily {
 public:
  KSetFamily() = default;
  KSetFamily(int n, int k);

  static KSetFamily full(int n, int k);
  static KSetFamily of(int n, int k, std::span<const KSet> members);

  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  std::size_t universe_size() const noexcept { return universe_ ? universe_->size() : 0; }
  const KSetUniverse& universe() const { return *universe_; }

  bool contains(const KSet& s) const;
  bool contains_rank(std::size_t r) const noexcept { return (words_[r >> 6] >> (r & 63)) & 1U; }
  void insert(const KSet& s);
  void erase(const KSet& s);
  void insert_rank(std::size_t r) noexcept { words_[r >> 6] |= std::uint64_t{1} << (r & 63); }
  void erase_rank(std::size_t r) noexcept { words_[r >> 6] &= ~(std::uint64_t{1} << (r & 63)); }

  std::size_t size() const noexcept;
  bool empty() const noexcept;
  std::vector<KSet> members() const;
  std::vector<std::size_t> ranks() const;

  template <class F>
  void for_each_rank(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      for (std::uint64_t m = words_[w]; m != 0; m &= m - 1) {
        f(w * 64 + static_cast<std::size_t>(std::countr_zero(m)));
      }
    }
  }

  KSetFamily complement() const;
  KSetFamily& operator|=(const KSetFamily& o);
  KSetFamily& operator&=(const KSetFamily& o);
  KSetFamily& operator-=(const KSetFamily& o);
  friend KSetFamily operator|(KSetFamily a, const KSetFamily& b) { return a |= b; }
  friend KSetFamily operator&(KSetFamily a, const KSetFamily& b) { return a &= b; }
  friend KSetFamily operator-(KSetFamily a, const KSetFamily& b) { return a -= b; }

  bool is_subset_of(const KSetFamily& o) const;
  bool intersects(const KSetFamily& o) const;

  /// "{123,124}" using the compact k-set text form.
  std::string to_string() const;

  friend bool operator==(const KSetFamily& a, const KSetFamily& b) noexcept {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.words_ == b.words_;
  }
  /// Lexicographic order on sorted member lists.
  friend std::strong_ordering operator<=>(const KSetFamily& a, const KSetFamily& b) noexcept;

  std::size_t hash() const noexcept;
  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

 private:
  void require_compatible(const KSetFamily& o) const;

  int n_ = 0;
  int k_ = 0;
  std::shared_ptr<const KSetUniverse> universe_;
  std::vector<std::uint64_t> words_;
};

struct KSetFamilyHash {
  std::size_t operator()(const KSetFamily& f) const noexcept { return f.hash(); }
};

}  // namespace bruhat
