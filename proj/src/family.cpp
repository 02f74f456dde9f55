#include "bruhat/family.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <utility>

#include "bruhat/error.hpp"

namespace bruhat {

namespace {

struct BinomialTable {
  std::uint64_t value[65][65] = {};
  BinomialTable() {
    for (int n = 0; n <= 64; ++n) {
      value[n][0] = 1;
      for (int k = 1; k <= n; ++k) value[n][k] = value[n - 1][k - 1] + value[n - 1][k];
    }
  }
};

const BinomialTable& binomials() {
  static const BinomialTable table;
  return table;
}

}  // namespace

std::uint64_t binomial(int n, int k) noexcept {
  if (n < 0 || k < 0 || k > n || n > 64) return 0;
  return binomials().value[n][k];
}

KSetUniverse::KSetUniverse(int n, int k) : n_(n), k_(k) {
  if (n < 1 || n > kMaxGroundSet || k < 1) {
    fail(ErrorKind::invalid_arguments,
         "bad universe C(" + std::to_string(n) + "," + std::to_string(k) + ")");
  }
  if (k > n) return;
  if (binomial(n, k) > kMaxUniverse) {
    fail(ErrorKind::budget_exceeded, "C(" + std::to_string(n) + "," + std::to_string(k) +
                                         ") is too large to materialize");
  }
  sets_ = enumerate_ksets(n, k);
}

std::shared_ptr<const KSetUniverse> KSetUniverse::get(int n, int k) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const KSetUniverse>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{n, k}];
  if (!slot) slot = std::make_shared<const KSetUniverse>(n, k);
  return slot;
}

std::size_t KSetUniverse::rank(const KSet& s) const {
  if (s.n() != n_ || s.size() != k_) {
    fail(ErrorKind::invalid_arguments, "k-set " + s.to_string() + " not in C(" +
                                           std::to_string(n_) + "," + std::to_string(k_) + ")");
  }
  const auto& table = binomials();
  std::uint64_t r = 0;
  int prev = 0;
  int i = 1;
  for (std::uint64_t m = s.mask(); m != 0; m &= m - 1, ++i) {
    const int c = std::countr_zero(m) + 1;
    for (int j = prev + 1; j < c; ++j) r += table.value[n_ - j][k_ - i];
    prev = c;
  }
  return static_cast<std::size_t>(r);
}

KSetFamily::KSetFamily(int n, int k)
    : n_(n), k_(k), universe_(KSetUniverse::get(n, k)),
      words_((universe_->size() + 63) / 64, 0) {}

KSetFamily KSetFamily::full(int n, int k) {
  KSetFamily f(n, k);
  const std::size_t sz = f.universe_size();
  for (std::size_t w = 0; w < f.words_.size(); ++w) {
    const std::size_t bits = std::min<std::size_t>(64, sz - w * 64);
    f.words_[w] = bits == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1);
  }
  return f;
}

KSetFamily KSetFamily::of(int n, int k, std::span<const KSet> members) {
  KSetFamily f(n, k);
  for (const auto& s : members) f.insert(s);
  return f;
}

bool KSetFamily::contains(const KSet& s) const {
  if (!universe_ || s.n() != n_ || s.size() != k_ || k_ > n_) return false;
  return contains_rank(universe_->rank(s));
}

void KSetFamily::insert(const KSet& s) { insert_rank(universe_->rank(s)); }

void KSetFamily::erase(const KSet& s) { erase_rank(universe_->rank(s)); }

std::size_t KSetFamily::size() const noexcept {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool KSetFamily::empty() const noexcept {
  for (auto w : words_) {
    if (w) return false;
  }
  return true;
}

std::vector<KSet> KSetFamily::members() const {
  std::vector<KSet> out;
  for_each_rank([&](std::size_t r) { out.push_back(universe_->at(r)); });
  return out;
}

std::vector<std::size_t> KSetFamily::ranks() const {
  std::vector<std::size_t> out;
  for_each_rank([&](std::size_t r) { out.push_back(r); });
  return out;
}

void KSetFamily::require_compatible(const KSetFamily& o) const {
  if (n_ != o.n_ || k_ != o.k_) {
    fail(ErrorKind::invalid_arguments, "families over different ambients");
  }
}

KSetFamily KSetFamily::complement() const {
  KSetFamily out = full(n_, k_);
  return out -= *this;
}

KSetFamily& KSetFamily::operator|=(const KSetFamily& o) {
  require_compatible(o);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  return *this;
}

KSetFamily& KSetFamily::operator&=(const KSetFamily& o) {
  require_compatible(o);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  return *this;
}

KSetFamily& KSetFamily::operator-=(const KSetFamily& o) {
  require_compatible(o);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
  return *this;
}

bool KSetFamily::is_subset_of(const KSetFamily& o) const {
  require_compatible(o);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~o.words_[i]) return false;
  }
  return true;
}

bool KSetFamily::intersects(const KSetFamily& o) const {
  require_compatible(o);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & o.words_[i]) return true;
  }
  return false;
}

std::string KSetFamily::to_string() const {
  std::string out = "{";
  bool first = true;
  for_each_rank([&](std::size_t r) {
    if (!first) out += n_ <= 9 ? "," : ";";
    out += universe_->at(r).to_string();
    first = false;
  });
  return out + "}";
}

std::strong_ordering operator<=>(const KSetFamily& a, const KSetFamily& b) noexcept {
  if (a.n_ != b.n_) return a.n_ <=> b.n_;
  if (a.k_ != b.k_) return a.k_ <=> b.k_;
  // Sorted rank lists compare like the bit patterns read from rank 0 up: the
  // first differing rank decides unless the other list has already ended.
  const std::size_t words = a.words_.size();
  for (std::size_t i = 0; i < words; ++i) {
    const std::uint64_t diff = a.words_[i] ^ b.words_[i];
    if (diff == 0) continue;
    const int low = std::countr_zero(diff);
    const bool in_a = (a.words_[i] >> low) & 1U;
    const auto& other = in_a ? b.words_ : a.words_;
    bool other_ended = (other[i] >> low) == 0;
    for (std::size_t j = i + 1; other_ended && j < words; ++j) other_ended = other[j] == 0;
    const bool a_smaller = in_a ? !other_ended : other_ended;
    return a_smaller ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::size_t KSetFamily::hash() const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ static_cast<std::uint64_t>(n_ * 131 + k_);
  for (auto w : words_) {
    h ^= w + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

}  // namespace bruhat
