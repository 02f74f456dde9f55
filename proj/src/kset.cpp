#include "bruhat/kset.hpp"

#include <algorithm>
#include <cctype>

#include "bruhat/error.hpp"

namespace bruhat {

namespace {

void check_ground(int n) {
  if (n < 1 || n > kMaxGroundSet) {
    fail(ErrorKind::invalid_arguments,
         "ground set size must be in [1, 64], got " + std::to_string(n));
  }
}

std::uint64_t build_mask(int n, std::span<const int> elements) {
  check_ground(n);
  std::uint64_t mask = 0;
  for (int x : elements) {
    if (x < 1 || x > n) {
      fail(ErrorKind::invalid_arguments,
           "element " + std::to_string(x) + " outside [1, " + std::to_string(n) + "]");
    }
    const std::uint64_t bit = std::uint64_t{1} << (x - 1);
    if (mask & bit) {
      fail(ErrorKind::invalid_arguments, "duplicate element " + std::to_string(x));
    }
    mask |= bit;
  }
  return mask;
}

}  // namespace

KSet::KSet(int n, std::initializer_list<int> elements)
    : mask_(build_mask(n, std::span<const int>(elements.begin(), elements.size()))), n_(n) {}

KSet::KSet(int n, std::span<const int> elements) : mask_(build_mask(n, elements)), n_(n) {}

KSet KSet::from_mask(int n, std::uint64_t mask) {
  check_ground(n);
  if (n < 64 && (mask >> n) != 0) {
    fail(ErrorKind::invalid_arguments, "mask has bits outside the ground set");
  }
  KSet s;
  s.mask_ = mask;
  s.n_ = n;
  return s;
}

std::vector<int> KSet::elements() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::uint64_t m = mask_; m != 0; m &= m - 1) {
    out.push_back(std::countr_zero(m) + 1);
  }
  return out;
}

int KSet::min() const {
  if (mask_ == 0) fail(ErrorKind::invalid_arguments, "min of empty set");
  return std::countr_zero(mask_) + 1;
}

int KSet::max() const {
  if (mask_ == 0) fail(ErrorKind::invalid_arguments, "max of empty set");
  return 64 - std::countl_zero(mask_);
}

int KSet::element(int i) const {
  if (i < 1 || i > size()) {
    fail(ErrorKind::invalid_arguments, "element index " + std::to_string(i) + " out of range");
  }
  std::uint64_t m = mask_;
  for (int j = 1; j < i; ++j) m &= m - 1;
  return std::countr_zero(m) + 1;
}

KSet KSet::hat(int i) const { return without(element(i)); }

KSet KSet::without(int x) const {
  if (!contains(x)) fail(ErrorKind::invalid_arguments, std::to_string(x) + " not in set");
  return from_mask(n_, mask_ & ~(std::uint64_t{1} << (x - 1)));
}

KSet KSet::with(int x) const {
  if (x < 1 || x > n_ || contains(x)) {
    fail(ErrorKind::invalid_arguments, "cannot add " + std::to_string(x));
  }
  return from_mask(n_, mask_ | (std::uint64_t{1} << (x - 1)));
}

std::string KSet::to_string() const {
  std::string out;
  const bool compact = n_ <= 9;
  for (int x : elements()) {
    if (!compact && !out.empty()) out += ',';
    out += std::to_string(x);
  }
  return out;
}

std::strong_ordering lex_compare(std::uint64_t a, std::uint64_t b) noexcept {
  const std::uint64_t diff = a ^ b;
  if (diff == 0) return std::strong_ordering::equal;
  const int low = std::countr_zero(diff);
  const bool in_a = (a >> low) & 1U;
  const std::uint64_t other = in_a ? b : a;
  // The set holding the first differing element is smaller unless the other
  // sequence has already ended, in which case it is a proper prefix.
  const bool other_ended = low == 63 ? true : (other >> low) == 0;
  const bool a_smaller = in_a ? !other_ended : other_ended;
  return a_smaller ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::strong_ordering operator<=>(const KSet& a, const KSet& b) noexcept {
  if (a.n_ != b.n_) return a.n_ <=> b.n_;
  return lex_compare(a.mask_, b.mask_);
}

int Packet::position(const KSet& y) const noexcept {
  if (!contains(y)) return -1;
  // Members are x̂_{k+1}, ..., x̂_1: deleting a larger element comes first.
  const std::uint64_t removed = generator.mask() & ~y.mask();
  const int rank_in_generator =
      std::popcount(generator.mask() & (removed - 1));  // 0-based index of removed
  return generator.size() - 1 - rank_in_generator;
}

std::vector<KSet> enumerate_ksets(int n, int k) {
  check_ground(n);
  if (k <= 0 || k > n) {
    fail(ErrorKind::invalid_arguments,
         "need 0 < k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
  std::vector<KSet> out;
  std::vector<int> comb(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) comb[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    out.emplace_back(n, std::span<const int>(comb));
    int i = k - 1;
    while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - k + i + 1) --i;
    if (i < 0) break;
    ++comb[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

Packet packet(const KSet& generator) {
  const int m = generator.size();
  if (m < 2) fail(ErrorKind::invalid_arguments, "packet generator needs at least 2 elements");
  Packet p{generator, {}};
  p.members.reserve(static_cast<std::size_t>(m));
  for (int i = m; i >= 1; --i) p.members.push_back(generator.hat(i));
  return p;
}

void require_same_ground(const KSet& a, const KSet& b) {
  if (a.n() != b.n()) {
    fail(ErrorKind::invalid_arguments, "mixed ground sets " + std::to_string(a.n()) + " and " +
                                           std::to_string(b.n()));
  }
}

std::optional<KSet> shared_packet(const KSet& a, const KSet& b) {
  require_same_ground(a, b);
  if (a.size() != b.size()) fail(ErrorKind::invalid_arguments, "k-sets of different sizes");
  if (a == b) fail(ErrorKind::invalid_arguments, "shared_packet needs distinct sets");
  if (!shares_packet(a, b)) return std::nullopt;
  return KSet::from_mask(a.n(), a.mask() | b.mask());
}

KSet parse_kset(std::string_view text, int n) {
  std::string body;
  for (char c : text) {
    if (c == '{' || c == '}' || c == '[' || c == ']') continue;
    body += c;
  }
  std::vector<int> values;
  const bool separated = body.find_first_of(", ") != std::string::npos;
  if (separated) {
    std::string token;
    auto flush = [&] {
      if (token.empty()) return;
      values.push_back(std::stoi(token));
      token.clear();
    };
    for (char c : body) {
      if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
        flush();
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        token += c;
      } else {
        fail(ErrorKind::parse_error, "unexpected character '" + std::string(1, c) +
                                         "' in k-set \"" + std::string(text) + "\"");
      }
    }
    flush();
  } else {
    for (char c : body) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        fail(ErrorKind::parse_error, "unexpected character '" + std::string(1, c) +
                                         "' in k-set \"" + std::string(text) + "\"");
      }
      values.push_back(c - '0');
    }
  }
  if (values.empty()) fail(ErrorKind::parse_error, "empty k-set \"" + std::string(text) + "\"");
  std::sort(values.begin(), values.end());
  try {
    return KSet(n, std::span<const int>(values));
  } catch (const Error& e) {
    fail(ErrorKind::parse_error, "k-set \"" + std::string(text) + "\": " + e.what());
  }
}

}  // namespace bruhat
