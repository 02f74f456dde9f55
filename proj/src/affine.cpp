#include "bruhat/affine.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>

#include "bruhat/error.hpp"

namespace bruhat {

namespace {

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long long mod(long long a, long long b) { return a - floor_div(a, b) * b; }

void require_period(int period) {
  if (period < 1) fail(ErrorKind::invalid_arguments, "period must be positive");
}

}  // namespace

PeriodicPermutation::PeriodicPermutation(int period, std::vector<long long> base)
    : period_(period), base_(std::move(base)) {
  require_period(period);
  if (base_.size() != static_cast<std::size_t>(period)) {
    fail(ErrorKind::invalid_arguments, "periodic permutation needs " + std::to_string(period) +
                                           " base images, got " + std::to_string(base_.size()));
  }
  std::vector<bool> seen(static_cast<std::size_t>(period), false);
  for (long long v : base_) {
    const auto r = static_cast<std::size_t>(mod(v, period));
    if (seen[r]) {
      fail(ErrorKind::invalid_arguments,
           "base images repeat a residue mod " + std::to_string(period));
    }
    seen[r] = true;
  }
}

PeriodicPermutation PeriodicPermutation::identity(int period) {
  require_period(period);
  std::vector<long long> base(static_cast<std::size_t>(period));
  std::iota(base.begin(), base.end(), 1LL);
  return PeriodicPermutation(period, std::move(base));
}

PeriodicPermutation PeriodicPermutation::from_word(int period, const std::vector<int>& letters) {
  require_period(period);
  if (period < 2) fail(ErrorKind::invalid_arguments, "affine words need period >= 2");
  // Track w(x) for x = 1..N by applying letters right to left to the values.
  std::vector<long long> base(static_cast<std::size_t>(period));
  std::iota(base.begin(), base.end(), 1LL);
  for (int l : letters) {
    if (l < 0 || l > period) {
      fail(ErrorKind::invalid_arguments,
           "affine generator s" + std::to_string(l) + " outside 0.." + std::to_string(period));
    }
  }
  for (auto& v : base) {
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
      const long long i = *it % period;  // s_i swaps i and i+1 mod N
      const long long r = mod(v, period);
      if (r == i) {
        v += 1;
      } else if (r == mod(i + 1, period)) {
        v -= 1;
      }
    }
  }
  return PeriodicPermutation(period, std::move(base));
}

long long PeriodicPermutation::operator()(long long x) const {
  const long long q = floor_div(x - 1, period_);
  const long long r = x - 1 - q * period_;
  return base_[static_cast<std::size_t>(r)] + q * period_;
}

long long PeriodicPermutation::displacement() const noexcept {
  long long d = 0;
  for (std::size_t i = 0; i < base_.size(); ++i) {
    d = std::max(d, std::llabs(base_[i] - static_cast<long long>(i + 1)));
  }
  return d;
}

std::vector<int> parse_affine_word(std::string_view text, int period) {
  require_period(period);
  std::string body;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c)) && c != ',') body += c;
  }
  std::vector<int> out;
  if (body.empty() || body == "e") return out;
  if (body.front() == 's') {
    std::size_t i = 0;
    while (i < body.size()) {
      if (body[i] != 's') {
        fail(ErrorKind::parse_error, "expected 's' at offset " + std::to_string(i));
      }
      std::size_t j = i + 1;
      int value = 0;
      while (j < body.size() && std::isdigit(static_cast<unsigned char>(body[j]))) {
        value = value * 10 + (body[j] - '0');
        if (value > 1'000'000) fail(ErrorKind::parse_error, "generator index too large");
        ++j;
      }
      if (j == i + 1) fail(ErrorKind::parse_error, "missing index after 's'");
      out.push_back(value);
      i = j;
    }
  } else {
    for (char c : body) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        fail(ErrorKind::parse_error, "unexpected character '" + std::string(1, c) + "' in word");
      }
      out.push_back(c - '0');
    }
  }
  for (int l : out) {
    if (l > period) {
      fail(ErrorKind::invalid_arguments,
           "affine generator s" + std::to_string(l) + " outside 0.." + std::to_string(period));
    }
  }
  return out;
}

AffineKSet::AffineKSet(int period, std::vector<long long> elements) : period_(period) {
  require_period(period);
  if (elements.empty()) fail(ErrorKind::invalid_arguments, "affine k-set must be non-empty");
  std::sort(elements.begin(), elements.end());
  if (std::adjacent_find(elements.begin(), elements.end()) != elements.end()) {
    fail(ErrorKind::invalid_arguments, "affine k-set has a repeated entry");
  }
  const long long shift = floor_div(elements.front(), period) * period;
  for (auto& e : elements) e -= shift;
  rep_ = std::move(elements);
}

bool AffineKSet::degenerate() const noexcept {
  std::set<long long> residues;
  for (long long e : rep_) {
    if (!residues.insert(mod(e, period_)).second) return true;
  }
  return false;
}

std::string AffineKSet::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < rep_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(rep_[i]);
  }
  return out + "]@" + std::to_string(period_);
}

AffineKSet parse_affine_kset(std::string_view text, int period) {
  std::string body(text);
  int n = period;
  const auto at = body.find('@');
  if (at != std::string::npos) {
    try {
      std::size_t used = 0;
      n = std::stoi(body.substr(at + 1), &used);
      if (used != body.size() - at - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      fail(ErrorKind::parse_error, "bad period in \"" + std::string(text) + "\"");
    }
    if (period > 0 && n != period) {
      fail(ErrorKind::invalid_arguments, "period mismatch in \"" + std::string(text) + "\"");
    }
    body.resize(at);
  }
  if (n <= 0) fail(ErrorKind::parse_error, "missing period in \"" + std::string(text) + "\"");
  std::vector<long long> elements;
  std::string number;
  auto flush = [&] {
    if (number.empty()) return;
    try {
      elements.push_back(std::stoll(number));
    } catch (const std::exception&) {
      fail(ErrorKind::parse_error, "bad entry \"" + number + "\"");
    }
    number.clear();
  };
  for (char c : body) {
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
      number += c;
    } else if (c == ',' || c == ' ' || c == '[' || c == ']') {
      flush();
    } else {
      fail(ErrorKind::parse_error, "unexpected '" + std::string(1, c) + "' in \"" +
                                       std::string(text) + "\"");
    }
  }
  flush();
  return AffineKSet(n, std::move(elements));
}

int AffinePacket::position(const AffineKSet& y) const noexcept {
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i] == y) return static_cast<int>(i);
  }
  return -1;
}

AffinePacket affine_packet(const AffineKSet& x) {
  if (x.size() < 2) fail(ErrorKind::invalid_arguments, "packet generator needs 2 or more entries");
  AffinePacket p{x, {}};
  const auto& rep = x.rep();
  for (std::size_t drop = rep.size(); drop-- > 0;) {
    std::vector<long long> rest;
    for (std::size_t i = 0; i < rep.size(); ++i) {
      if (i != drop) rest.push_back(rep[i]);
    }
    p.members.emplace_back(x.period(), std::move(rest));
  }
  return p;
}

namespace {

void require_compatible(const AffineKSet& a, const AffineKSet& b) {
  if (a.period() != b.period() || a.size() != b.size()) {
    fail(ErrorKind::invalid_arguments, "affine sets " + a.to_string() + " and " + b.to_string() +
                                           " differ in period or size");
  }
}

// Generators X with |X| = k+1 containing a and some shift of b.
std::vector<AffineKSet> joint_generators(const AffineKSet& a, const AffineKSet& b) {
  std::set<long long> shifts;
  const long long n = a.period();
  for (long long x : a.rep()) {
    for (long long y : b.rep()) {
      if (mod(x - y, n) == 0) shifts.insert((x - y) / n);
    }
  }
  std::vector<AffineKSet> out;
  for (long long m : shifts) {
    std::set<long long> u(a.rep().begin(), a.rep().end());
    for (long long y : b.rep()) u.insert(y + m * n);
    if (static_cast<int>(u.size()) == a.size() + 1) {
      out.emplace_back(a.period(), std::vector<long long>(u.begin(), u.end()));
    }
  }
  return out;
}

}  // namespace

bool affine_shares_packet(const AffineKSet& a, const AffineKSet& b) {
  require_compatible(a, b);
  if (a == b) return false;
  return !joint_generators(a, b).empty();
}

AffineSet make_affine_set(std::vector<AffineKSet> items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  for (std::size_t i = 1; i < items.size(); ++i) require_compatible(items[0], items[i]);
  return items;
}

AffineSet affine_word_inversions(const PeriodicPermutation& w) {
  // w(y) - w(x) >= (y - x) - 2D, so inversions have y - x <= 2D.
  const long long n = w.period();
  const long long reach = 2 * w.displacement();
  std::vector<AffineKSet> out;
  for (long long x = 1; x <= n; ++x) {
    for (long long y = x + 1; y <= x + reach; ++y) {
      if (w(y) < w(x)) out.emplace_back(w.period(), std::vector<long long>{x, y});
    }
  }
  return make_affine_set(std::move(out));
}

namespace {

bool contains(const AffineSet& s, const AffineKSet& x) {
  return std::binary_search(s.begin(), s.end(), x);
}

std::uint64_t pattern_of(const AffineSet& s, const AffinePacket& p) {
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < p.members.size(); ++i) {
    if (contains(s, p.members[i])) bits |= std::uint64_t{1} << i;
  }
  return bits;
}

std::string pattern_text(std::uint64_t bits, std::size_t size) {
  std::string out;
  for (std::size_t i = 0; i < size; ++i) out += (bits >> i & 1) ? '1' : '0';
  return out;
}

void require_nondegenerate(const AffineSet& s) {
  for (const auto& x : s) {
    if (x.degenerate()) {
      fail(ErrorKind::degenerate_input, x.to_string() + " has two entries congruent mod " +
                                            std::to_string(x.period()));
    }
  }
}

}  // namespace

AffineSet relevant_generators(const AffineSet& s) {
  std::vector<AffineKSet> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i; j < s.size(); ++j) {
      for (auto& g : joint_generators(s[i], s[j])) out.push_back(std::move(g));
    }
    const auto& rep = s[i].rep();
    for (long long z = rep.front() + 1; z < rep.back(); ++z) {
      if (std::binary_search(rep.begin(), rep.end(), z)) continue;
      std::vector<long long> u = rep;
      u.push_back(z);
      out.emplace_back(s[i].period(), std::move(u));
    }
  }
  return make_affine_set(std::move(out));
}

AffineRealizability affine_check_realizable(const AffineSet& s) {
  require_nondegenerate(s);
  for (const auto& x : relevant_generators(s)) {
    const AffinePacket p = affine_packet(x);
    const std::uint64_t bits = pattern_of(s, p);
    if (classify_pattern(bits, static_cast<int>(p.members.size())) == PacketClass::invalid) {
      return {false, x, pattern_text(bits, p.members.size())};
    }
  }
  return {};
}

AffinePartition affine_partition(const AffineSet& j) {
  const auto check = affine_check_realizable(j);
  if (!check) {
    fail(ErrorKind::not_realizable, "packet " + check.generator->to_string() +
                                        " meets the set in pattern " + check.pattern);
  }
  AffinePartition part;
  for (const auto& x : relevant_generators(j)) {
    const AffinePacket p = affine_packet(x);
    const std::uint64_t bits = pattern_of(j, p);
    if (std::popcount(bits) < 2) continue;
    switch (classify_pattern(bits, static_cast<int>(p.members.size()))) {
      case PacketClass::suffix: part.suffix.push_back(x); break;
      case PacketClass::prefix: part.prefix.push_back(x); break;
      case PacketClass::full: part.full.push_back(x); break;
      default: break;
    }
  }
  return part;
}

std::size_t affine_admissible_orders(
    const AffineSet& j, const std::function<void(const std::vector<AffineKSet>&)>& visit,
    std::size_t cap) {
  const AffinePartition part = affine_partition(j);
  // Constraint per relevant packet: member indices into j in packet order and
  // the direction (+1 lex, -1 antilex, 0 undecided).
  struct Constraint {
    std::vector<std::size_t> list;
    int dir = 0;
    int placed = 0;
  };
  std::vector<Constraint> constraints;
  auto add = [&](const AffineSet& gens, int dir) {
    for (const auto& x : gens) {
      Constraint c;
      for (const auto& m : affine_packet(x).members) {
        const auto it = std::lower_bound(j.begin(), j.end(), m);
        if (it != j.end() && *it == m) c.list.push_back(static_cast<std::size_t>(it - j.begin()));
      }
      c.dir = dir;
      constraints.push_back(std::move(c));
    }
  };
  add(part.suffix, -1);
  add(part.prefix, 1);
  add(part.full, 0);
  std::vector<std::vector<std::pair<std::size_t, int>>> incidence(j.size());
  for (std::size_t c = 0; c < constraints.size(); ++c) {
    for (std::size_t i = 0; i < constraints[c].list.size(); ++i) {
      incidence[constraints[c].list[i]].emplace_back(c, static_cast<int>(i));
    }
  }

  std::vector<AffineKSet> current;
  std::vector<char> used(j.size(), 0);
  std::size_t count = 0;
  auto allowed = [&](std::size_t e) {
    for (const auto& [c, idx] : incidence[e]) {
      const Constraint& st = constraints[c];
      const int size = static_cast<int>(st.list.size());
      if (st.dir == 1 && idx != st.placed) return false;
      if (st.dir == -1 && idx != size - 1 - st.placed) return false;
      if (st.dir == 0 && idx != 0 && idx != size - 1) return false;
    }
    return true;
  };
  std::function<void()> dfs = [&] {
    if (current.size() == j.size()) {
      if (++count > cap) {
        throw LimitExceeded(ErrorKind::budget_exceeded,
                            "affine order enumeration exceeds " + std::to_string(cap), cap);
      }
      visit(current);
      return;
    }
    for (std::size_t e = 0; e < j.size(); ++e) {
      if (used[e] || !allowed(e)) continue;
      std::vector<int> saved;
      for (const auto& [c, idx] : incidence[e]) {
        Constraint& st = constraints[c];
        saved.push_back(st.dir);
        if (st.dir == 0) st.dir = idx == 0 ? 1 : -1;
        ++st.placed;
      }
      used[e] = 1;
      current.push_back(j[e]);
      dfs();
      current.pop_back();
      used[e] = 0;
      std::size_t s = 0;
      for (const auto& [c, idx] : incidence[e]) {
        Constraint& st = constraints[c];
        --st.placed;
        st.dir = saved[s++];
      }
    }
  };
  dfs();
  return count;
}

AffineSet affine_order_flips(const std::vector<AffineKSet>& order, const AffinePartition& part) {
  std::map<AffineKSet, std::size_t> pos;
  for (std::size_t i = 0; i < order.size(); ++i) pos.emplace(order[i], i);
  AffineSet out;
  for (const auto& x : part.full) {
    const auto members = affine_packet(x).members;
    if (pos.at(members.front()) > pos.at(members.back())) out.push_back(x);
  }
  return out;
}

AffineClassSummary affine_source_sink(const AffineSet& j, std::size_t cap) {
  const AffinePartition part = affine_partition(j);
  std::vector<std::vector<AffineKSet>> orders;
  affine_admissible_orders(j, [&](const std::vector<AffineKSet>& o) { orders.push_back(o); }, cap);
  std::sort(orders.begin(), orders.end());
  auto index_of = [&](const std::vector<AffineKSet>& o) {
    return static_cast<std::size_t>(std::lower_bound(orders.begin(), orders.end(), o) -
                                    orders.begin());
  };

  // Union-find over elementary swaps.
  std::vector<std::size_t> parent(orders.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < orders.size(); ++i) {
    for (std::size_t p = 0; p + 1 < orders[i].size(); ++p) {
      if (affine_shares_packet(orders[i][p], orders[i][p + 1])) continue;
      auto next = orders[i];
      std::swap(next[p], next[p + 1]);
      parent[root(i)] = root(index_of(next));
    }
  }
  std::map<std::size_t, std::size_t> class_id;
  for (std::size_t i = 0; i < orders.size(); ++i) class_id.emplace(root(i), class_id.size());
  const std::size_t classes = class_id.size();

  std::vector<std::set<AffineSet>> invs(classes);
  std::vector<bool> has_in(classes, false), has_out(classes, false);
  for (std::size_t i = 0; i < orders.size(); ++i) {
    const std::size_t c = class_id.at(root(i));
    invs[c].insert(affine_order_flips(orders[i], part));
    // Flip each full packet that is contiguous in this order.
    std::map<AffineKSet, std::size_t> pos;
    for (std::size_t p = 0; p < orders[i].size(); ++p) pos.emplace(orders[i][p], p);
    for (const auto& x : part.full) {
      const auto members = affine_packet(x).members;
      std::vector<std::size_t> at;
      for (const auto& m : members) at.push_back(pos.at(m));
      const auto [lo, hi] = std::minmax_element(at.begin(), at.end());
      if (*hi - *lo + 1 != at.size()) continue;
      auto next = orders[i];
      std::reverse(next.begin() + static_cast<std::ptrdiff_t>(*lo),
                   next.begin() + static_cast<std::ptrdiff_t>(*hi) + 1);
      const std::size_t d = class_id.at(root(index_of(next)));
      if (at.front() < at.back()) {
        has_out[c] = true;
        has_in[d] = true;
      }
    }
  }

  AffineClassSummary s;
  s.orders = orders.size();
  s.classes = classes;
  std::set<AffineSet> distinct;
  bool single_inv = true;
  std::optional<std::size_t> source, sink;
  for (std::size_t c = 0; c < classes; ++c) {
    single_inv &= invs[c].size() == 1;
    distinct.insert(*invs[c].begin());
    if (!has_in[c]) {
      ++s.sources;
      source = c;
    }
    if (!has_out[c]) {
      ++s.sinks;
      sink = c;
    }
  }
  s.inv_determines_class = single_inv && distinct.size() == classes;
  if (s.sources == 1) s.source_has_js = invs[*source].begin()->empty();
  if (s.sinks == 1) s.sink_has_js_jf = *invs[*sink].begin() == part.full;
  return s;
}

Report affine_source_sink_report(const AffineSet& j, std::size_t cap) {
  Report report("affine source/sink (empirical) for " + to_string(j));
  const AffineClassSummary s = affine_source_sink(j, cap);
  const std::string counts = std::to_string(s.orders) + " orders, " + std::to_string(s.classes) +
                             " classes";
  report.add("empirical: unique source class", s.sources == 1, counts);
  report.add("empirical: unique sink class", s.sinks == 1, counts);
  report.add("empirical: source inversion set is J_s", s.source_has_js);
  report.add("empirical: sink inversion set is J_s plus J_F", s.sink_has_js_jf);
  report.add("empirical: inversion set determines the class", s.inv_determines_class);
  return report;
}

std::string to_string(const AffineSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += s[i].to_string();
  }
  return out + "}";
}

}  // namespace bruhat
