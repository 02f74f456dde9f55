#include "bruhat/words.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>

#include "bruhat/error.hpp"

namespace bruhat {

namespace {

constexpr std::string_view kLetters = "stuvwxyz";

void check_letter(int letter, int n) {
  if (letter < 1 || letter > n - 1) {
    fail(ErrorKind::invalid_arguments, "generator s" + std::to_string(letter) +
                                           " is not in S_" + std::to_string(n));
  }
}

// Arrangement of strands after applying the word right to left, starting from
// 1..n. Calls on_cross(a, b) with a < b for each crossing.
template <class F>
std::vector<int> simulate(const Word& w, F&& on_cross) {
  std::vector<int> arr(static_cast<std::size_t>(w.n));
  std::iota(arr.begin(), arr.end(), 1);
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    const auto i = static_cast<std::size_t>(*it - 1);
    on_cross(std::min(arr[i], arr[i + 1]), std::max(arr[i], arr[i + 1]));
    std::swap(arr[i], arr[i + 1]);
  }
  return arr;
}

}  // namespace

std::string Word::to_string() const {
  if (letters.empty()) return "e";
  const bool compact = std::all_of(letters.begin(), letters.end(), [](int l) {
    return l >= 1 && static_cast<std::size_t>(l) <= kLetters.size();
  });
  std::string out;
  for (int l : letters) {
    if (compact) {
      out += kLetters[static_cast<std::size_t>(l - 1)];
    } else {
      if (!out.empty()) out += ' ';
      out += 's' + std::to_string(l);
    }
  }
  return out;
}

Word parse_word(std::string_view text, int n) {
  if (n < 1 || n > kMaxGroundSet) {
    fail(ErrorKind::invalid_arguments, "n must lie in [1, " + std::to_string(kMaxGroundSet) + "]");
  }
  Word w{n, {}};
  std::string body;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c)) && c != ',' && c != '*') body += c;
  }
  if (body.empty() || body == "e") return w;

  const bool indexed = text.find_first_of("0123456789") != std::string_view::npos &&
                       body.front() == 's';
  const bool digits = std::all_of(body.begin(), body.end(),
                                  [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  if (digits) {
    for (char c : body) w.letters.push_back(c - '0');
  } else if (indexed) {
    std::size_t i = 0;
    while (i < body.size()) {
      if (body[i] != 's') {
        fail(ErrorKind::parse_error, "expected 's' at offset " + std::to_string(i) + " in \"" +
                                         std::string(text) + "\"");
      }
      std::size_t j = i + 1;
      int value = 0;
      while (j < body.size() && std::isdigit(static_cast<unsigned char>(body[j]))) {
        value = value * 10 + (body[j] - '0');
        if (value > kMaxGroundSet) fail(ErrorKind::parse_error, "generator index too large");
        ++j;
      }
      if (j == i + 1) {
        fail(ErrorKind::parse_error, "missing index after 's' at offset " + std::to_string(i));
      }
      w.letters.push_back(value);
      i = j;
    }
  } else {
    for (std::size_t i = 0; i < body.size(); ++i) {
      const auto at = kLetters.find(body[i]);
      if (at == std::string_view::npos) {
        fail(ErrorKind::parse_error, "unknown letter '" + std::string(1, body[i]) +
                                         "' at offset " + std::to_string(i));
      }
      w.letters.push_back(static_cast<int>(at) + 1);
    }
  }
  for (int l : w.letters) check_letter(l, n);
  return w;
}

std::vector<int> word_permutation(const Word& w) {
  // The final arrangement lists w^{-1}(1), ..., w^{-1}(n).
  const std::vector<int> arr = simulate(w, [](int, int) {});
  std::vector<int> perm(arr.size());
  for (std::size_t p = 0; p < arr.size(); ++p) {
    perm[static_cast<std::size_t>(arr[p] - 1)] = static_cast<int>(p) + 1;
  }
  return perm;
}

KOrder word_to_order(const Word& w) {
  for (int l : w.letters) check_letter(l, w.n);
  std::vector<KSet> seq;
  for (int x : simulate(w, [](int, int) {})) seq.push_back(KSet(w.n, {x}));
  return KOrder(w.n, 1, std::move(seq));
}

RealizableSet word_inversions(const Word& w) {
  if (w.n < 2) fail(ErrorKind::invalid_arguments, "inversion sets need n >= 2");
  return RealizableSet(inversion_set(word_to_order(w)).members());
}

bool is_reduced(const Word& w) {
  for (int l : w.letters) check_letter(l, w.n);
  std::vector<bool> seen(static_cast<std::size_t>(w.n * w.n), false);
  bool reduced = true;
  simulate(w, [&](int a, int b) {
    auto slot = seen[static_cast<std::size_t>((a - 1) * w.n + (b - 1))];
    if (slot) reduced = false;
    slot = true;
  });
  return reduced;
}

KOrder rex_order(const Word& rex) {
  for (int l : rex.letters) check_letter(l, rex.n);
  std::vector<KSet> seq;
  std::vector<bool> seen(static_cast<std::size_t>(rex.n * rex.n), false);
  std::size_t step = 0;
  simulate(rex, [&](int a, int b) {
    ++step;
    auto slot = seen[static_cast<std::size_t>((a - 1) * rex.n + (b - 1))];
    if (slot) {
      fail(ErrorKind::not_reduced, "strands " + std::to_string(a) + " and " + std::to_string(b) +
                                       " cross twice (crossing " + std::to_string(step) +
                                       " from the right in " + rex.to_string() + ")");
    }
    slot = true;
    seq.push_back(KSet(rex.n, {a, b}));
  });
  return KOrder(rex.n, 2, std::move(seq));
}

KOrder rex_order(const Word& w, const Word& rex) {
  if (w.n != rex.n) fail(ErrorKind::invalid_arguments, "word and expression differ in n");
  KOrder out = rex_order(rex);
  if (word_permutation(w) != word_permutation(rex)) {
    fail(ErrorKind::invalid_arguments, rex.to_string() + " is not an expression for " +
                                           w.to_string());
  }
  return out;
}

std::vector<Word> reduced_words(const Word& w, std::size_t cap) {
  const std::vector<int> target = simulate(w, [](int, int) {});
  const int n = w.n;
  // rank[x] = final position of strand x; a crossing of adjacent strands a
  // (left) and b (right) is allowed iff b must finish left of a.
  std::vector<int> final_pos(static_cast<std::size_t>(n) + 1);
  for (std::size_t p = 0; p < target.size(); ++p) final_pos[static_cast<std::size_t>(target[p])] = static_cast<int>(p);

  std::vector<Word> out;
  std::vector<int> arr(static_cast<std::size_t>(n));
  std::iota(arr.begin(), arr.end(), 1);
  std::vector<int> suffix;  // letters chosen so far, applied first
  auto dfs = [&](auto&& self) -> void {
    bool done = true;
    for (int i = 0; i + 1 < n; ++i) {
      const auto a = static_cast<std::size_t>(arr[static_cast<std::size_t>(i)]);
      const auto b = static_cast<std::size_t>(arr[static_cast<std::size_t>(i) + 1]);
      if (a > b || final_pos[a] < final_pos[b]) continue;
      done = false;
      std::swap(arr[static_cast<std::size_t>(i)], arr[static_cast<std::size_t>(i) + 1]);
      suffix.push_back(i + 1);
      self(self);
      suffix.pop_back();
      std::swap(arr[static_cast<std::size_t>(i)], arr[static_cast<std::size_t>(i) + 1]);
    }
    if (done) {
      if (out.size() >= cap) {
        throw LimitExceeded(ErrorKind::cap_exceeded,
                            "more than " + std::to_string(cap) + " reduced expressions", out.size());
      }
      out.push_back(Word{n, std::vector<int>(suffix.rbegin(), suffix.rend())});
    }
  };
  dfs(dfs);
  std::sort(out.begin(), out.end());
  return out;
}

Word longest_word(int n) {
  Word w{n, {}};
  for (int top = 1; top < n; ++top) {
    for (int l = top; l >= 1; --l) w.letters.push_back(l);
  }
  return w;
}

RexGraph rex_graph(const Word& w, std::size_t cap) {
  RexGraph g;
  g.words = reduced_words(w, cap);
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < g.words.size(); ++i) index.emplace(g.words[i].letters, i);
  for (std::size_t i = 0; i < g.words.size(); ++i) {
    const auto& letters = g.words[i].letters;
    for (std::size_t p = 0; p + 1 < letters.size(); ++p) {
      if (std::abs(letters[p] - letters[p + 1]) >= 2) {
        auto next = letters;
        std::swap(next[p], next[p + 1]);
        const std::size_t j = index.at(next);
        if (i < j) g.edges.push_back({i, j, RexMove::commutation});
      }
      if (p + 2 < letters.size() && letters[p] == letters[p + 2] &&
          std::abs(letters[p] - letters[p + 1]) == 1) {
        auto next = letters;
        std::swap(next[p], next[p + 1]);
        next[p + 2] = next[p];
        const std::size_t j = index.at(next);
        if (i < j) g.edges.push_back({i, j, RexMove::braid});
      }
    }
  }
  std::sort(g.edges.begin(), g.edges.end(), [](const RexEdge& x, const RexEdge& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });
  return g;
}

std::vector<std::vector<std::size_t>> RexGraph::commutation_classes() const {
  std::vector<std::size_t> parent(words.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : edges) {
    if (e.move == RexMove::commutation) parent[root(e.a)] = root(e.b);
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < words.size(); ++i) groups[root(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [r, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace bruhat
