#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "bruhat/order.hpp"
#include "bruhat/realizability.hpp"

namespace bruhat {

/// A word in the simple transpositions s_1..s_{n-1} of S_n. The word acts as
/// a composition, rightmost letter first.
struct Word {
  int n = 0;
  std::vector<int> letters;

  std::size_t size() const noexcept { return letters.size(); }

  /// "stutst" when every letter fits s..z, else "s1 s2 s3".
  std::string to_string() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;
};

/// Accepts letter strings ("stutst", s = s_1, t = s_2, ...), indexed tokens
/// ("s1 s2 s3", spaces optional) or digit strings ("123"). "e" or "" is the
/// identity.
Word parse_word(std::string_view text, int n);

/// One-line notation: entry x-1 is w(x).
std::vector<int> word_permutation(const Word& w);

/// ι(w): w^{-1}(1) < w^{-1}(2) < ... < w^{-1}(n).
KOrder word_to_order(const Word& w);

/// Inv(ι(w)) as a 2-set.
RealizableSet word_inversions(const Word& w);

bool is_reduced(const Word& w);

/// The order in which strands cross, reading the letters right to left.
/// Raises not-reduced if a pair crosses twice.
KOrder rex_order(const Word& rex);

/// As above, also checking that rex is an expression for w.
KOrder rex_order(const Word& w, const Word& rex);

/// All reduced expressions of w, sorted; raises cap-exceeded past `cap`.
std::vector<Word> reduced_words(const Word& w, std::size_t cap = 1'000'000);

/// The word of longest length in S_n, as the reduced expression
/// s_1 s_2 s_1 s_3 s_2 s_1 ...
Word longest_word(int n);

enum class RexMove { commutation, braid };

struct RexEdge {
  std::size_t a = 0;
  std::size_t b = 0;
  RexMove move = RexMove::commutation;
};

/// Reduced expressions of w joined by commutation and braid moves.
struct RexGraph {
  std::vector<Word> words;
  std::vector<RexEdge> edges;

  /// Connected components under commutation moves, each sorted, listed in
  /// order of their first word.
  std::vector<std::vector<std::size_t>> commutation_classes() const;
};

RexGraph rex_graph(const Word& w, std::size_t cap = 1'000'000);

}  // namespace bruhat
