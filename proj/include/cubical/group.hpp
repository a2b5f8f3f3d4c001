#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace cubical {

// A letter is encoded as 2 * generator + (inverse ? 1 : 0). The code order
// a < a^-1 < b < b^-1 < ... is the shortlex order used by normal forms.
using Letter = int;
using Word = std::vector<Letter>;

inline constexpr int letter_gen(Letter c) { return c >> 1; }
inline constexpr int letter_sign(Letter c) { return (c & 1) ? -1 : 1; }
inline constexpr Letter letter_inv(Letter c) { return c ^ 1; }
inline constexpr Letter make_letter(int gen, int sign) { return 2 * gen + (sign < 0 ? 1 : 0); }

struct SignedLetter {
  int generator = 0;
  int sign = 1;
  Letter code() const { return make_letter(generator, sign); }
  static SignedLetter from_code(Letter c) { return {letter_gen(c), letter_sign(c)}; }
  bool operator==(const SignedLetter&) const = default;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Simple graph on at most 64 generators with a fixed generator order.
class DefiningGraph {
 public:
  DefiningGraph() = default;
  DefiningGraph(std::vector<std::string> names, const std::vector<std::pair<int, int>>& edges);

  static DefiningGraph from_json(const nlohmann::json& j);
  static DefiningGraph from_json_text(std::string_view text);
  // "pentagon", "F2", "Z2", "cycleN", "pathN", "freeN", "completeN".
  static DefiningGraph named(std::string_view name);
  static DefiningGraph cycle(int n);
  static DefiningGraph path(int n);
  static DefiningGraph free_group(int n);
  static DefiningGraph complete(int n);
  // Graph on n vertices whose edge set is the given bitmask over pairs (i<j,
  // lexicographic pair order).
  static DefiningGraph from_edge_mask(int n, std::uint64_t mask);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int g) const { return names_.at(g); }
  int index_of(std::string_view name) const;
  bool adjacent(int a, int b) const { return (adj_[a] >> b) & 1U; }
  std::uint64_t adjacency_mask(int g) const { return adj_[g]; }
  // Letters commute iff their generators are distinct and adjacent.
  bool commute(Letter x, Letter y) const { return adjacent(letter_gen(x), letter_gen(y)); }
  std::vector<int> link(int g) const;
  std::vector<std::pair<int, int>> edges() const;
  bool has_edges() const;

  nlohmann::json to_json() const;
  bool operator==(const DefiningGraph& o) const { return names_ == o.names_ && adj_ == o.adj_; }

 private:
  std::vector<std::string> names_;
  std::vector<std::uint64_t> adj_;
};

// Reads "aBc" style words: lowercase generator = itself, uppercase first
// character = inverse; multi-character names and a trailing "^-1" are also
// accepted. Whitespace is ignored.
Word parse_word(const DefiningGraph& g, std::string_view text);
std::string format_word(const DefiningGraph& g, const Word& w);
std::string format_letter(const DefiningGraph& g, Letter c);

using NormalForm = Word;

NormalForm normalize(const DefiningGraph& g, const Word& w);
NormalForm multiply(const DefiningGraph& g, const NormalForm& x, const NormalForm& y);
NormalForm invert(const DefiningGraph& g, const NormalForm& x);
NormalForm power(const DefiningGraph& g, const NormalForm& x, int n);
bool equals(const DefiningGraph& g, const Word& x, const Word& y);

// Letters that can be moved to the front (resp. back) of a reduced word.
std::vector<Letter> first_letters(const DefiningGraph& g, const NormalForm& x);
std::vector<Letter> last_letters(const DefiningGraph& g, const NormalForm& x);
bool has_first_letter(const DefiningGraph& g, const NormalForm& x, Letter c);

struct CyclicDecomposition {
  NormalForm conjugator;
  NormalForm core;
};

// g = conjugator * core * conjugator^-1 with core cyclically reduced.
CyclicDecomposition cyclically_reduce(const DefiningGraph& g, const NormalForm& x);
int translation_length(const DefiningGraph& g, const NormalForm& x);

// Splits x = prefix * rest where prefix is in the special subgroup generated
// by `gens` and rest has no first letter there. Greedy stripping.
std::pair<NormalForm, NormalForm> strip_prefix(const DefiningGraph& g, const NormalForm& x,
                                               std::uint64_t gens);
// Splits x = rest * suffix with suffix in <gens> and no last letter of rest in gens.
std::pair<NormalForm, NormalForm> strip_suffix(const DefiningGraph& g, const NormalForm& x,
                                               std::uint64_t gens);
bool in_special_subgroup(const NormalForm& x, std::uint64_t gens);

}  // namespace cubical
