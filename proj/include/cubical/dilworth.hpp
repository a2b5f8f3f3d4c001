#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

namespace cubical {

// Strict partial order on 0..n-1: less[x][y] means x < y.
struct FinitePoset {
  std::vector<std::vector<bool>> less;

  std::size_t size() const { return less.size(); }
  bool comparable(int x, int y) const { return less[x][y] || less[y][x]; }
  // Throws std::invalid_argument unless irreflexive and transitive.
  void validate() const;
  FinitePoset restrict_to(const std::vector<int>& keep) const;
};

struct ChainPartition {
  // Each chain lists its elements from greatest to least.
  std::vector<std::vector<int>> chains;
  std::optional<std::size_t> maximal_chain;
  // Antichain with one element per chain, certifying minimality.
  std::vector<int> antichain;
};

class DilworthError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Minimum chain cover via bipartite matching, with a Konig antichain.
ChainPartition dilworth_partition(const FinitePoset& p);

// Maximal chains (greatest to least), longest first, ties in lexicographic
// order of element ids.
// Throws DilworthError beyond `cap` chains.
std::vector<std::vector<int>> maximal_chains(const FinitePoset& p, std::size_t cap = 200000);

// Minimum chain cover whose first chain is maximal in the poset.
ChainPartition dilworth_with_maximal_chain(const FinitePoset& p);

bool is_chain(const FinitePoset& p, const std::vector<int>& c);
bool is_antichain(const FinitePoset& p, const std::vector<int>& a);

}  // namespace cubical
