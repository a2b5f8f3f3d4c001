#pragma once

#include <array>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubical/charset.hpp"
#include "cubical/dilworth.hpp"

namespace cubical {

class EmbeddingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The g-invariant chain family restricted to [A, gA]: chain i runs from a_i
// down to g a_sigma(i).
struct EquivariantPartition {
  std::vector<std::vector<std::size_t>> Q;  // window indices, greatest first
  std::vector<int> sigma;
};

// Requires the analysis window to be centred at the cube's minimal vertex.
EquivariantPartition equivariant_partition(const HalfspaceWindow& w, const std::vector<HalfSpace>& antichain);

struct TautEmbedding {
  int d = 0;
  std::shared_ptr<const HalfspaceWindow> window;
  EquivariantPartition partition;
  std::vector<int> shifts;              // n_i = phi(g o)_i
  std::vector<HalfSpace> antichain;     // a_i, the top of chain i
  std::vector<HalfSpace> taut_segment;  // [A, gA) in chain 0, outermost first
  std::vector<HalfSpace> extended_segment;
  // Per window element: H = H^chain_level.
  std::vector<int> chain_of, level_of;
  std::vector<int> level_lo, level_hi;  // window level range of each chain
  std::vector<std::vector<std::size_t>> by_level;  // chain -> elements by level
  // Per window-hull vertex.
  std::vector<std::vector<int>> coords;

  // Window index of H^i_n, or -1.
  long element_at(int i, int n) const;
  // Coordinates of a window-hull vertex, or of a translate g^m v of one.
  std::vector<int> coordinates(const Complex& cx, const Vertex& v, int max_translate = 8) const;
  // Coordinate action: g(x)_i = x_sigma(i) + n_i.
  std::vector<int> act(const std::vector<int>& x, int power = 1) const;
};

TautEmbedding build_embedding(const Complex& cx, const CharSetAnalysis& analysis);

enum class QuadrantCase { Transverse, Northwest, Southeast };
const char* to_string(QuadrantCase c);

struct QuadrantResult {
  QuadrantCase kind = QuadrantCase::Transverse;
  int i = 0, n = 0, j = 0, m = 0;  // corner H^i_n, H^j_m with x_i horizontal
  bool avoided = true;
};

// Projection p_ij of the window hull. Edges and squares are read off the
// coordinates, so they are meaningful once the embedding is verified.
class Projection {
 public:
  Projection(const TautEmbedding& e, int i, int j);
  bool has_vertex(int x, int y) const;
  bool has_edge(int x0, int y0, int x1, int y1) const;
  bool has_square(int x, int y) const;  // [x, x+1] x [y, y+1]
  const std::vector<std::pair<int, int>>& vertices() const { return verts_; }
  const std::vector<std::array<int, 4>>& edges() const { return edges_; }
  std::vector<std::pair<int, int>> squares() const;
  // Bounds of occupied vertices.
  int min_x() const { return minx_; }
  int max_x() const { return maxx_; }
  int min_y() const { return miny_; }
  int max_y() const { return maxy_; }

 private:
  std::vector<std::pair<int, int>> verts_;
  std::vector<std::array<int, 4>> edges_;
  std::set<std::pair<int, int>> vset_;
  std::set<std::array<int, 4>> eset_;
  std::set<std::pair<int, int>> sset_;
  int minx_ = 0, maxx_ = 0, miny_ = 0, maxy_ = 0;
};

// Window elements h, k in different chains. Throws EmbeddingError when the
// generated quadrant contains a window vertex.
QuadrantResult quadrant_check(const TautEmbedding& e, std::size_t h, std::size_t k);
// h strictly inside k, tightly nested, different chains. Throws EmbeddingError
// when an elbow edge is missing from the projection onto (chain h, chain k).
bool elbow_check(const TautEmbedding& e, const Projection& p, std::size_t h, std::size_t k);
bool elbow_check(const TautEmbedding& e, std::size_t h, std::size_t k);

struct EmbeddingReport {
  std::vector<std::string> failures;
  std::size_t vertices = 0, isometry_pairs = 0, coherence_checks = 0, equivariance_checks = 0,
              quadrant_checks = 0, elbow_checks = 0, sameway_checks = 0;
  bool isometry_exhaustive = true;
  bool ok() const { return failures.empty(); }
};

// Every embedding invariant on the window. Isometry is checked on all vertex
// pairs up to `pair_limit`, then on a seeded sample of that many pairs.
EmbeddingReport verify_embedding(const Complex& cx, const TautEmbedding& e, std::size_t pair_limit = 200'000,
                                 unsigned seed = 1);

nlohmann::json to_json(const Complex& cx, const TautEmbedding& e);
std::string to_tsv(const Complex& cx, const TautEmbedding& e);
std::string to_svg(const Complex& cx, const TautEmbedding& e, int i, int j);

}  // namespace cubical
