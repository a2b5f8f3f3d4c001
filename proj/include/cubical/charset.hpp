#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cubical/median.hpp"

namespace cubical {

class InversionError : public std::runtime_error {
 public:
  InversionError(const std::string& what, HalfSpace h) : std::runtime_error(what), halfspace(std::move(h)) {}
  HalfSpace halfspace;
};

class InconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AxisData {
  Automorphism g;
  int ell = 0;
  Vertex base;                         // o, on a combinatorial axis
  std::vector<HalfSpace> fundamental;  // [o, g o] in geodesic order
};

struct Classification {
  bool hyperbolic = false;
  AxisData axis;  // meaningful only when hyperbolic
};

Classification classify(const Complex& cx, const Automorphism& g);
// Axis data for g through base; throws InconsistencyError unless
// d(base, g base) = ell.
AxisData axis_through(const Complex& cx, const Automorphism& g, const Vertex& base, int ell);
bool is_minimal(const Complex& cx, const Vertex& v, const AxisData& axis);

// The half-spaces of [g^-K o, g^K o] graded by period, with their pairwise
// relations decided in that interval.
class HalfspaceWindow {
 public:
  HalfspaceWindow(const Complex& cx, AxisData axis, int radius, std::size_t cap = kDefaultHullCap);

  const AxisData& axis() const { return axis_; }
  int radius() const { return radius_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<HalfSpace>& elements() const { return elements_; }
  const HalfSpace& element(std::size_t i) const { return elements_[i]; }
  // element(i) = g^grade(i) * fundamental[position(i)]
  int grade(std::size_t i) const { return static_cast<int>(i / axis_.ell) - radius_; }
  int position(std::size_t i) const { return static_cast<int>(i % axis_.ell); }
  std::optional<std::size_t> index(int grade, int position) const;
  std::optional<std::size_t> index_of(const HalfSpace& h) const;
  // Index of g^k * element(i) when it lies in the window.
  std::optional<std::size_t> translate(std::size_t i, int k) const { return index(grade(i) + k, position(i)); }

  Relation relation(std::size_t i, std::size_t j) const;
  bool contains(std::size_t i, std::size_t j) const { return bit(contains_[i], j); }
  bool transverse(std::size_t i, std::size_t j) const { return bit(transverse_[i], j); }
  // i strictly contains j and no window element lies strictly between.
  bool tightly_nested(std::size_t i, std::size_t j) const;
  const Bits& transverse_row(std::size_t i) const { return transverse_[i]; }

  const Scope& scope() const { return *scope_; }
  const Hull& hull() const { return scope_->hull(); }
  // Hull index of element i.
  int hull_index(std::size_t i) const { return hull_index_[i]; }
  // g^n o.
  Vertex axis_vertex(int n) const;

  nlohmann::json to_json(const Complex& cx) const;

 private:
  const Complex* cx_;
  AxisData axis_;
  int radius_;
  std::vector<HalfSpace> elements_;
  std::unordered_map<HalfSpace, std::size_t, HalfSpaceHash> index_;
  std::shared_ptr<const Scope> scope_;
  std::vector<int> hull_index_;
  std::vector<Bits> contains_, contained_by_, transverse_;

  static bool bit(const Bits& b, std::size_t j) { return (b[j >> 6] >> (j & 63)) & 1U; }
};

class PowerCapError : public std::runtime_error {
 public:
  PowerCapError(const std::string& what, std::vector<HalfSpace> w)
      : std::runtime_error(what), witnesses(std::move(w)) {}
  std::vector<HalfSpace> witnesses;  // H with H transverse to g^cap H
};

// Smallest k in [1, cap] such that no fundamental H is transverse to g^k H;
// throws PowerCapError otherwise.
int non_transverse_power(const Complex& cx, const AxisData& axis, int cap);

// Maximum clique of the transversality graph.
std::vector<std::size_t> max_transverse_clique(const HalfspaceWindow& w);
// Among cliques of size d, one of least grade spread (then lexicographic).
std::vector<std::size_t> compact_clique(const HalfspaceWindow& w, int d);

// New base o: the minimal vertex of the cube dual to the antichain. Verifies
// [A, gA) = [o, go] in a window around o, returned through `rebuilt`.
AxisData recenter(const Complex& cx, const HalfspaceWindow& w, const std::vector<std::size_t>& antichain,
                  std::shared_ptr<const HalfspaceWindow>* rebuilt = nullptr);

struct AnalyzeOptions {
  int radius = 0;     // 0: start at max(2, ell)
  int max_power = 8;  // cap for the non-transverse power search
  int max_growth = 3;
  std::size_t hull_cap = kDefaultHullCap;
};

struct CharSetAnalysis {
  bool hyperbolic = false;
  Automorphism g;        // the element asked about
  int k = 1;             // power analysed
  AxisData axis;         // for g^k, recentred at the cube's minimal vertex
  int d = 0;
  bool window_certified = false;
  std::vector<int> dimension_history;
  std::shared_ptr<const HalfspaceWindow> window;  // centred at axis.base
  std::vector<HalfSpace> antichain;               // A, inside [o, g^k o]
};

CharSetAnalysis analyze(const Complex& cx, const Automorphism& g, const AnalyzeOptions& opt = {});

nlohmann::json to_json(const Complex& cx, const CharSetAnalysis& a);

}  // namespace cubical
