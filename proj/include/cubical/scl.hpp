#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubical/embedding.hpp"

namespace cubical {

// A verified reversed copy of a maximal nested segment inside the positive
// half-space axis of a RAAG element.
class TheoremContradiction : public std::runtime_error {
 public:
  TheoremContradiction(const std::string& what, std::vector<HalfSpace> c, Automorphism h)
      : std::runtime_error(what), chain(std::move(c)), witness(std::move(h)) {}
  std::vector<HalfSpace> chain;
  Automorphism witness;
};

class DefectViolation : public std::runtime_error {
 public:
  DefectViolation(const std::string& what, std::array<Vertex, 3> t) : std::runtime_error(what), triple(std::move(t)) {}
  std::array<Vertex, 3> triple;
};

// H_1 > H_2 > ... > H_n, outermost first.
struct Segment {
  std::vector<HalfSpace> chain;

  std::size_t size() const { return chain.size(); }
  bool empty() const { return chain.empty(); }
  // Complements in reverse order.
  Segment inverse() const;
  std::vector<int> labels(const Complex& cx) const;
  bool operator==(const Segment&) const = default;
};

// Consecutive members strictly nested with nothing in between.
bool is_segment(const Complex& cx, const std::vector<HalfSpace>& chain);
// The innermost member of s strictly contains the outermost member of g s.
bool is_g_nested(const Complex& cx, const Segment& s, const Automorphism& g);

// The half-spaces of an interval [x, y], oriented towards y, with their
// pairwise relations.
class IntervalView {
 public:
  static IntervalView of_scope(const Scope& scope);
  // [g^from o, g^to o] inside the window.
  static IntervalView of_window(const HalfspaceWindow& w, int from_grade, int to_grade);

  const Vertex& x() const { return x_; }
  const Vertex& y() const { return y_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<HalfSpace>& elements() const { return elements_; }
  const HalfSpace& element(std::size_t i) const { return elements_[i]; }
  std::optional<std::size_t> index_of(const HalfSpace& h) const;
  // i strictly contains j.
  bool contains(std::size_t i, std::size_t j) const { return rel_[i][j] == kContains; }
  bool transverse(std::size_t i, std::size_t j) const { return rel_[i][j] == kTransverse; }
  bool tightly_nested(std::size_t i, std::size_t j) const { return tight_[i][j]; }

 private:
  enum : char { kNone, kContains, kContained, kTransverse };
  Vertex x_, y_;
  std::vector<HalfSpace> elements_;
  std::map<HalfSpace, std::size_t> index_;
  std::vector<std::vector<char>> rel_;
  std::vector<std::vector<char>> tight_;
};

// Segments overlap when they share a member or have transverse members.
// Throws PreconditionError when a member is not in the view.
bool overlap(const Segment& a, const Segment& b, const IntervalView& view);
bool overlap(const Segment& a, const Segment& b, const Scope& scope);

struct SegmentCopy {
  std::vector<HalfSpace> chain;
  std::optional<Automorphism> witness;  // h with h gamma = chain
};

// Exact: RAAG copies by intersecting parabolic cosets, cyclic acting groups
// by solving for the power. Bounded: RAAG witnesses h = c_1 z b_1^-1 with z
// in <lk v_1> of length at most the radius.
enum class CopyMethod { Exact, Bounded };

std::optional<Automorphism> raag_copy_witness(const RaagComplex& cx, const Segment& gamma,
                                              const std::vector<HalfSpace>& chain);
std::optional<Automorphism> bounded_copy_witness(const RaagComplex& cx, const Segment& gamma,
                                                 const std::vector<HalfSpace>& chain, int radius);
std::optional<Automorphism> cyclic_copy_witness(const Complex& cx, const Automorphism& generator,
                                                const Segment& gamma, const std::vector<HalfSpace>& chain);

// Memoised copy decisions for one segment.
class CopyFinder {
 public:
  CopyFinder(const Complex& cx, Segment gamma, CopyMethod method = CopyMethod::Exact, int radius = 4);

  const Complex& complex() const { return *cx_; }
  const Segment& gamma() const { return gamma_; }
  const std::vector<int>& labels() const { return labels_; }
  // Verified witness, or nullopt. A nullopt from a bounded search is not a
  // refutation; see complete().
  std::optional<Automorphism> witness(const std::vector<HalfSpace>& chain);
  // True when a nullopt answer refutes the chain.
  bool complete() const { return exact_; }

 private:
  const Complex* cx_;
  Segment gamma_;
  std::vector<int> labels_;
  CopyMethod method_;
  int radius_;
  bool exact_;
  std::map<std::vector<HalfSpace>, std::optional<Automorphism>> memo_;
};

// Tightly nested chains of view elements carrying the given labels.
std::vector<std::vector<std::size_t>> label_chains(const Complex& cx, const IntervalView& view,
                                                   const std::vector<int>& labels);

std::vector<SegmentCopy> find_copies(CopyFinder& finder, const IntervalView& view);

struct CountReport {
  int lower = 0;  // largest non-overlapping family of verified copies
  int upper = 0;  // same, over all candidates not refuted
  bool exact = true;
  int candidates = 0, copies = 0, refuted = 0;
  std::vector<SegmentCopy> collection;  // realises `lower`, outermost first
};

CountReport count(CopyFinder& finder, const IntervalView& view);

struct OmegaValue {
  int value = 0;
  bool exact = true;
};

// c_gamma, c_gammabar and omega = c_gamma - c_gammabar on arbitrary intervals,
// with hulls and results cached.
class SegmentCounter {
 public:
  SegmentCounter(const Complex& cx, Segment gamma, CopyMethod method = CopyMethod::Exact, int radius = 4);

  const Complex& complex() const { return *cx_; }
  const Segment& gamma() const { return forward_.gamma(); }
  CountReport count(const IntervalView& view, bool reversed = false);
  CountReport count(const Vertex& x, const Vertex& y, bool reversed = false);
  OmegaValue omega(const IntervalView& view);
  OmegaValue omega(const Vertex& x, const Vertex& y);
  // omega(O, h O).
  OmegaValue psi(const Automorphism& h, const Vertex& O);
  // omega(x, h x); x defaults to the base vertex found by classify.
  OmegaValue phi(const Automorphism& h, const std::optional<Vertex>& x = std::nullopt);
  IntervalView view(const Vertex& x, const Vertex& y);

 private:
  const Complex* cx_;
  CopyFinder forward_, backward_;
  HullCache hulls_;
  std::map<std::pair<Vertex, Vertex>, OmegaValue> omega_cache_;
};

struct NestedSegment {
  Segment segment;
  int l = 0, r = 0;  // H^1_l .. H^1_r of the taut segment H^1_0 .. H^1_n
  int n = 0;
  std::vector<std::size_t> indices;  // window indices
};

// Longest maximal g-nested subsegment of the taut segment, leftmost on ties.
// Throws InconsistencyError when the two maximality conditions fail.
NestedSegment maximal_g_nested(const TautEmbedding& e);

struct DefectConfig {
  int radius = 4;
  int triples = 200;
  unsigned seed = 1;
};

struct DefectReport {
  int triples = 0;
  int max_coboundary = 0;  // |omega(x,y) + omega(y,z) + omega(z,x)|
  int max_juncture = 0;    // |omega(a,b) - omega(a,m) - omega(m,b)|, m the median
  int coboundary_bound = 6, juncture_bound = 2;
  bool tree = false;
  bool exact = true;
  std::array<Vertex, 3> worst_coboundary, worst_juncture;
};

// Throws DefectViolation when a sampled value exceeds its bound.
DefectReport defect_sample(SegmentCounter& counter, const DefectConfig& config = {});

// Vertices within `radius` of the origin, in BFS order.
std::vector<Vertex> ball(const Complex& cx, int radius);

struct ReversedCertificate {
  bool certified = false;
  std::string method;  // "label" or "exhaustion" when certified
  int candidates = 0;  // label-matching chains starting in [o, g o]
  bool window_edge = false;
  std::vector<std::vector<HalfSpace>> survivors;
};

// Copies of the inverse segment in the positive axis with their outermost
// member in [o, g o]. Throws TheoremContradiction for a verified copy on a
// RAAG.
ReversedCertificate reversed_copy_certificate(const Complex& cx, const Segment& gamma, const HalfspaceWindow& w,
                                              CopyFinder& inverse_finder);

struct Fraction {
  long num = 0, den = 1;
  static Fraction make(long n, long d);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
  bool operator==(const Fraction&) const = default;
};
bool operator<(const Fraction& a, const Fraction& b);
inline bool operator>=(const Fraction& a, const Fraction& b) { return !(a < b); }

enum class Rigor { Certified, WindowLimited };
const char* to_string(Rigor r);

struct CountRow {
  int n = 0, c = 0, cbar = 0;
  bool exact = true;
  std::vector<Automorphism> witnesses;  // copies realising c
};

struct Homogenized {
  Fraction value;
  Rigor rigor = Rigor::WindowLimited;
};

// Exactly 1 when c = n and cbar = 0 for every row with all rows exact and the
// reversal absence certified; otherwise phi(g^N) / N.
Homogenized homogenize(const std::vector<CountRow>& rows, bool reversal_certified);

struct SclOptions {
  AnalyzeOptions analyze;
  int max_n = 8;
  CopyMethod method = CopyMethod::Exact;
  int witness_radius = 0;  // 0: 2 * ell * K
};

struct SclCertificate {
  Automorphism g;
  int k = 1;
  int ell = 0;  // of g^k
  int d = 0;
  std::vector<int> sigma;
  bool window_certified = false;
  int count_radius = 0;
  NestedSegment gamma;
  std::vector<CountRow> counts;
  ReversedCertificate reversed;
  Fraction phi_hat;
  int defect_bound = 12;
  Fraction scl_lower;
  Rigor rigor = Rigor::WindowLimited;
};

// Throws PreconditionError for elliptic input.
SclCertificate scl_bound(const Complex& cx, const Automorphism& g, const SclOptions& options = {});
// Certificate for an analysis already made (and its embedding).
SclCertificate scl_bound(const Complex& cx, const CharSetAnalysis& analysis, const TautEmbedding& e,
                         const SclOptions& options = {});

nlohmann::json to_json(const Complex& cx, const SclCertificate& c);

struct RaagLikeOptions {
  int samples = 500;
  int radius = 3;
  unsigned seed = 1;
};

struct RaagLikeReport {
  int samples = 0;
  int tight_pairs = 0;  // samples with a tightly nested pair for property (ii)
  int inversions = 0, transverse_translates = 0, inter_osculations = 0, self_osculations = 0;
  std::vector<std::string> witnesses;  // first few, one per kind
  bool ok() const { return inversions + transverse_translates + inter_osculations + self_osculations == 0; }
};

// Samples (H, H', g) near the origin: no inversion, (i) H not transverse to
// gH, (ii) tightly nested H, H' with H not transverse to gH', (iii) H and
// gH-bar never tightly nested.
RaagLikeReport raaglike_check(const Complex& cx, const RaagLikeOptions& options = {});

nlohmann::json to_json(const RaagLikeReport& r);

}  // namespace cubical
