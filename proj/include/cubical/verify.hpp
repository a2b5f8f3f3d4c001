#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cubical/scl.hpp"

namespace cubical {

// One representative per isomorphism class of graphs on n vertices.
std::vector<DefiningGraph> graph_classes(int n);
// Distinct nontrivial normal forms of words of length 1..max_len.
std::vector<NormalForm> corpus_elements(const DefiningGraph& g, int max_len);

struct VerifyConfig {
  unsigned seed = 1;
  int instances = 500;  // median, relation and Dilworth instances
  int radius = 4;       // sampling ball
  int max_n = 8;
  int raaglike_samples = 500;
  int defect_triples = 200;
  AnalyzeOptions analyze;
};

struct SuiteResult {
  std::string name;
  bool passed = true;
  bool skipped = false;
  std::size_t checks = 0;
  nlohmann::json failures = nlohmann::json::array();
  nlohmann::json detail = nlohmann::json::object();

  void fail(nlohmann::json witness);
};

// Each suite compares production code against a brute-force check or an
// invariant, and records failures with witnesses instead of throwing.
SuiteResult median_suite(const Complex& cx, const VerifyConfig& cfg);
SuiteResult relation_suite(const Complex& cx, const VerifyConfig& cfg);
SuiteResult dilworth_suite(const VerifyConfig& cfg);
SuiteResult embedding_suite(const Complex& cx, const Automorphism& g, const VerifyConfig& cfg);
SuiteResult counting_suite(const Complex& cx, const Automorphism& g, const VerifyConfig& cfg);
SuiteResult defect_suite(const Complex& cx, const Automorphism& g, const VerifyConfig& cfg);
SuiteResult raaglike_suite(const Complex& cx, const VerifyConfig& cfg);

struct VerifyReport {
  std::vector<SuiteResult> suites;
  bool ok() const;
};

// All suites; the element-dependent ones are skipped when g is elliptic.
VerifyReport verify_all(const Complex& cx, const Automorphism& g, const VerifyConfig& cfg);
nlohmann::json to_json(const VerifyReport& r);

}  // namespace cubical
