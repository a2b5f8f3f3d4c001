// cubescl: characteristic sets, taut embeddings and scl lower bounds for
// right-angled Artin groups and Euclidean cube-complex fixtures.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "cubical/verify.hpp"

using namespace cubical;

namespace {

struct RunConfig {
  std::string command;
  std::string graph;
  std::string fixture;
  std::string word;
  int window = 0;
  int radius = 0;
  int max_power = 8;
  unsigned seed = 1;
  bool strict = false;
  std::string svg;
  std::string projection = "1,2";
  std::string out;

  nlohmann::json to_json() const {
    nlohmann::json j{{"command", command}, {"window", window},   {"radius", radius}, {"maxPower", max_power},
                     {"seed", seed},       {"strict", strict}};
    if (!fixture.empty()) j["fixture"] = fixture;
    else j["graph"] = graph, j["word"] = word;
    return j;
  }
};

struct Input {
  std::unique_ptr<Complex> cx;
  Automorphism g;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Input load(const RunConfig& cfg) {
  Input in;
  if (!cfg.fixture.empty()) {
    EuclideanComplex e = [&] {
      if (!std::filesystem::exists(cfg.fixture)) return EuclideanComplex::named(cfg.fixture);
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(read_file(cfg.fixture));
      } catch (const nlohmann::json::parse_error& err) {
        throw ParseError("fixture JSON: " + std::string(err.what()));
      }
      return EuclideanComplex::from_json(j);
    }();
    in.g = e.generator();
    in.cx = std::make_unique<EuclideanComplex>(std::move(e));
    return in;
  }
  DefiningGraph g = std::filesystem::exists(cfg.graph) ? DefiningGraph::from_json_text(read_file(cfg.graph))
                                                       : DefiningGraph::named(cfg.graph);
  auto raag = std::make_unique<RaagComplex>(std::move(g));
  in.g = raag->element(parse_word(raag->graph(), cfg.word));
  in.cx = std::move(raag);
  return in;
}

AnalyzeOptions analyze_options(const RunConfig& cfg) {
  AnalyzeOptions a;
  a.radius = cfg.window;
  a.max_power = cfg.max_power;
  return a;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw ParseError("cannot write " + cfg.out);
  f << text;
}

int cmd_analyze(const RunConfig& cfg) {
  Input in = load(cfg);
  nlohmann::json j;
  j["config"] = cfg.to_json();
  auto c = classify(*in.cx, in.g);
  if (!c.hyperbolic) {
    j["classification"] = "elliptic";
    j["notice"] = in.g == in.cx->identity() ? "identity element: nothing to analyse" : "element is elliptic";
    emit(cfg, j.dump(2) + "\n");
    return 0;
  }
  CharSetAnalysis a = analyze(*in.cx, in.g, analyze_options(cfg));
  j["classification"] = "hyperbolic";
  j["ell"] = c.axis.ell;
  j["k"] = a.k;
  j["d"] = a.d;
  j["windowCertified"] = a.window_certified;
  auto& anti = j["antichain"] = nlohmann::json::array();
  for (const auto& h : a.antichain) anti.push_back(in.cx->describe_json(h));
  auto& labels = j["fundamentalLabels"] = nlohmann::json::array();
  for (const auto& h : a.axis.fundamental) labels.push_back(in.cx->label_name(in.cx->label(h)));
  j["analysis"] = to_json(*in.cx, a);
  emit(cfg, j.dump(2) + "\n");
  return 0;
}

int cmd_embed(const RunConfig& cfg) {
  Input in = load(cfg);
  if (!classify(*in.cx, in.g).hyperbolic) throw PreconditionError("embed needs a hyperbolic element");
  CharSetAnalysis a = analyze(*in.cx, in.g, analyze_options(cfg));
  TautEmbedding e = build_embedding(*in.cx, a);
  emit(cfg, "# cubescl " + cfg.to_json().dump() + "\n" + to_tsv(*in.cx, e));
  if (!cfg.svg.empty()) {
    int i = 0, j = 0;
    char comma = 0;
    std::istringstream ps(cfg.projection);
    if (!(ps >> i >> comma >> j) || comma != ',') throw ParseError("--projection expects i,j");
    if (i < 1 || j < 1 || i > e.d || j > e.d)
      throw PreconditionError("projection coordinates must lie in 1.." + std::to_string(e.d));
    std::ofstream f(cfg.svg);
    if (!f) throw ParseError("cannot write " + cfg.svg);
    f << to_svg(*in.cx, e, i - 1, j - 1);
  }
  return 0;
}

int cmd_scl(const RunConfig& cfg) {
  Input in = load(cfg);
  SclOptions opt;
  opt.analyze = analyze_options(cfg);
  opt.max_n = cfg.max_power;
  opt.witness_radius = cfg.radius;
  if (cfg.radius > 0) opt.method = CopyMethod::Bounded;
  SclCertificate c = scl_bound(*in.cx, in.g, opt);
  nlohmann::json j = to_json(*in.cx, c);
  j["config"] = cfg.to_json();
  j["copyMethod"] = opt.method == CopyMethod::Exact ? "exact" : "bounded";
  emit(cfg, j.dump(2) + "\n");
  return cfg.strict && c.rigor != Rigor::Certified ? 1 : 0;
}

int cmd_verify(const RunConfig& cfg) {
  Input in = load(cfg);
  VerifyConfig v;
  v.seed = cfg.seed;
  v.max_n = cfg.max_power;
  v.analyze = analyze_options(cfg);
  if (cfg.radius > 0) v.radius = cfg.radius;
  VerifyReport rep = verify_all(*in.cx, in.g, v);
  nlohmann::json j = to_json(rep);
  j["config"] = cfg.to_json();
  emit(cfg, j.dump(2) + "\n");
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Characteristic sets, taut embeddings and scl lower bounds for cube complex actions"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto common = [&](CLI::App* sub) {
    sub->add_option("-g,--graph", cfg.graph, "named graph (pentagon, F2, Z2, cycleN, pathN, ...) or JSON file")
        ->default_val("pentagon");
    sub->add_option("-f,--fixture", cfg.fixture, "Euclidean fixture name or JSON file; overrides --graph");
    sub->add_option("-w,--word", cfg.word, "element of the RAAG, e.g. abcde or aB");
    sub->add_option("--window", cfg.window, "initial window radius K (0: automatic)");
    sub->add_option("--max-power", cfg.max_power, "largest power of g considered")->default_val(8);
    sub->add_option("-o,--out", cfg.out, "write the main output here instead of stdout");
  };
  auto* analyze_cmd = app.add_subcommand("analyze", "classify g and compute its characteristic-set dimension");
  auto* embed_cmd = app.add_subcommand("embed", "taut embedding coordinates as TSV, optional SVG projection");
  auto* scl_cmd = app.add_subcommand("scl", "scl lower-bound certificate");
  auto* verify_cmd = app.add_subcommand("verify", "run every verification suite");
  for (auto* sub : {analyze_cmd, embed_cmd, scl_cmd, verify_cmd}) common(sub);
  embed_cmd->add_option("--svg", cfg.svg, "SVG output path");
  embed_cmd->add_option("--projection", cfg.projection, "coordinates i,j of the SVG projection")->default_val("1,2");
  scl_cmd->add_option("--radius", cfg.radius, "use the bounded witness search with this radius");
  scl_cmd->add_flag("--strict", cfg.strict, "exit 1 unless the certificate is Certified");
  verify_cmd->add_option("--radius", cfg.radius, "sampling ball radius");
  verify_cmd->add_option("--seed", cfg.seed, "random seed")->default_val(1);

  CLI11_PARSE(app, argc, argv);
  cfg.command = app.get_subcommands().front()->get_name();
  try {
    if (cfg.command == "analyze") return cmd_analyze(cfg);
    if (cfg.command == "embed") return cmd_embed(cfg);
    if (cfg.command == "scl") return cmd_scl(cfg);
    return cmd_verify(cfg);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const TheoremContradiction& e) {
    std::cerr << "theorem contradiction: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 3;
  }
}
