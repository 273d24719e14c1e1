// schottky: decide and recover genus 4 Jacobians from tropical or classical
// Riemann matrices.
//
// Exit codes: 0 Jacobian (or success), 1 not a Jacobian (or a failed self
// test), 2 undecided, invalid input or unmet recovery precondition.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "schottky/cli.hpp"

namespace fs = std::filesystem;
using namespace schottky;
using namespace schottky::cli;

namespace {

struct Options {
  bool tropical = false;
  bool classical = false;
  std::string input;
  double eps = kDefaultThetaAccuracy;
  double threshold = kDefaultDecisionThreshold;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string out_dir;
  bool basis = false;
  int restarts = 50;
  double value_tolerance = 1e-7;
  bool slow = false;
  std::size_t budget = 0;
  std::string resume;
  unsigned threads = 0;
};

class Failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const Options& o, const std::string& name, const std::string& content) {
  if (o.out_dir.empty()) return;
  fs::create_directories(o.out_dir);
  auto path = fs::path(o.out_dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure("cannot write " + path.string());
  out << content;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json base_config(const Options& o) {
  return {{"mode", o.tropical ? "tropical" : "classical"},
          {"eps", o.eps},
          {"threshold", o.threshold},
          {"seed", o.seed},
          {"format", o.format}};
}

int verdict_code(Verdict v) {
  switch (v) {
    case Verdict::jacobian: return kExitJacobian;
    case Verdict::not_jacobian: return kExitNotJacobian;
    default: return kExitUndecided;
  }
}

void check_tolerances(const Options& o) {
  if (!(o.eps > 0) || !(o.threshold > 0) || !(o.value_tolerance > 0)) {
    throw Failure("tolerances must be positive");
  }
}

int cmd_decide(const Options& o) {
  check_tolerances(o);
  if (o.format != "json") throw Failure("decide supports --format json only");
  const auto text = read_file(o.input);
  auto input = parse_matrix_text(text);
  json result;
  int code;
  if (o.tropical) {
    auto d = decide_tropical(to_quad_form(input));
    result = to_json(d);
    code = verdict_code(d.verdict);
  } else {
    auto d = decide_classical(to_riemann_matrix(input), o.eps, o.threshold);
    result = to_json(d);
    code = verdict_code(d.verdict);
  }
  auto report = dump(make_report("decide", text, base_config(o), result));
  write_file(o, "report.json", report);
  std::cout << report;
  return code;
}

int recover_tropical_cmd(const Options& o, const std::string& text, const MatrixInput& input) {
  if (o.format != "json" && o.format != "dot") throw Failure("recover --tropical supports --format json or dot");
  auto q = to_quad_form(input);
  auto r = [&] {
    try {
      return recover_tropical(q, o.basis);
    } catch (const NotJacobianError& e) {
      throw Failure(std::string("theta matroid test failed: ") + e.what());
    } catch (const InconsistencyError& e) {
      throw Failure(std::string("cographic matching failed: ") + e.what());
    }
  }();
  auto config = base_config(o);
  config["basis"] = o.basis;
  auto result = to_json(r);
  auto report = dump(make_report("recover", text, config, result));
  auto dot = to_dot(r.graph);
  write_file(o, "graph.json", report);
  write_file(o, "graph.dot", dot);
  std::cout << (o.format == "dot" ? dot : report);
  return kExitJacobian;
}

int recover_classical_cmd(const Options& o, const std::string& text, const MatrixInput& input) {
  if (o.format != "json") throw Failure("recover --classical supports --format json only");
  auto tau = to_riemann_matrix(input);
  auto d = decide_classical(tau, o.eps, o.threshold);
  if (d.verdict != Verdict::jacobian) {
    std::ostringstream msg;
    msg << "Schottky-Igusa test failed: relative value " << d.relative << " is not below " << o.threshold;
    throw Failure(msg.str());
  }
  SingularityOptions so;
  so.seed = o.seed;
  so.max_restarts = o.restarts;
  so.value_tolerance = o.value_tolerance;
  CanonicalCurve curve;
  try {
    curve = canonical_curve(tau, so);
  } catch (const NoSingularityFound& e) {
    throw Failure(std::string("singular point search failed: ") + e.what());
  }
  auto config = base_config(o);
  config["restarts"] = o.restarts;
  config["value_tolerance"] = o.value_tolerance;
  auto curve_report = dump(make_report("recover", text, config, to_json(curve)));
  auto planes = dump(make_report("tritangents", text, config, to_json(tritangent_planes(tau, o.eps))));
  write_file(o, "curve.json", curve_report);
  write_file(o, "tritangents.json", planes);
  std::cout << curve_report;
  return kExitJacobian;
}

int cmd_recover(const Options& o) {
  check_tolerances(o);
  const auto text = read_file(o.input);
  auto input = parse_matrix_text(text);
  return o.tropical ? recover_tropical_cmd(o, text, input) : recover_classical_cmd(o, text, input);
}

int cmd_scan(const Options& o) {
  check_tolerances(o);
  const auto text = read_file(o.input);
  auto family = parse_family_text(text);
  ScanOptions so;
  so.eps = o.eps;
  so.threshold = o.threshold;
  so.threads = o.threads ? o.threads : thread_count_from_env();
  auto rows = run_scan(family, so);
  std::string body;
  if (o.format == "csv") {
    body = scan_csv(family, rows);
    write_file(o, "scan.csv", body);
  } else if (o.format == "json") {
    json list = json::array();
    for (const auto& r : rows) {
      json params = json::array();
      for (const auto& p : r.params) params.push_back(to_json(p));
      json row = {{"params", params}, {"status", r.status}, {"verdict", r.verdict}, {"detail", r.detail}};
      if (r.relative) row["relative"] = *r.relative;
      if (r.f_vector) row["f_vector"] = to_json(*r.f_vector);
      if (r.entry) row["catalog_entry"] = *r.entry;
      list.push_back(std::move(row));
    }
    auto config = base_config(o);
    config["mode"] = family.kind == MatrixKind::rational ? "tropical" : "classical";
    body = dump(make_report("scan", text, config, {{"rows", list}}));
    write_file(o, "scan.json", body);
  } else {
    throw Failure("scan supports --format csv or json");
  }
  std::cout << body;
  return 0;
}

int cmd_selftest(const Options& o) {
  auto checks = run_selftest(o.slow, o.threads ? o.threads : thread_count_from_env());
  json config = {{"slow", o.slow}, {"seed", o.seed}};
  auto result = to_json(checks);
  auto report = dump(make_report("selftest", "", config, result));
  write_file(o, "selftest.json", report);
  std::cout << report;
  return result["passed"].get<bool>() ? 0 : 1;
}

int cmd_lemma(const Options& o) {
  auto r = verify_azygetic_lemma(o.budget, o.resume, o.threads ? o.threads : thread_count_from_env());
  json config = {{"budget", o.budget}, {"resume", o.resume}, {"seed", o.seed}};
  auto report = dump(make_report("lemma", o.resume, config, to_json(r)));
  write_file(o, "lemma.json", report);
  std::cout << report;
  if (!r.counterexamples.empty()) return 1;
  return r.complete ? 0 : kExitUndecided;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--eps", o.eps, "Theta series truncation accuracy")->capture_default_str();
  cmd->add_option("--threshold", o.threshold, "Decision threshold for |form|/scale")->capture_default_str();
  cmd->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  cmd->add_option("--format", o.format, "Output format: json, dot or csv");
  cmd->add_option("--out", o.out_dir, "Directory for output files");
}

void add_mode(CLI::App* cmd, Options& o) {
  auto* t = cmd->add_flag("--tropical", o.tropical, "Input is a rational positive definite matrix");
  auto* c = cmd->add_flag("--classical", o.classical, "Input is a complex Riemann matrix");
  t->excludes(c);
  c->excludes(t);
  cmd->add_option("file", o.input, "Matrix file")->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide and recover genus 4 Jacobians from tropical or classical Riemann matrices"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Options o;

  auto* decide = app.add_subcommand("decide", "Decide whether a matrix is a Riemann matrix of a curve");
  add_mode(decide, o);
  add_common(decide, o);

  auto* recover = app.add_subcommand("recover", "Recover the metric graph or canonical curve");
  add_mode(recover, o);
  add_common(recover, o);
  recover->add_flag("--basis", o.basis, "Also solve for the basis change X");
  recover->add_option("--restarts", o.restarts, "Newton restarts for the singular point")->capture_default_str();
  recover->add_option("--value-tolerance", o.value_tolerance, "Accepted relative |theta| at the singular point")
      ->capture_default_str();

  auto* scan = app.add_subcommand("scan", "Evaluate a matrix pencil on a parameter grid");
  scan->add_option("file", o.input, "Family file")->required();
  add_common(scan, o);
  scan->add_option("--threads", o.threads, "Worker threads (default from SCHOTTKY_THREADS)");

  auto* selftest = app.add_subcommand("selftest", "Run the built-in consistency checks");
  selftest->add_flag("--slow", o.slow, "Include the exhaustive coset lemma run and larger samples");
  selftest->add_option("--out", o.out_dir, "Directory for output files");
  selftest->add_option("--threads", o.threads, "Worker threads (default from SCHOTTKY_THREADS)");

  auto* lemma = app.add_subcommand("lemma", "Exhaustive check of the coset lemma over rank 3 subgroups");
  lemma->add_option("--budget", o.budget, "Subgroups to examine in this run (0 = all)");
  lemma->add_option("--resume", o.resume, "Resume token from an earlier partial run");
  lemma->add_option("--threads", o.threads, "Worker threads (default from SCHOTTKY_THREADS)");
  lemma->add_option("--out", o.out_dir, "Directory for output files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUndecided;
  }
  if (scan->parsed() && scan->count("--format") == 0) o.format = "csv";

  try {
    if ((decide->parsed() || recover->parsed()) && !o.tropical && !o.classical) {
      throw Failure("one of --tropical or --classical is required");
    }
    if (decide->parsed()) return cmd_decide(o);
    if (recover->parsed()) return cmd_recover(o);
    if (scan->parsed()) return cmd_scan(o);
    if (selftest->parsed()) return cmd_selftest(o);
    if (lemma->parsed()) return cmd_lemma(o);
  } catch (const std::exception& e) {
    std::cerr << "schottky: " << e.what() << '\n';
  }
  return kExitUndecided;
}
