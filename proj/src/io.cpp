#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>

#include "schottky/cli.hpp"

namespace schottky::cli {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw StructuralError("malformed matrix: " + what); }

Rational parse_rational_entry(const json& e) {
  if (e.is_number_integer()) {
    if (e.is_number_unsigned()) return Rational(Integer(std::to_string(e.get<std::uint64_t>())));
    return Rational(Integer(std::to_string(e.get<std::int64_t>())));
  }
  if (e.is_string()) {
    try {
      return parse_rational(e.get<std::string>());
    } catch (const Error&) {
      malformed("cannot parse rational \"" + e.get<std::string>() + "\"");
    }
  }
  malformed("rational entries must be integers or \"p/q\" strings, got " + e.dump());
}

Complex parse_complex_entry(const json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  malformed("complex entries must be [re, im] pairs, got " + e.dump());
}

MatrixKind parse_kind(const json& j) {
  if (!j.contains("kind") || !j["kind"].is_string()) malformed("missing \"kind\"");
  auto k = j["kind"].get<std::string>();
  if (k == "rational") return MatrixKind::rational;
  if (k == "complex") return MatrixKind::complex;
  malformed("unknown kind \"" + k + "\"");
}

MatrixInput parse_rows(const json& rows, MatrixKind kind) {
  if (!rows.is_array() || rows.empty()) malformed("\"matrix\" must be a nonempty array of rows");
  const std::size_t n = rows.size();
  MatrixInput out;
  out.kind = kind;
  if (kind == MatrixKind::rational) out.rational = RatMatrix(n, n);
  else out.complex = CMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || row.size() != n) {
      malformed("row " + std::to_string(i + 1) + " does not have " + std::to_string(n) + " entries");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (kind == MatrixKind::rational) {
        out.rational(i, j) = parse_rational_entry(row[j]);
      } else {
        out.complex(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = parse_complex_entry(row[j]);
      }
    }
  }
  return out;
}

void check_schema(const json& j, const char* expected) {
  if (!j.is_object()) throw StructuralError(std::string("malformed input: expected a JSON object"));
  if (j.contains("schema") && j["schema"] != expected) {
    throw StructuralError("unsupported schema " + j["schema"].dump() + ", expected \"" + expected + "\"");
  }
}

json parse_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw StructuralError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

MatrixInput parse_matrix(const json& j) {
  check_schema(j, kMatrixSchema);
  auto kind = parse_kind(j);
  if (!j.contains("matrix")) malformed("missing \"matrix\"");
  return parse_rows(j["matrix"], kind);
}

MatrixInput parse_matrix_text(std::string_view text) { return parse_matrix(parse_text(text)); }

json matrix_to_json(const RatMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"schema", kMatrixSchema}, {"kind", "rational"}, {"matrix", rows}};
}

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"schema", kMatrixSchema}, {"kind", "complex"}, {"matrix", rows}};
}

QuadForm to_quad_form(const MatrixInput& in) {
  if (in.kind != MatrixKind::rational) {
    throw StructuralError("tropical input must have kind \"rational\"");
  }
  if (!in.rational.is_symmetric()) throw StructuralError("matrix is not symmetric");
  return QuadForm(in.rational);
}

RiemannMatrix to_riemann_matrix(const MatrixInput& in) {
  if (in.kind != MatrixKind::complex) {
    throw StructuralError("classical input must have kind \"complex\"");
  }
  return RiemannMatrix(in.complex);
}

std::string fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json to_json(const Rational& r) { return to_string(r); }

json to_json(Complex c) { return json::array({c.real(), c.imag()}); }

json to_json(const FVector& f) { return json(f.counts); }

json to_json(const TropDecision& d) {
  json negative = json::array();
  for (const auto& c : d.negative) {
    negative.push_back({{"v", label_to_string(c.v, 4)},
                        {"vartheta", to_json(c.vartheta)},
                        {"edge_scaled", to_json(c.edge_scaled)}});
  }
  json entry = nullptr;
  if (d.matched_entry) {
    const auto& e = catalog().at(static_cast<std::size_t>(*d.matched_entry - 1));
    entry = {{"index", e.index}, {"name", e.name}};
  }
  return {{"verdict", to_string(d.verdict)},
          {"f_vector", to_json(d.f_vector)},
          {"catalog_entry", entry},
          {"theta_nonnegative", d.theta_nonnegative},
          {"negative_vartheta", negative},
          {"diagnostics", d.diagnostics}};
}

json to_json(const TropRecovery& r) {
  json edges = json::array();
  const auto& g = r.graph;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto& edge = g.edges()[e];
    edges.push_back({{"tail", edge.tail},
                     {"head", edge.head},
                     {"length", to_json(edge.length)},
                     {"label", label_to_string(r.label_of_edge.at(e), 4)}});
  }
  json graph = {{"vertices", g.num_vertices()}, {"weights", g.weights()}, {"edges", edges}};
  json out = {{"verdict", "jacobian"},
              {"catalog_entry", {{"index", r.entry->index}, {"name", r.entry->name}}},
              {"graph", graph},
              {"dot", to_dot(g)}};
  if (r.basis_change) {
    json rows = json::array();
    for (std::size_t i = 0; i < r.basis_change->rows(); ++i) rows.push_back(r.basis_change->row(i));
    out["basis_change"] = rows;
    json cycles = json::array();
    for (std::size_t i = 0; i < r.entry->basis.matrix.rows(); ++i) cycles.push_back(r.entry->basis.matrix.row(i));
    out["cycle_basis"] = cycles;
  }
  if (r.solved_lengths) {
    json ls = json::array();
    for (const auto& l : *r.solved_lengths) ls.push_back(to_json(l));
    out["solved_lengths"] = ls;
  }
  return out;
}

json to_json(const ClassicalDecision& d) {
  const auto& f = d.form;
  json pis = json::array();
  for (const auto& p : f.pi) pis.push_back(to_json(p));
  json form = {{"log_unit", f.log_unit},
               {"value", to_json(f.value)},
               {"sum_of_squares", to_json(f.sum_of_squares)},
               {"twice_products", to_json(f.twice_products)},
               {"pi", pis},
               {"log_abs_pi", f.log_abs_pi},
               {"scale", f.scale}};
  return {{"verdict", to_string(d.verdict)}, {"relative", d.relative}, {"threshold", d.threshold}, {"form", form}};
}

namespace {

json vector_to_json(const CVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

json real_vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json monomials_to_json(const std::vector<std::pair<std::string, Complex>>& terms) {
  json out = json::object();
  for (const auto& [key, c] : terms) out[key] = to_json(c);
  return out;
}

}  // namespace

json to_json(const CanonicalCurve& c) {
  const auto& p = c.point;
  json f2 = json::array();
  for (Eigen::Index i = 0; i < c.f2.rows(); ++i) f2.push_back(vector_to_json(c.f2.row(i).transpose()));
  return {{"point",
           {{"z", vector_to_json(p.z)},
            {"u", real_vector_to_json(p.u)},
            {"v", real_vector_to_json(p.v)},
            {"attempts", p.attempts},
            {"newton_steps", p.newton_steps}}},
          {"residuals", {{"value", p.value_residual}, {"gradient", p.gradient_residual}}},
          {"f0", to_json(c.f0)},
          {"f1", vector_to_json(c.f1)},
          {"f2", f2},
          {"quadric", monomials_to_json(c.quadric_monomials())},
          {"cubic", monomials_to_json(c.cubic_monomials())}};
}

json to_json(const std::vector<TritangentPlane>& planes) {
  json out = json::array();
  for (const auto& p : planes) {
    out.push_back({{"characteristic", p.m.to_string()},
                   {"coefficients", vector_to_json(p.coefficients)},
                   {"gradient_norm", p.gradient_norm}});
  }
  return out;
}

json to_json(const LemmaReport& r) {
  return {{"subgroups_total", r.subgroups_total},
          {"subgroups_examined", r.subgroups_examined},
          {"matching_subgroups", r.matching_subgroups},
          {"azygetic_triples", r.azygetic_triples},
          {"property_two_cases", r.property_two_cases},
          {"counterexamples", r.counterexamples},
          {"complete", r.complete},
          {"resume_token", r.resume_token}};
}

json make_report(const std::string& command, std::string_view input, const json& config, json result) {
  return {{"schema", kReportSchema},
          {"version", kVersion},
          {"command", command},
          {"input_hash", fnv1a64(input)},
          {"config", config},
          {"result", std::move(result)}};
}

unsigned thread_count_from_env() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("SCHOTTKY_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) n = static_cast<unsigned>(v);
  }
  return n;
}

}  // namespace schottky::cli
