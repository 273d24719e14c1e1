#include <atomic>
#include <cstdio>
#include <sstream>
#include <string>
#include <thread>

#include "schottky/cli.hpp"

namespace schottky::cli {

namespace {

[[noreturn]] void bad_family(const std::string& what) { throw StructuralError("malformed family: " + what); }

Rational axis_bound(const json& e, const char* key) {
  if (!e.contains(key)) bad_family(std::string("axis is missing \"") + key + "\"");
  const auto& v = e[key];
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(Integer(v.dump()));
  } catch (const Error&) {
  }
  bad_family(std::string("axis bound \"") + key + "\" must be an integer or \"p/q\" string");
}

std::string decimal(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

ScanRow evaluate(const Family& f, const std::vector<Rational>& params, const ScanOptions& opt) {
  ScanRow row;
  row.params = params;
  try {
    if (f.kind == MatrixKind::rational) {
      RatMatrix m = f.pencil[0].rational;
      for (std::size_t a = 0; a < params.size(); ++a) {
        const auto& term = f.pencil[a + 1].rational;
        for (std::size_t i = 0; i < m.rows(); ++i) {
          for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) += params[a] * term(i, j);
        }
      }
      if (!is_positive_definite(m)) {
        row.status = "not_positive_definite";
        return row;
      }
      auto d = decide_tropical(QuadForm(m));
      row.status = "ok";
      row.verdict = to_string(d.verdict);
      row.f_vector = d.f_vector;
      row.entry = d.matched_entry;
    } else {
      CMatrix m = f.pencil[0].complex;
      for (std::size_t a = 0; a < params.size(); ++a) m += params[a].get_d() * f.pencil[a + 1].complex;
      std::optional<RiemannMatrix> tau;
      try {
        tau.emplace(m);
      } catch (const DomainError&) {
        row.status = "not_positive_definite";
        return row;
      }
      auto d = decide_classical(*tau, opt.eps, opt.threshold);
      row.status = "ok";
      row.verdict = to_string(d.verdict);
      row.relative = d.relative;
    }
  } catch (const Error& e) {
    row.status = "error";
    row.detail = e.what();
  }
  return row;
}

}  // namespace

Rational GridAxis::at(std::size_t k) const {
  if (points <= 1) return lo;
  Rational r = lo + (hi - lo) * Rational(static_cast<unsigned long>(k)) / Rational(static_cast<unsigned long>(points - 1));
  r.canonicalize();
  return r;
}

Family parse_family(const json& j) {
  if (!j.is_object()) bad_family("expected a JSON object");
  if (j.contains("schema") && j["schema"] != kFamilySchema) {
    throw StructuralError("unsupported schema " + j["schema"].dump() + ", expected \"" + kFamilySchema + "\"");
  }
  Family f;
  if (!j.contains("kind") || !j["kind"].is_string()) bad_family("missing \"kind\"");
  const auto kind = j["kind"].get<std::string>();
  if (kind == "rational") f.kind = MatrixKind::rational;
  else if (kind == "complex") f.kind = MatrixKind::complex;
  else bad_family("unknown kind \"" + kind + "\"");

  if (!j.contains("axes") || !j["axes"].is_array() || j["axes"].empty() || j["axes"].size() > 2) {
    bad_family("\"axes\" must list one or two parameters");
  }
  for (const auto& a : j["axes"]) {
    if (!a.is_object()) bad_family("each axis must be an object");
    GridAxis axis;
    axis.name = a.value("name", std::string("p") + std::to_string(f.axes.size() + 1));
    axis.lo = axis_bound(a, "lo");
    axis.hi = axis_bound(a, "hi");
    if (!a.contains("points") || !a["points"].is_number_integer() || a["points"].get<std::int64_t>() <= 0) {
      bad_family("axis \"" + axis.name + "\" needs a positive integer \"points\"");
    }
    axis.points = a["points"].get<std::size_t>();
    f.axes.push_back(std::move(axis));
  }

  if (!j.contains("pencil") || !j["pencil"].is_array() || j["pencil"].size() != f.axes.size() + 1) {
    bad_family("\"pencil\" must hold one matrix per axis plus the constant term");
  }
  for (const auto& rows : j["pencil"]) {
    json wrapped = {{"kind", kind}, {"matrix", rows}};
    f.pencil.push_back(parse_matrix(wrapped));
  }
  for (std::size_t k = 1; k < f.pencil.size(); ++k) {
    bool same = f.kind == MatrixKind::rational ? f.pencil[k].rational.rows() == f.pencil[0].rational.rows()
                                               : f.pencil[k].complex.rows() == f.pencil[0].complex.rows();
    if (!same) bad_family("pencil matrices differ in size");
  }
  for (const auto& m : f.pencil) {
    bool symmetric = f.kind == MatrixKind::rational ? m.rational.is_symmetric()
                                                    : (m.complex - m.complex.transpose()).norm() <= 1e-12 * (1 + m.complex.norm());
    if (!symmetric) throw StructuralError("family matrix is not symmetric");
  }
  return f;
}

Family parse_family_text(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw StructuralError(std::string("malformed JSON: ") + e.what());
  }
  return parse_family(j);
}

std::vector<ScanRow> run_scan(const Family& family, const ScanOptions& options) {
  std::vector<std::vector<Rational>> points;
  const std::size_t n0 = family.axes[0].points;
  const std::size_t n1 = family.axes.size() > 1 ? family.axes[1].points : 1;
  for (std::size_t a = 0; a < n0; ++a) {
    for (std::size_t b = 0; b < n1; ++b) {
      std::vector<Rational> p{family.axes[0].at(a)};
      if (family.axes.size() > 1) p.push_back(family.axes[1].at(b));
      points.push_back(std::move(p));
    }
  }
  std::vector<ScanRow> rows(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < points.size(); k = next++) rows[k] = evaluate(family, points[k], options);
  };
  const unsigned threads = std::max(1U, std::min<unsigned>(options.threads, static_cast<unsigned>(points.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

std::string scan_csv(const Family& family, const std::vector<ScanRow>& rows) {
  const bool tropical = family.kind == MatrixKind::rational;
  std::ostringstream out;
  for (const auto& a : family.axes) out << csv_field(a.name) << ',';
  out << "status,verdict," << (tropical ? "f_vector,catalog_entry" : "relative") << ",detail\n";
  for (const auto& r : rows) {
    for (const auto& p : r.params) out << decimal(p.get_d()) << ',';
    out << r.status << ',' << r.verdict << ',';
    if (tropical) {
      if (r.f_vector) {
        const auto& c = r.f_vector->counts;
        out << c[0] << ' ' << c[1] << ' ' << c[2] << ' ' << c[3];
      }
      out << ',';
      if (r.entry) out << *r.entry;
    } else if (r.relative) {
      out << decimal(*r.relative);
    }
    out << ',' << csv_field(r.detail) << '\n';
  }
  return out.str();
}

}  // namespace schottky::cli
