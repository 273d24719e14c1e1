#pragma once

// File formats, JSON reports, parameter scans and the self test behind the
// command line tool and the Python module.

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "schottky/schottky_trop.hpp"
#include "schottky/theta_classical.hpp"

namespace schottky::cli {

using json = nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kMatrixSchema = "schottky.matrix/1";
inline constexpr const char* kFamilySchema = "schottky.family/1";
inline constexpr const char* kReportSchema = "schottky.report/1";

// Exit codes of the command line tool.
inline constexpr int kExitJacobian = 0;
inline constexpr int kExitNotJacobian = 1;
inline constexpr int kExitUndecided = 2;

enum class MatrixKind { rational, complex };

struct MatrixInput {
  MatrixKind kind = MatrixKind::rational;
  RatMatrix rational;
  CMatrix complex;
};

// {"schema": ..., "kind": "rational", "matrix": [["17", "5/2", ...], ...]}
// or "kind": "complex" with [re, im] entries. Throws StructuralError for
// malformed input.
MatrixInput parse_matrix(const json& j);
MatrixInput parse_matrix_text(std::string_view text);
json matrix_to_json(const RatMatrix& m);
json matrix_to_json(const CMatrix& m);

// Throws StructuralError ("not symmetric") or NotPositiveDefinite.
QuadForm to_quad_form(const MatrixInput& in);
// Throws StructuralError or DomainError ("imaginary part is not positive definite").
RiemannMatrix to_riemann_matrix(const MatrixInput& in);

// 64-bit FNV-1a as 16 lowercase hex digits.
std::string fnv1a64(std::string_view bytes);

json to_json(const Rational& r);
json to_json(Complex c);
json to_json(const FVector& f);
json to_json(const TropDecision& d);
json to_json(const TropRecovery& r);
json to_json(const ClassicalDecision& d);
json to_json(const CanonicalCurve& c);
json to_json(const std::vector<TritangentPlane>& planes);
json to_json(const LemmaReport& r);

// Wraps a result with schema, version, command, input hash and config.
json make_report(const std::string& command, std::string_view input, const json& config, json result);

// Parallelism cap from SCHOTTKY_THREADS, at least 1.
unsigned thread_count_from_env();

struct GridAxis {
  std::string name;
  Rational lo, hi;
  std::size_t points = 1;  // grid points including both ends

  Rational at(std::size_t k) const;
};

// A0 + s A1 (+ t A2) over a rectangular grid.
struct Family {
  MatrixKind kind = MatrixKind::rational;
  std::vector<MatrixInput> pencil;
  std::vector<GridAxis> axes;  // one or two
};

Family parse_family(const json& j);
Family parse_family_text(std::string_view text);

struct ScanRow {
  std::vector<Rational> params;
  std::string status;  // "ok", "not_positive_definite", "error"
  std::string verdict;
  std::optional<double> relative;
  std::optional<FVector> f_vector;
  std::optional<int> entry;
  std::string detail;
};

struct ScanOptions {
  double eps = kDefaultThetaAccuracy;
  double threshold = kDefaultDecisionThreshold;
  unsigned threads = 1;
};

// Rows in grid order (first axis slowest) regardless of thread count.
std::vector<ScanRow> run_scan(const Family& family, const ScanOptions& options);
std::string scan_csv(const Family& family, const std::vector<ScanRow>& rows);

struct SelfTestCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<SelfTestCheck> run_selftest(bool slow, unsigned threads = 1);
json to_json(const std::vector<SelfTestCheck>& checks);

}  // namespace schottky::cli
