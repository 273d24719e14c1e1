#include "schottky/exact.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>

namespace schottky {

namespace {

void require_symmetric(const RatMatrix& m) {
  if (!m.is_square()) {
    throw StructuralError("matrix is " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()) + ", expected square");
  }
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      if (m(i, j) != m(j, i)) {
        throw StructuralError("matrix is not symmetric at (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
      }
    }
  }
}

// Returns the order of the first non-positive leading minor, or 0.
std::size_t ldl_into(const RatMatrix& m, LdlFactor& out) {
  const std::size_t n = m.rows();
  out.lower = RatMatrix::identity(n);
  out.diag.assign(n, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    Rational d = m(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= out.lower(j, k) * out.lower(j, k) * out.diag[k];
    if (d <= 0) return j + 1;
    out.diag[j] = d;
    for (std::size_t i = j + 1; i < n; ++i) {
      Rational s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= out.lower(i, k) * out.lower(j, k) * out.diag[k];
      out.lower(i, j) = s / d;
    }
  }
  return 0;
}

Integer floor_of(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Integer ceil_of(const Rational& r) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

// Fincke-Pohst recursion over the LDL factor, coordinates chosen from the
// last one down.
void enumerate_into(const QuadForm& q, std::span<const Rational> center,
                    const Rational& bound, std::vector<IntVector>& out) {
  const std::size_t g = q.dim();
  if (center.size() != g) throw StructuralError("center has wrong dimension");
  if (bound < 0) return;
  const auto& L = q.ldl().lower;
  const auto& D = q.ldl().diag;
  IntVector v(g, 0);

  std::function<void(std::size_t, const Rational&)> level =
      [&](std::size_t j, const Rational& remaining) {
        Rational s = -center[j];
        for (std::size_t i = j + 1; i < g; ++i) {
          s += L(i, j) * (Rational(static_cast<long>(v[i])) - center[i]);
        }
        Rational r = remaining / D[j];
        Integer k;
        Integer fl = floor_of(r);
        mpz_sqrt(k.get_mpz_t(), fl.get_mpz_t());
        // sqrt(r) < k + 1
        Integer lo = ceil_of(-s - Rational(k + 1));
        Integer hi = floor_of(-s + Rational(k + 1));
        for (Integer x = lo; x <= hi; ++x) {
          Rational t = Rational(x) + s;
          Rational t2 = t * t;
          if (t2 > r) continue;
          v[j] = x.get_si();
          if (j == 0) {
            out.push_back(v);
          } else {
            level(j - 1, remaining - D[j] * t2);
          }
        }
        v[j] = 0;
      };
  if (g == 0) {
    out.push_back({});
    return;
  }
  level(g - 1, bound);
}

}  // namespace

bool is_positive_definite(const RatMatrix& m) {
  require_symmetric(m);
  LdlFactor f;
  return ldl_into(m, f) == 0;
}

LdlFactor ldl_decompose(const RatMatrix& m) {
  require_symmetric(m);
  LdlFactor f;
  if (std::size_t k = ldl_into(m, f); k != 0) {
    throw NotPositiveDefinite(
        "matrix is not positive definite: leading principal minor of order " +
            std::to_string(k) + " is not positive",
        k);
  }
  return f;
}

LdlFactor ldl_decompose(const QuadForm& q) { return q.ldl(); }

QuadForm::QuadForm(RatMatrix m) : m_(std::move(m)), ldl_(ldl_decompose(m_)) {}

QuadForm QuadForm::identity(std::size_t g) { return QuadForm(RatMatrix::identity(g)); }

Rational QuadForm::norm(std::span<const std::int64_t> v) const { return inner(v, v); }

Rational QuadForm::norm(std::span<const Rational> v) const {
  if (v.size() != dim()) throw StructuralError("vector has wrong dimension");
  Rational s = 0;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (v[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < dim(); ++j) row += m_(i, j) * v[j];
    s += v[i] * row;
  }
  return s;
}

Rational QuadForm::inner(std::span<const std::int64_t> a, std::span<const std::int64_t> b) const {
  if (a.size() != dim() || b.size() != dim()) throw StructuralError("vector has wrong dimension");
  Rational s = 0;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (b[j] == 0) continue;
      s += m_(i, j) * Rational(static_cast<long>(a[i] * b[j]));
    }
  }
  return s;
}

QuadForm QuadForm::transform(const IntMatrix& x) const {
  if (x.rows() != dim()) throw StructuralError("transform has wrong shape");
  RatMatrix xr = to_rational(x);
  return QuadForm(xr.transpose() * m_ * xr);
}

QuadForm QuadForm::scaled(const Rational& c) const {
  if (c <= 0) throw StructuralError("scale factor must be positive");
  RatMatrix s = m_;
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = 0; j < dim(); ++j) s(i, j) *= c;
  }
  return QuadForm(std::move(s));
}

std::vector<IntVector> enumerate_shifted(const QuadForm& q, std::span<const Rational> center,
                                         const Rational& bound) {
  std::vector<IntVector> out;
  enumerate_into(q, center, bound, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IntVector> enumerate_by_norm(const QuadForm& q, const Rational& bound) {
  RatVector zero(q.dim(), Rational(0));
  return enumerate_shifted(q, zero, bound);
}

ClosestVector closest_vector(const QuadForm& q, std::span<const Rational> x) {
  const std::size_t g = q.dim();
  if (x.size() != g) throw StructuralError("point has wrong dimension");
  // Babai nearest plane for an initial bound.
  const auto& L = q.ldl().lower;
  IntVector babai(g, 0);
  for (std::size_t jj = g; jj-- > 0;) {
    Rational s = -x[jj];
    for (std::size_t i = jj + 1; i < g; ++i) {
      s += L(i, jj) * (Rational(static_cast<long>(babai[i])) - x[i]);
    }
    babai[jj] = floor_of(-s + Rational(1, 2)).get_si();
  }
  RatVector diff(g);
  for (std::size_t i = 0; i < g; ++i) diff[i] = Rational(static_cast<long>(babai[i])) - x[i];
  Rational bound = q.norm(diff);

  ClosestVector best{babai, bound};
  bool first = true;
  for (const auto& p : enumerate_shifted(q, x, bound)) {
    for (std::size_t i = 0; i < g; ++i) diff[i] = Rational(static_cast<long>(p[i])) - x[i];
    Rational d = q.norm(diff);
    if (first || d < best.dist2) {
      best = {p, d};
      first = false;
    }
  }
  return best;
}

std::optional<IntMatrix> gl_equivalence(const QuadForm& q, const QuadForm& target,
                                        std::size_t candidate_cap) {
  const std::size_t g = q.dim();
  if (target.dim() != g) throw StructuralError("forms have different dimensions");

  struct Candidate {
    IntVector x;
    RatVector qx;
  };
  std::vector<std::vector<Candidate>> cands(g);
  for (std::size_t j = 0; j < g; ++j) {
    auto pts = enumerate_by_norm(q, target(j, j));
    if (pts.size() > candidate_cap) {
      throw SearchSpaceExceeded("column " + std::to_string(j) + " has " +
                                std::to_string(pts.size()) + " candidates (cap " +
                                std::to_string(candidate_cap) + ")");
    }
    for (auto& p : pts) {
      if (q.norm(p) != target(j, j)) continue;
      RatVector qx(g, Rational(0));
      for (std::size_t a = 0; a < g; ++a) {
        for (std::size_t b = 0; b < g; ++b) qx[a] += q(a, b) * Rational(static_cast<long>(p[b]));
      }
      cands[j].push_back({std::move(p), std::move(qx)});
    }
    if (cands[j].empty()) return std::nullopt;
  }

  std::vector<std::size_t> order(g);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return cands[a].size() < cands[b].size(); });

  std::vector<const Candidate*> chosen(g, nullptr);
  std::optional<IntMatrix> result;

  std::function<bool(std::size_t)> search = [&](std::size_t depth) -> bool {
    if (depth == g) {
      IntMatrix x(g, g);
      for (std::size_t j = 0; j < g; ++j) {
        for (std::size_t i = 0; i < g; ++i) x(i, j) = chosen[j]->x[i];
      }
      Integer det = determinant(x);
      if (det != 1 && det != -1) return false;
      result = std::move(x);
      return true;
    }
    const std::size_t col = order[depth];
    for (const auto& c : cands[col]) {
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) {
        const std::size_t other = order[d];
        Rational ip = 0;
        for (std::size_t i = 0; i < g; ++i) {
          if (chosen[other]->x[i] != 0) ip += c.qx[i] * Rational(static_cast<long>(chosen[other]->x[i]));
        }
        ok = ip == target(col, other);
      }
      if (!ok) continue;
      chosen[col] = &c;
      if (search(depth + 1)) return true;
    }
    chosen[col] = nullptr;
    return false;
  };
  search(0);
  return result;
}

}  // namespace schottky
