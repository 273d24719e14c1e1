#include "schottky/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <utility>

namespace schottky {

std::string FVector::to_string() const {
  return "(" + std::to_string(counts[0]) + "," + std::to_string(counts[1]) + "," +
         std::to_string(counts[2]) + "," + std::to_string(counts[3]) + ")";
}

namespace {

using i128 = __int128;

Integer to_integer(i128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                            : static_cast<unsigned __int128>(v);
  Integer hi(static_cast<unsigned long>(u >> 64));
  Integer lo(static_cast<unsigned long>(u & ~0UL));
  Integer r = (hi << 64) + lo;
  return neg ? Integer(-r) : r;
}

Integer to_integer(const Integer& v) { return v; }

template <class T>
T from_integer(const Integer& v) {
  if constexpr (std::is_same_v<T, Integer>) {
    return v;
  } else {
    return static_cast<T>(v.get_si());
  }
}

template <class T>
T abs_of(const T& v) {
  return v < 0 ? T(-v) : v;
}

// Fraction-free determinant of an n x n row-major matrix.
template <class T>
T det_bareiss(std::vector<T> a, std::size_t n) {
  if (n == 0) return T(1);
  T prev(1);
  bool neg = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p * n + k] == 0) ++p;
      if (p == n) return T(0);
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      neg = !neg;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
      }
    }
    prev = a[k * n + k];
  }
  T d = a[n * n - 1];
  return neg ? T(-d) : d;
}

// Halfspaces a_i . x <= b_i / scale with primitive integer a_i and integer b_i.
struct IntSystem {
  std::size_t dim = 0;
  std::vector<std::vector<Integer>> a;
  std::vector<Integer> b;
  Integer scale = 1;
};

IntSystem normalize(std::span<const Halfspace> hs) {
  if (hs.empty()) throw DegenerateError("no halfspaces given");
  const std::size_t d = hs.front().normal.size();
  // Primitive integer normal -> smallest offset (pairwise domination).
  std::map<std::vector<Integer>, Rational> best;
  for (const auto& h : hs) {
    if (h.normal.size() != d) throw StructuralError("halfspaces of mixed dimension");
    Integer l = 1;
    for (const auto& c : h.normal) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Integer> a(d);
    Integer g = 0;
    for (std::size_t k = 0; k < d; ++k) {
      Rational s = h.normal[k] * Rational(l);
      a[k] = s.get_num();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a[k].get_mpz_t());
    }
    if (g == 0) throw StructuralError("halfspace with zero normal");
    for (auto& c : a) c /= g;
    Rational off = h.offset * Rational(l) / Rational(g);
    auto it = best.find(a);
    if (it == best.end() || off < it->second) best[a] = off;
  }
  IntSystem sys;
  sys.dim = d;
  for (const auto& [a, off] : best) {
    mpz_lcm(sys.scale.get_mpz_t(), sys.scale.get_mpz_t(), off.get_den_mpz_t());
  }
  for (const auto& [a, off] : best) {
    sys.a.push_back(a);
    Rational s = off * Rational(sys.scale);
    sys.b.push_back(s.get_num());
  }
  return sys;
}

// Enumerates combinations of k indices out of n in lexicographic order.
template <class F>
void for_each_combination(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  while (true) {
    f(c);
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

template <class T>
struct Solver {
  std::size_t d;
  std::size_t m;
  std::vector<T> a;  // m x d
  std::vector<T> b;

  explicit Solver(const IntSystem& sys) : d(sys.dim), m(sys.a.size()) {
    a.reserve(m * d);
    for (const auto& row : sys.a) {
      for (const auto& c : row) a.push_back(from_integer<T>(c));
    }
    for (const auto& c : sys.b) b.push_back(from_integer<T>(c));
  }

  // Vertices as (numerators, common denominator > 0).
  std::vector<std::pair<std::vector<T>, T>> vertices() const {
    std::vector<std::pair<std::vector<T>, T>> out;
    std::vector<T> sub(d * d), num(d);
    for_each_combination(m, d, [&](const std::vector<std::size_t>& rows) {
      for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t k = 0; k < d; ++k) sub[r * d + k] = a[rows[r] * d + k];
      }
      T det = det_bareiss(sub, d);
      if (det == 0) return;
      for (std::size_t k = 0; k < d; ++k) {
        std::vector<T> s = sub;
        for (std::size_t r = 0; r < d; ++r) s[r * d + k] = b[rows[r]];
        num[k] = det_bareiss(std::move(s), d);
      }
      if (det < 0) {
        det = -det;
        for (auto& x : num) x = -x;
      }
      for (std::size_t i = 0; i < m; ++i) {
        T lhs(0);
        for (std::size_t k = 0; k < d; ++k) lhs += a[i * d + k] * num[k];
        if (lhs > b[i] * det) return;
      }
      out.emplace_back(num, det);
    });
    return out;
  }

  // A nonzero y with a_i . y <= 0 for all i, if the recession cone is
  // nontrivial.
  bool has_recession_ray() const {
    // rank < d means a line is contained.
    RatMatrix coeffs(m, d);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = 0; k < d; ++k) coeffs(i, k) = Rational(to_integer(a[i * d + k]));
    }
    if (rank(coeffs) < d) return true;
    bool found = false;
    std::vector<T> minor((d - 1) * (d - 1)), y(d);
    for_each_combination(m, d - 1, [&](const std::vector<std::size_t>& rows) {
      if (found) return;
      bool nonzero = false;
      for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t r = 0; r + 1 < d; ++r) {
          std::size_t cc = 0;
          for (std::size_t c = 0; c < d; ++c) {
            if (c == k) continue;
            minor[r * (d - 1) + cc++] = a[rows[r] * d + c];
          }
        }
        T v = det_bareiss(minor, d - 1);
        y[k] = (k % 2 == 0) ? v : T(-v);
        if (y[k] != 0) nonzero = true;
      }
      if (!nonzero) return;
      bool all_le = true, all_ge = true;
      for (std::size_t i = 0; i < m && (all_le || all_ge); ++i) {
        T s(0);
        for (std::size_t k = 0; k < d; ++k) s += a[i * d + k] * y[k];
        if (s > 0) all_le = false;
        if (s < 0) all_ge = false;
      }
      if (all_le || all_ge) found = true;
    });
    return found;
  }
};

// True when all determinants and feasibility products stay well inside
// 127 bits.
bool fits_int128(const IntSystem& sys) {
  double maxbits = 0;
  for (const auto& row : sys.a) {
    for (const auto& c : row) maxbits = std::max(maxbits, static_cast<double>(mpz_sizeinbase(c.get_mpz_t(), 2)));
  }
  for (const auto& c : sys.b) maxbits = std::max(maxbits, static_cast<double>(mpz_sizeinbase(c.get_mpz_t(), 2)));
  const double d = static_cast<double>(sys.dim);
  const double hadamard = d * (0.5 * std::log2(d) + maxbits);
  return maxbits <= 60 && std::log2(d + 1) + maxbits + hadamard + 2 < 120;
}

template <class T>
Polytope build(const IntSystem& sys) {
  Solver<T> solver(sys);
  const std::size_t d = sys.dim;
  if (solver.has_recession_ray()) throw UnboundedError("halfspace intersection is unbounded");

  std::set<RatVector> verts;
  for (const auto& [num, den] : solver.vertices()) {
    RatVector v(d);
    Integer dd = to_integer(den) * sys.scale;
    for (std::size_t k = 0; k < d; ++k) {
      v[k] = Rational(to_integer(num[k]), dd);
      v[k].canonicalize();
    }
    verts.insert(std::move(v));
  }
  if (verts.empty()) throw DegenerateError("halfspace intersection is empty");

  Polytope p;
  p.dim = d;
  p.vertices.assign(verts.begin(), verts.end());
  if (affine_dimension(p.vertices) != static_cast<int>(d)) {
    throw DegenerateError("halfspace intersection has empty interior");
  }
  for (std::size_t i = 0; i < sys.a.size(); ++i) {
    RatVector normal(d);
    for (std::size_t k = 0; k < d; ++k) normal[k] = Rational(sys.a[i][k]);
    Rational offset(sys.b[i], sys.scale);
    offset.canonicalize();
    std::vector<std::size_t> tight;
    std::vector<RatVector> tight_pts;
    for (std::size_t v = 0; v < p.vertices.size(); ++v) {
      Rational s = 0;
      for (std::size_t k = 0; k < d; ++k) s += normal[k] * p.vertices[v][k];
      if (s == offset) {
        tight.push_back(v);
        tight_pts.push_back(p.vertices[v]);
      }
    }
    if (affine_dimension(tight_pts) != static_cast<int>(d) - 1) continue;
    p.facets.push_back({std::move(normal), std::move(offset)});
    p.facet_vertices.push_back(std::move(tight));
  }
  return p;
}

class VertexSet {
 public:
  explicit VertexSet(std::size_t n) : bits_((n + 63) / 64, 0) {}
  void set(std::size_t i) { bits_[i / 64] |= (1ULL << (i % 64)); }
  bool test(std::size_t i) const { return (bits_[i / 64] >> (i % 64)) & 1ULL; }
  bool empty() const {
    return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w == 0; });
  }
  VertexSet operator&(const VertexSet& o) const {
    VertexSet r = *this;
    for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] &= o.bits_[i];
    return r;
  }
  friend auto operator<=>(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<std::uint64_t> bits_;
};

}  // namespace

int affine_dimension(std::span<const RatVector> points) {
  if (points.empty()) return -1;
  const std::size_t d = points.front().size();
  RatMatrix diffs(points.size() - 1, d);
  for (std::size_t i = 1; i < points.size(); ++i) {
    for (std::size_t k = 0; k < d; ++k) diffs(i - 1, k) = points[i][k] - points[0][k];
  }
  return static_cast<int>(rank(diffs));
}

Polytope vertices_from_halfspaces(std::span<const Halfspace> halfspaces) {
  IntSystem sys = normalize(halfspaces);
  if (sys.a.size() <= sys.dim) throw UnboundedError("too few halfspaces to bound a polytope");
  if (fits_int128(sys)) return build<i128>(sys);
  return build<Integer>(sys);
}

FVector face_lattice_fvector(const Polytope& p) {
  if (p.dim != 4) {
    throw UnsupportedError("f-vector requires a 4-polytope, got dimension " + std::to_string(p.dim));
  }
  const std::size_t n = p.vertices.size();
  std::vector<VertexSet> facets;
  for (const auto& fv : p.facet_vertices) {
    VertexSet s(n);
    for (auto v : fv) s.set(v);
    facets.push_back(std::move(s));
  }
  // Every face is an intersection of facets; close the facet family under
  // intersection.
  std::set<VertexSet> faces(facets.begin(), facets.end());
  std::vector<VertexSet> queue(facets.begin(), facets.end());
  while (!queue.empty()) {
    VertexSet f = std::move(queue.back());
    queue.pop_back();
    for (const auto& g : facets) {
      VertexSet h = f & g;
      if (h.empty() || h == f) continue;
      if (faces.insert(h).second) queue.push_back(std::move(h));
    }
  }
  FVector fv;
  std::vector<RatVector> pts;
  for (const auto& f : faces) {
    pts.clear();
    for (std::size_t v = 0; v < n; ++v) {
      if (f.test(v)) pts.push_back(p.vertices[v]);
    }
    int dim = affine_dimension(pts);
    if (dim < 0 || dim > 3) throw InconsistencyError("face of unexpected dimension");
    ++fv.counts[static_cast<std::size_t>(dim)];
  }
  return fv;
}

Polytope zonotope(std::span<const IntVector> generators) {
  if (generators.empty()) throw DegenerateError("zonotope needs generators");
  const std::size_t d = generators.front().size();
  RatMatrix gm(generators.size(), d);
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].size() != d) throw StructuralError("generators of mixed dimension");
    for (std::size_t k = 0; k < d; ++k) gm(i, k) = Rational(static_cast<long>(generators[i][k]));
  }
  if (rank(gm) < d) throw DegenerateError("zonotope generators do not span the space");

  // Facet normals are the normals of hyperplanes spanned by d-1 generators.
  std::set<std::vector<Integer>> normals;
  std::vector<Integer> minor((d - 1) * (d - 1));
  for_each_combination(generators.size(), d - 1, [&](const std::vector<std::size_t>& idx) {
    std::vector<Integer> nrm(d);
    Integer g = 0;
    for (std::size_t k = 0; k < d; ++k) {
      for (std::size_t r = 0; r + 1 < d; ++r) {
        std::size_t cc = 0;
        for (std::size_t c = 0; c < d; ++c) {
          if (c != k) minor[r * (d - 1) + cc++] = static_cast<long>(generators[idx[r]][c]);
        }
      }
      Integer v = det_bareiss(minor, d - 1);
      nrm[k] = (k % 2 == 0) ? v : Integer(-v);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), nrm[k].get_mpz_t());
    }
    if (g == 0) return;
    for (auto& c : nrm) c /= g;
    auto lead = std::find_if(nrm.begin(), nrm.end(), [](const Integer& c) { return c != 0; });
    if (*lead < 0) {
      for (auto& c : nrm) c = -c;
    }
    normals.insert(std::move(nrm));
  });

  std::vector<Halfspace> hs;
  for (const auto& nrm : normals) {
    Integer h = 0;
    for (const auto& b : generators) {
      Integer s = 0;
      for (std::size_t k = 0; k < d; ++k) s += nrm[k] * static_cast<long>(b[k]);
      h += abs(s);
    }
    RatVector pos(d), neg(d);
    for (std::size_t k = 0; k < d; ++k) {
      pos[k] = Rational(nrm[k]);
      neg[k] = -pos[k];
    }
    hs.push_back({pos, Rational(h)});
    hs.push_back({neg, Rational(h)});
  }
  return vertices_from_halfspaces(hs);
}

}  // namespace schottky
