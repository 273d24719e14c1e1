#include "schottky/matrix.hpp"

#include <cctype>
#include <string>

namespace schottky {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) {
  Rational r(value);
  r.canonicalize();
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  auto valid_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    }
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!num.empty() && num[0] == '+') num = num.substr(1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') {
    throw StructuralError("not a rational number: '" + std::string(text) + "'");
  }
  Integer n(num, 10), d(den, 10);
  if (d == 0) throw StructuralError("zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(static_cast<long>(m(i, j)));
  }
  return r;
}

Integer determinant(const IntMatrix& m) {
  if (!m.is_square()) throw StructuralError("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  std::vector<Integer> a(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = static_cast<long>(m(i, j));
  }
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p * n + k] == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a[i * n + j] = t;
      }
    }
    prev = a[k * n + k];
  }
  return sign * a[n * n - 1];
}

namespace {

// Row echelon form in place; returns the rank and accumulates the
// determinant sign/product of pivots when requested.
std::size_t eliminate(RatMatrix& a, Rational* det) {
  std::size_t r = 0;
  if (det) *det = 1;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) {
      if (det) *det = 0;
      continue;
    }
    if (p != r) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
      if (det) *det = -*det;
    }
    if (det) *det *= a(r, c);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, c) == 0) continue;
      Rational f = a(i, c) / a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

}  // namespace

Rational determinant(const RatMatrix& m) {
  if (!m.is_square()) throw StructuralError("determinant of non-square matrix");
  RatMatrix a = m;
  Rational det;
  std::size_t r = eliminate(a, &det);
  return r == m.rows() ? det : Rational(0);
}

std::size_t rank(const RatMatrix& m) {
  RatMatrix a = m;
  return eliminate(a, nullptr);
}

std::optional<RatVector> solve_unique(const RatMatrix& a, const RatVector& b) {
  if (b.size() != a.rows()) throw StructuralError("right-hand side has wrong length");
  const std::size_t n = a.cols();
  RatMatrix aug(a.rows(), n + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  std::size_t r = eliminate(aug, nullptr);
  // Inconsistent iff some echelon row is zero except for the last column.
  for (std::size_t i = 0; i < r; ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < n && zero; ++j) zero = aug(i, j) == 0;
    if (zero) return std::nullopt;
  }
  if (r != n) return std::nullopt;
  RatVector x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rational s = aug(i, n);
    for (std::size_t j = i + 1; j < n; ++j) s -= aug(i, j) * x[j];
    x[i] = s / aug(i, i);
  }
  return x;
}

}  // namespace schottky
