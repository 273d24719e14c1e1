#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "schottky/theta_classical.hpp"

namespace schottky {

std::pair<Integer, Integer> QSeries::leading() const {
  if (coefficients.empty()) throw DomainError("empty series has no leading term");
  return *coefficients.begin();
}

Rational QSeries::leading_rate() const { return make_rational(-leading().first, denominator); }

double QSeries::log_abs_at(double t) const {
  if (coefficients.empty()) return -std::numeric_limits<double>::infinity();
  const auto& [k0, c0] = *coefficients.begin();
  const double d = denominator.get_d();
  double sum = 0;
  for (const auto& [k, c] : coefficients) {
    if (k > exact_through) break;
    sum += c.get_d() * std::exp(-std::numbers::pi * t * Integer(k - k0).get_d() / d);
  }
  return std::log(std::abs(sum)) - std::numbers::pi * t * k0.get_d() / d;
}

namespace {

using Poly = std::map<Integer, Integer>;

Poly multiply(const Poly& a, const Poly& b, const Integer& cap) {
  Poly out;
  for (const auto& [i, x] : a) {
    for (const auto& [j, y] : b) {
      Integer k = i + j;
      if (k > cap) break;
      out[k] += x * y;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

void accumulate(Poly& into, const Poly& p, long factor) {
  for (const auto& [k, c] : p) into[k] += c * factor;
  std::erase_if(into, [](const auto& kv) { return kv.second == 0; });
}

Integer common_denominator(const QuadForm& q) {
  Integer l = 1;
  for (std::size_t i = 0; i < q.dim(); ++i) {
    for (std::size_t j = 0; j < q.dim(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q(i, j).get_den_mpz_t());
  }
  return l;
}

}  // namespace

QSeries theta_constant_series(const QuadForm& q, const Characteristic& m, const Integer& window) {
  const std::size_t g = q.dim();
  if (window < 0) throw ValidationError("window must be nonnegative");
  QSeries s;
  // With x = 2n + m', the exponent pi i w^t (i t Q) w is -pi t x^t Q x / 4.
  s.denominator = 4 * common_denominator(q);
  if (m.is_odd()) {
    s.exact_through = std::numeric_limits<long>::max();
    return s;
  }
  std::vector<Rational> center(g);
  for (std::size_t i = 0; i < g; ++i) center[i] = ((m.top >> i) & 1U) ? make_rational(-1, 2) : Rational(0);
  const Rational lead = -trop_theta_constant(q, m.top);
  const Rational scale(s.denominator / 4);
  const Rational bound = lead + Rational(window) / Rational(s.denominator);
  for (const auto& n : enumerate_shifted(q, center, bound)) {
    std::vector<Rational> w(g);
    long dot = 0;
    for (std::size_t i = 0; i < g; ++i) {
      const long x = 2 * n[i] + static_cast<long>((m.top >> i) & 1U);
      w[i] = make_rational(x, 2);
      if ((m.bottom >> i) & 1U) dot += x;
    }
    Rational k = q.norm(w) * 4 * scale;
    // i^{x.m''} with x.m'' even.
    s.coefficients[k.get_num()] += (((dot % 4) + 4) % 4 == 0) ? 1 : -1;
  }
  std::erase_if(s.coefficients, [](const auto& kv) { return kv.second == 0; });
  Rational through = bound * 4 * scale;
  s.exact_through = through.get_num() / through.get_den();
  return s;
}

IgusaSeries schottky_igusa_series(const QuadForm& q, const Integer& initial_window, const Integer& max_window) {
  if (q.dim() != 4) throw UnsupportedError("the Schottky-Igusa form is defined for g = 4");
  if (initial_window <= 0) throw ValidationError("window must be positive");
  const IgusaChoice choice = classical_igusa_choice();
  for (Integer window = initial_window;; window *= 2) {
    IgusaSeries out;
    out.window = window;
    std::array<Integer, 3> lead{};
    for (std::size_t i = 0; i < 3; ++i) {
      QSeries& p = out.pi[i];
      bool zero = false;
      Integer lead_sum = 0;
      std::vector<QSeries> factors;
      for (const auto& m : choice.coset(i)) {
        factors.push_back(theta_constant_series(q, m, window));
        if (factors.back().empty()) zero = true;
        else lead_sum += factors.back().leading().first;
      }
      p.denominator = factors.front().denominator;
      if (zero) {
        p.exact_through = std::numeric_limits<long>::max();
        lead[i] = -1;
        continue;
      }
      // Each factor is exact up to its leading exponent plus the window.
      p.exact_through = lead_sum + window;
      Poly acc{{0, 1}};
      for (const auto& f : factors) acc = multiply(acc, f.coefficients, p.exact_through);
      p.coefficients = std::move(acc);
      lead[i] = lead_sum;
    }
    QSeries& f = out.form;
    f.denominator = out.pi[0].denominator;
    Integer exact = std::numeric_limits<long>::max();
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = i; j < 3; ++j) {
        if (lead[i] < 0 || lead[j] < 0) continue;
        exact = std::min<Integer>(exact, std::min(out.pi[i].exact_through + lead[j], out.pi[j].exact_through + lead[i]));
      }
    }
    f.exact_through = exact;
    Poly form;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = i; j < 3; ++j) {
        accumulate(form, multiply(out.pi[i].coefficients, out.pi[j].coefficients, exact), i == j ? 1 : -2);
      }
    }
    f.coefficients = std::move(form);
    if (!f.empty() || window * 2 > max_window) return out;
  }
}

}  // namespace schottky
