#include "schottky/theta_classical.hpp"

#include <algorithm>
#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace schottky {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0, 1);

// Integer points n with |R (n - c)|^2 <= bound, R upper triangular.
void enumerate_ellipsoid(const Eigen::MatrixXd& r, const Eigen::VectorXd& c, double bound,
                         std::vector<Eigen::VectorXi>& out) {
  const int g = static_cast<int>(r.rows());
  Eigen::VectorXi n(g);
  // Recursion from the last coordinate; partial is the sum of squares of the rows already fixed.
  auto rec = [&](auto&& self, int i, double partial) -> void {
    if (i < 0) {
      out.push_back(n);
      return;
    }
    double off = 0;
    for (int j = i + 1; j < g; ++j) off += r(i, j) * (n[j] - c[j]);
    const double room = std::sqrt(std::max(0.0, bound - partial));
    const double center = c[i] - off / r(i, i);
    const double half = room / r(i, i);
    const long lo = static_cast<long>(std::ceil(center - half - 1e-12));
    const long hi = static_cast<long>(std::floor(center + half + 1e-12));
    for (long k = lo; k <= hi; ++k) {
      n[i] = static_cast<int>(k);
      const double term = r(i, i) * (static_cast<double>(k) - c[i]) + off;
      const double next = partial + term * term;
      if (next <= bound * (1 + 1e-12) + 1e-300) self(self, i - 1, next);
    }
  };
  rec(rec, g - 1, 0.0);
}

void check_characteristic(const Characteristic& m, std::size_t g) {
  const Label limit = g >= 32 ? ~Label{0} : ((Label{1} << g) - 1);
  if ((m.top & ~limit) != 0 || (m.bottom & ~limit) != 0) {
    throw ValidationError("characteristic " + m.to_string() + " does not fit genus " + std::to_string(g));
  }
}

// Gaussian tail bound for sum over |x| >= radius of (2 pi |w|)^order exp(-|x|^2),
// where x runs over a shifted copy of the lattice sqrt(pi) R Z^g with shortest
// vector rho and |w| <= s |x| + b.
double tail_bound(double radius, std::size_t g, int order, double rho, double s, double b) {
  const double shifted = radius - rho / 2;
  if (shifted <= 0) return std::numeric_limits<double>::infinity();
  const double gd = static_cast<double>(g);
  double sum = 0;
  for (int k = 0; k <= order; ++k) {
    const double a = (gd + k) / 2;
    sum += boost::math::binomial_coefficient<double>(static_cast<unsigned>(order), static_cast<unsigned>(k)) *
           std::pow(s, k) * std::pow(b, order - k) * boost::math::tgamma(a, shifted * shifted);
  }
  return std::pow(2 * kPi, order) * (gd / 2) * std::pow(2 / rho, gd) * sum;
}

}  // namespace

RiemannMatrix::RiemannMatrix(CMatrix tau) : tau_(std::move(tau)) {
  if (tau_.rows() != tau_.cols() || tau_.rows() == 0) throw StructuralError("Riemann matrix must be square");
  if (!tau_.allFinite()) throw StructuralError("Riemann matrix has non-finite entries");
  const double size = std::max(1.0, tau_.cwiseAbs().maxCoeff());
  if ((tau_ - tau_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * size) {
    throw StructuralError("Riemann matrix is not symmetric");
  }
  tau_ = (tau_ + tau_.transpose()) / 2.0;
  imag_ = tau_.imag();
  Eigen::LLT<Eigen::MatrixXd> llt(imag_);
  if (llt.info() != Eigen::Success) throw DomainError("imaginary part is not positive definite");
  upper_ = llt.matrixU();
  for (Eigen::Index i = 0; i < upper_.rows(); ++i) {
    if (!(upper_(i, i) > 0)) throw DomainError("imaginary part is not positive definite");
  }
  imag_inverse_ = llt.solve(Eigen::MatrixXd::Identity(imag_.rows(), imag_.cols()));

  double best = std::sqrt(imag_.diagonal().minCoeff());
  std::vector<Eigen::VectorXi> pts;
  enumerate_ellipsoid(upper_, Eigen::VectorXd::Zero(imag_.rows()), best * best, pts);
  for (const auto& n : pts) {
    if (n.isZero()) continue;
    best = std::min(best, (upper_ * n.cast<double>()).norm());
  }
  shortest_ = best;
}

Complex ThetaJet::actual_third(std::size_t i, std::size_t j, std::size_t k) const {
  const auto g = static_cast<std::size_t>(gradient.size());
  return third.at((i * g + j) * g + k) * std::exp(log_scale);
}

ThetaJet theta_derivatives(const Characteristic& m, const RiemannMatrix& tau, const CVector& z, int order,
                           double eps) {
  if (!(eps > 0)) throw ValidationError("accuracy must be positive");
  if (order < 0 || order > 3) throw ValidationError("derivative order must be between 0 and 3");
  const std::size_t g = tau.genus();
  if (static_cast<std::size_t>(z.size()) != g) throw StructuralError("argument has wrong length");
  check_characteristic(m, g);
  const auto gi = static_cast<Eigen::Index>(g);

  Eigen::VectorXd a(gi), half_bottom(gi);
  for (std::size_t i = 0; i < g; ++i) {
    a[static_cast<Eigen::Index>(i)] = ((m.top >> i) & 1U) ? 0.5 : 0.0;
    half_bottom[static_cast<Eigen::Index>(i)] = ((m.bottom >> i) & 1U) ? 0.5 : 0.0;
  }
  const Eigen::VectorXd y = z.imag();
  const Eigen::VectorXd shift = tau.imag_inverse() * y;
  const Eigen::VectorXd center = -a - shift;
  const Eigen::MatrixXd& r = tau.cholesky_upper();

  // Radius in the scaled coordinates x = sqrt(pi) R (n - center).
  const double rho = std::sqrt(kPi) * tau.shortest_vector();
  const Eigen::MatrixXd r_inv = r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(gi, gi));
  const double s = r_inv.operatorNorm() / std::sqrt(kPi);
  const double b = shift.norm();
  Eigen::VectorXd nearest = center.array().round();
  const double lead = kPi * (r * (nearest - center)).squaredNorm();
  const double target = eps * std::exp(-lead);
  double radius = std::max(std::sqrt(lead) + 0.5, rho / 2 + 0.5);
  while (tail_bound(radius, g, order, rho, s, b) > target) radius += 0.05;

  std::vector<Eigen::VectorXi> pts;
  enumerate_ellipsoid(r, center, radius * radius / kPi, pts);

  struct Term {
    double norm;
    Eigen::VectorXi n;
  };
  std::vector<Term> terms;
  terms.reserve(pts.size());
  for (auto& n : pts) terms.push_back({(r * (n.cast<double>() - center)).squaredNorm(), std::move(n)});
  std::sort(terms.begin(), terms.end(), [](const Term& p, const Term& q) {
    if (p.norm != q.norm) return p.norm < q.norm;
    return std::lexicographical_compare(p.n.data(), p.n.data() + p.n.size(), q.n.data(), q.n.data() + q.n.size());
  });

  const CVector zc = z + half_bottom.cast<Complex>();
  std::vector<Complex> exponents(terms.size());
  double log_scale = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const Eigen::VectorXd w = terms[t].n.cast<double>() + a;
    const CVector wc = w.cast<Complex>();
    exponents[t] = kI * kPi * (wc.transpose() * tau.tau() * wc)(0, 0) + 2.0 * kI * kPi * wc.dot(zc);
    log_scale = std::max(log_scale, exponents[t].real());
  }

  ThetaJet jet;
  jet.order = order;
  jet.log_scale = terms.empty() ? 0 : log_scale;
  jet.value = 0;
  jet.gradient = CVector::Zero(gi);
  jet.hessian = CMatrix::Zero(gi, gi);
  if (order >= 3) jet.third.assign(g * g * g, Complex(0));
  jet.terms = terms.size();
  jet.radius = radius;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const Complex e = std::exp(exponents[t] - jet.log_scale);
    jet.value += e;
    if (order == 0) continue;
    const CVector f = (2.0 * kI * kPi) * (terms[t].n.cast<double>() + a).cast<Complex>();
    jet.gradient += e * f;
    if (order == 1) continue;
    jet.hessian += e * (f * f.transpose());
    if (order == 2) continue;
    for (std::size_t i = 0; i < g; ++i) {
      for (std::size_t j = 0; j < g; ++j) {
        const Complex ef = e * f[static_cast<Eigen::Index>(i)] * f[static_cast<Eigen::Index>(j)];
        for (std::size_t k = 0; k < g; ++k) jet.third[(i * g + j) * g + k] += ef * f[static_cast<Eigen::Index>(k)];
      }
    }
  }
  return jet;
}

Complex theta(const Characteristic& m, const RiemannMatrix& tau, const CVector& z, double eps) {
  return theta_derivatives(m, tau, z, 0, eps).actual_value();
}

SchottkyIgusaValue schottky_igusa(const RiemannMatrix& tau, double eps) {
  if (tau.genus() != 4) throw UnsupportedError("the Schottky-Igusa form is defined for g = 4");
  const IgusaChoice choice = classical_igusa_choice();
  const CVector zero = CVector::Zero(4);
  SchottkyIgusaValue out;
  std::array<Complex, 3> phase{};
  for (std::size_t i = 0; i < 3; ++i) {
    double log_abs = 0;
    Complex ph = 1;
    for (const auto& m : choice.coset(i)) {
      const ThetaJet jet = theta_derivatives(m, tau, zero, 0, eps);
      const double mag = std::abs(jet.value);
      if (mag == 0) {
        log_abs = -std::numeric_limits<double>::infinity();
        ph = 0;
        break;
      }
      log_abs += std::log(mag) + jet.log_scale;
      ph *= jet.value / mag;
    }
    out.log_abs_pi[i] = log_abs;
    phase[i] = ph;
  }
  const double top = *std::max_element(out.log_abs_pi.begin(), out.log_abs_pi.end());
  out.log_unit = std::isfinite(top) ? 2 * top : 0;
  for (std::size_t i = 0; i < 3; ++i) {
    out.pi[i] = std::isfinite(out.log_abs_pi[i]) ? phase[i] * std::exp(out.log_abs_pi[i] - out.log_unit / 2) : 0;
  }
  const auto& p = out.pi;
  out.sum_of_squares = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
  out.twice_products = 2.0 * (p[0] * p[1] + p[0] * p[2] + p[1] * p[2]);
  out.value = out.sum_of_squares - out.twice_products;
  out.scale = std::isfinite(top) ? 1.0 : 0.0;
  return out;
}

ClassicalDecision decide_classical(const RiemannMatrix& tau, double eps, double threshold) {
  if (!(threshold > 0)) throw ValidationError("decision threshold must be positive");
  ClassicalDecision d;
  d.threshold = threshold;
  d.form = schottky_igusa(tau, eps);
  d.relative = d.form.scale > 0 ? d.form.relative() : 0;
  if (d.relative < threshold) {
    d.verdict = Verdict::jacobian;
  } else if (d.relative > 100 * threshold) {
    d.verdict = Verdict::not_jacobian;
  } else {
    d.verdict = Verdict::undecided;
  }
  return d;
}

namespace {

struct Residuals {
  double value;
  double gradient;
};

// |theta(z)| exp(-pi y^t Y^{-1} y) is invariant under lattice translation;
// residuals are measured against it and |theta(0)|.
Residuals residuals(const RiemannMatrix& tau, const ThetaJet& jet, const CVector& z, double log_theta0) {
  const Eigen::VectorXd y = z.imag();
  const double log_norm = kPi * y.dot(tau.imag_inverse() * y) + log_theta0;
  const double factor = std::exp(jet.log_scale - log_norm);
  return {std::abs(jet.value) * factor, jet.gradient.norm() * factor};
}

void reduce_to_fundamental_domain(const RiemannMatrix& tau, ThetaSingularity& s) {
  s.v = tau.imag_inverse() * s.z.imag();
  s.u = s.z.real() - tau.real() * s.v;
  s.u = s.u.array() - s.u.array().floor();
  s.v = s.v.array() - s.v.array().floor();
  s.z = s.u.cast<Complex>() + tau.tau() * s.v.cast<Complex>();
}

}  // namespace

ThetaSingularity find_theta_singularity(const RiemannMatrix& tau, const SingularityOptions& options) {
  const std::size_t g = tau.genus();
  const auto gi = static_cast<Eigen::Index>(g);
  const Characteristic zero_char{};
  const double log_theta0 = theta_derivatives(zero_char, tau, CVector::Zero(gi), 0, options.eps).log_abs();
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  double best_value = std::numeric_limits<double>::infinity();
  for (int attempt = 1; attempt <= options.max_restarts; ++attempt) {
    Eigen::VectorXd u(gi), v(gi);
    for (Eigen::Index i = 0; i < gi; ++i) u[i] = unit(rng);
    for (Eigen::Index i = 0; i < gi; ++i) v[i] = unit(rng);
    CVector z = u.cast<Complex>() + tau.tau() * v.cast<Complex>();

    int steps = 0;
    bool converged = false;
    for (; steps < options.max_newton_steps; ++steps) {
      const ThetaJet jet = theta_derivatives(zero_char, tau, z, 2, options.eps);
      const Residuals res = residuals(tau, jet, z, log_theta0);
      if (res.gradient < options.gradient_tolerance) {
        converged = true;
        break;
      }
      Eigen::PartialPivLU<CMatrix> lu(jet.hessian);
      const CVector step = lu.solve(jet.gradient);
      if (!step.allFinite()) break;
      z -= step;
      // Runaway iterates leave the region where starts were drawn.
      const Eigen::VectorXd vz = tau.imag_inverse() * z.imag();
      if (vz.cwiseAbs().maxCoeff() > 4) break;
    }
    if (!converged) continue;

    ThetaSingularity s;
    s.z = z;
    reduce_to_fundamental_domain(tau, s);
    // Polish at the reduced point, where theta differs by a nonvanishing factor.
    for (int k = 0; k < 3; ++k) {
      const ThetaJet jet = theta_derivatives(zero_char, tau, s.z, 2, options.eps);
      const Residuals res = residuals(tau, jet, s.z, log_theta0);
      if (res.gradient < options.gradient_tolerance * 1e-3) break;
      const CVector step = Eigen::PartialPivLU<CMatrix>(jet.hessian).solve(jet.gradient);
      if (!step.allFinite()) break;
      s.z -= step;
    }
    const ThetaJet jet = theta_derivatives(zero_char, tau, s.z, 1, options.eps);
    const Residuals res = residuals(tau, jet, s.z, log_theta0);
    s.v = tau.imag_inverse() * s.z.imag();
    s.u = s.z.real() - tau.real() * s.v;
    s.value_residual = res.value;
    s.gradient_residual = res.gradient;
    s.attempts = attempt;
    s.newton_steps = steps;
    if (res.gradient < options.gradient_tolerance) best_value = std::min(best_value, res.value);
    if (res.gradient < options.gradient_tolerance && res.value < options.value_tolerance) return s;
  }
  std::string detail = "no critical point of theta was found";
  if (std::isfinite(best_value)) {
    std::ostringstream msg;
    msg << "the best critical point has relative theta value " << best_value << " > " << options.value_tolerance;
    detail = msg.str();
  }
  throw NoSingularityFound("no singular point of the theta divisor found in " + std::to_string(options.max_restarts) +
                           " restarts (" + detail + "); the matrix may not be a Jacobian");
}

Complex CanonicalCurve::quadric(const CVector& x) const { return (x.transpose() * f2 * x)(0, 0); }

Complex CanonicalCurve::cubic(const CVector& x) const {
  const auto g = static_cast<std::size_t>(x.size());
  Complex sum = 0;
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = 0; j < g; ++j) {
      for (std::size_t k = 0; k < g; ++k) {
        sum += f3[(i * g + j) * g + k] * x[static_cast<Eigen::Index>(i)] * x[static_cast<Eigen::Index>(j)] *
               x[static_cast<Eigen::Index>(k)];
      }
    }
  }
  return sum;
}

namespace {

std::string exponent_key(std::size_t g, std::initializer_list<std::size_t> indices) {
  std::string key(g, '0');
  for (auto i : indices) ++key[i];
  return key;
}

}  // namespace

std::vector<std::pair<std::string, Complex>> CanonicalCurve::quadric_monomials() const {
  const auto g = static_cast<std::size_t>(f2.rows());
  std::vector<std::pair<std::string, Complex>> out;
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = i; j < g; ++j) {
      const auto a = static_cast<Eigen::Index>(i), b = static_cast<Eigen::Index>(j);
      out.emplace_back(exponent_key(g, {i, j}), i == j ? f2(a, a) : f2(a, b) + f2(b, a));
    }
  }
  return out;
}

std::vector<std::pair<std::string, Complex>> CanonicalCurve::cubic_monomials() const {
  const auto g = static_cast<std::size_t>(f2.rows());
  std::vector<std::pair<std::string, Complex>> out;
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = i; j < g; ++j) {
      for (std::size_t k = j; k < g; ++k) {
        Complex sum = 0;
        std::array<std::size_t, 3> idx{i, j, k};
        std::sort(idx.begin(), idx.end());
        do {
          sum += f3[(idx[0] * g + idx[1]) * g + idx[2]];
        } while (std::next_permutation(idx.begin(), idx.end()));
        out.emplace_back(exponent_key(g, {i, j, k}), sum);
      }
    }
  }
  return out;
}

CanonicalCurve canonical_curve(const RiemannMatrix& tau, const SingularityOptions& options) {
  CanonicalCurve c;
  c.point = find_theta_singularity(tau, options);
  const ThetaJet jet = theta_derivatives(Characteristic{}, tau, c.point.z, 3, options.eps);
  const double factor = std::exp(jet.log_scale);
  c.f0 = jet.value * factor;
  c.f1 = jet.gradient * factor;
  c.f2 = jet.hessian * (factor / 2);
  c.f3.resize(jet.third.size());
  for (std::size_t i = 0; i < jet.third.size(); ++i) c.f3[i] = jet.third[i] * (factor / 6);
  return c;
}

Complex taylor_remainder(const RiemannMatrix& tau, const CanonicalCurve& curve, const CVector& x, double eps) {
  const Complex value = theta(Characteristic{}, tau, curve.point.z + x, eps);
  return value - curve.f0 - (curve.f1.transpose() * x)(0, 0) - curve.quadric(x) - curve.cubic(x);
}

std::vector<TritangentPlane> tritangent_planes(const RiemannMatrix& tau, double eps) {
  if (tau.genus() != 4) throw UnsupportedError("tritangent planes are computed for g = 4");
  std::vector<TritangentPlane> out;
  const CVector zero = CVector::Zero(4);
  for (const auto& m : odd_characteristics()) {
    const ThetaJet jet = theta_derivatives(m, tau, zero, 1, eps);
    const CVector grad = jet.actual_gradient();
    TritangentPlane plane;
    plane.m = m;
    plane.gradient_norm = grad.norm();
    const double top = grad.cwiseAbs().maxCoeff();
    plane.coefficients = top > 0 ? CVector(grad / top) : grad;
    out.push_back(std::move(plane));
  }
  return out;
}

Eigen::MatrixXd to_double(const RatMatrix& m) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).get_d();
    }
  }
  return out;
}

LimitRatios tropical_limit_ratio(const QuadForm& q, const Characteristic& m, const std::vector<double>& t_grid,
                                 const Eigen::MatrixXd& p, double eps) {
  const auto g = static_cast<Eigen::Index>(q.dim());
  if (p.rows() != g || p.cols() != g) throw StructuralError("perturbation has wrong shape");
  if (t_grid.empty()) throw ValidationError("empty parameter grid");
  LimitRatios out;
  out.tropical_value = trop_theta_constant(q, m.top).get_d();
  const Eigen::MatrixXd qd = to_double(q.matrix());
  const CVector zero = CVector::Zero(g);
  for (double t : t_grid) {
    if (!(t > 0)) throw ValidationError("grid parameters must be positive");
    CMatrix tau = p.cast<Complex>() + kI * t * qd.cast<Complex>();
    const ThetaJet jet = theta_derivatives(m, RiemannMatrix(tau), zero, 0, eps);
    out.t.push_back(t);
    out.log_ratio.push_back(jet.log_abs() - t * kPi * out.tropical_value);
  }
  out.max_ratio = std::exp(*std::max_element(out.log_ratio.begin(), out.log_ratio.end()));
  const std::size_t half = out.log_ratio.size() / 2;
  out.tail_min_ratio = std::exp(*std::min_element(out.log_ratio.begin() + static_cast<std::ptrdiff_t>(half),
                                                  out.log_ratio.end()));
  return out;
}

}  // namespace schottky
