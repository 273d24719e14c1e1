#pragma once

// Riemann theta functions with characteristics in double precision, the
// Schottky-Igusa modular form, recovery of the canonical curve from a
// singular point of the theta divisor, and the tropical limit of theta
// constants.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "schottky/characteristics.hpp"
#include "schottky/exact.hpp"
#include "schottky/schottky_trop.hpp"

namespace schottky {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kDefaultThetaAccuracy = 1e-10;
inline constexpr double kDefaultDecisionThreshold = 1e-4;

// A point of the Siegel upper half space.
class RiemannMatrix {
 public:
  // Throws StructuralError for a non-square or non-symmetric matrix and
  // DomainError when the imaginary part is not positive definite.
  explicit RiemannMatrix(CMatrix tau);

  std::size_t genus() const { return static_cast<std::size_t>(tau_.rows()); }
  const CMatrix& tau() const { return tau_; }
  Eigen::MatrixXd real() const { return tau_.real(); }
  const Eigen::MatrixXd& imag() const { return imag_; }
  // Upper triangular R with Im tau = R^t R.
  const Eigen::MatrixXd& cholesky_upper() const { return upper_; }
  const Eigen::MatrixXd& imag_inverse() const { return imag_inverse_; }
  // min |R n| over nonzero integer n.
  double shortest_vector() const { return shortest_; }

 private:
  CMatrix tau_;
  Eigen::MatrixXd imag_;
  Eigen::MatrixXd upper_;
  Eigen::MatrixXd imag_inverse_;
  double shortest_ = 0;
};

// Value and derivatives of theta[m](tau, z), each stored as a mantissa times
// exp(log_scale) so that very small or large values stay representable.
struct ThetaJet {
  int order = 0;
  double log_scale = 0;
  Complex value;
  CVector gradient;
  CMatrix hessian;
  std::vector<Complex> third;  // g^3 entries, index (i * g + j) * g + k
  std::size_t terms = 0;       // lattice points summed
  double radius = 0;           // truncation radius of the ellipsoid

  Complex actual_value() const { return value * std::exp(log_scale); }
  CVector actual_gradient() const { return gradient * std::exp(log_scale); }
  CMatrix actual_hessian() const { return hessian * std::exp(log_scale); }
  Complex actual_third(std::size_t i, std::size_t j, std::size_t k) const;
  // log |theta|, finite even when exp would underflow.
  double log_abs() const { return std::log(std::abs(value)) + log_scale; }
};

// Truncated theta series with absolute truncation error at most
// eps * (largest term magnitude). Throws ValidationError for eps <= 0 or a
// characteristic that does not fit the genus.
Complex theta(const Characteristic& m, const RiemannMatrix& tau, const CVector& z,
              double eps = kDefaultThetaAccuracy);
ThetaJet theta_derivatives(const Characteristic& m, const RiemannMatrix& tau, const CVector& z, int order,
                           double eps = kDefaultThetaAccuracy);

// pi_1^2 + pi_2^2 + pi_3^2 - 2(pi_1 pi_2 + pi_1 pi_3 + pi_2 pi_3) for the
// classical choice of characteristics. The form and its two partial sums are
// in units of exp(log_unit) and each pi_i in units of exp(log_unit / 2),
// with log_unit chosen so that scale = max |pi_i|^2 = 1.
struct SchottkyIgusaValue {
  double log_unit = 0;
  Complex value;
  Complex sum_of_squares;   // pi_1^2 + pi_2^2 + pi_3^2
  Complex twice_products;   // 2 (pi_1 pi_2 + pi_1 pi_3 + pi_2 pi_3)
  std::array<Complex, 3> pi{};
  std::array<double, 3> log_abs_pi{};
  double scale = 1;

  double relative() const { return std::abs(value) / scale; }
  double log_abs_value() const { return std::log(std::abs(value)) + log_unit; }
  Complex actual(Complex unit_value) const { return unit_value * std::exp(log_unit); }
};

SchottkyIgusaValue schottky_igusa(const RiemannMatrix& tau, double eps = kDefaultThetaAccuracy);

struct ClassicalDecision {
  Verdict verdict = Verdict::undecided;
  double relative = 0;
  double threshold = kDefaultDecisionThreshold;
  SchottkyIgusaValue form;
};

// Jacobian below threshold, not a Jacobian above 100 * threshold, undecided
// in between.
ClassicalDecision decide_classical(const RiemannMatrix& tau, double eps = kDefaultThetaAccuracy,
                                   double threshold = kDefaultDecisionThreshold);

struct ThetaSingularity {
  CVector z;          // reduced: z = u + tau v with u, v in [0,1)^g
  Eigen::VectorXd u;
  Eigen::VectorXd v;
  // Residuals relative to |theta(0)| exp(pi y^t Y^{-1} y), y = Im z.
  double value_residual = 0;
  double gradient_residual = 0;
  int attempts = 0;
  int newton_steps = 0;
};

struct SingularityOptions {
  std::uint64_t seed = 1;
  int max_restarts = 50;
  int max_newton_steps = 60;
  double gradient_tolerance = 1e-9;
  double value_tolerance = 1e-7;
  double eps = 1e-12;
};

// Newton iteration on the gradient of theta[0] from random starts u + tau v.
// Throws NoSingularityFound when every restart fails.
ThetaSingularity find_theta_singularity(const RiemannMatrix& tau, const SingularityOptions& options = {});

// Taylor coefficients of theta[0] at a singular point. f2 and f3 are the
// full symmetric coefficient tensors of the homogeneous terms, so
// f2(x) = x^t f2 x and f3(x) = sum f3[i][j][k] x_i x_j x_k.
struct CanonicalCurve {
  ThetaSingularity point;
  Complex f0;
  CVector f1;
  CMatrix f2;
  std::vector<Complex> f3;

  Complex quadric(const CVector& x) const;
  Complex cubic(const CVector& x) const;
  // Coefficients keyed by exponent strings such as "1100" for x1 x2.
  std::vector<std::pair<std::string, Complex>> quadric_monomials() const;
  std::vector<std::pair<std::string, Complex>> cubic_monomials() const;
};

CanonicalCurve canonical_curve(const RiemannMatrix& tau, const SingularityOptions& options = {});

// theta[0](z* + x) - f0 - f1.x - f2(x) - f3(x).
Complex taylor_remainder(const RiemannMatrix& tau, const CanonicalCurve& curve, const CVector& x,
                         double eps = 1e-13);

struct TritangentPlane {
  Characteristic m;
  CVector coefficients;  // gradient of theta[m] at 0, scaled to max modulus 1
  double gradient_norm = 0;
};

// One plane per odd characteristic (g = 4), in increasing packed order.
std::vector<TritangentPlane> tritangent_planes(const RiemannMatrix& tau, double eps = kDefaultThetaAccuracy);

struct LimitRatios {
  std::vector<double> t;
  std::vector<double> log_ratio;  // log |theta[m](P + t i Q, 0)| - t pi Theta_{m'}(Q)
  double tropical_value = 0;      // Theta_{m'}(Q)
  double max_ratio = 0;
  double tail_min_ratio = 0;      // over the second half of the grid
};

LimitRatios tropical_limit_ratio(const QuadForm& q, const Characteristic& m, const std::vector<double>& t_grid,
                                 const Eigen::MatrixXd& p, double eps = kDefaultThetaAccuracy);

Eigen::MatrixXd to_double(const RatMatrix& m);

// Expansion at tau = i t Q for rational Q: a sum of c_k q^k with integer c_k
// and q = exp(-pi t / denominator), exact for every k <= exact_through.
// Double precision cannot resolve the cancellation in the Schottky-Igusa form
// along such rays; this representation can.
struct QSeries {
  Integer denominator = 1;
  std::map<Integer, Integer> coefficients;  // zero coefficients are dropped
  Integer exact_through = 0;

  bool empty() const { return coefficients.empty(); }
  // Lowest exponent and its coefficient.
  std::pair<Integer, Integer> leading() const;
  // log |sum c_k q^k| at the given t; -infinity for the empty series.
  double log_abs_at(double t) const;
  // The exponent of the leading term as a growth rate: log|f| ~ rate * pi * t.
  Rational leading_rate() const;
};

// theta[m](i t Q, 0) with every exponent up to leading + window exact.
// Odd characteristics give the empty series.
QSeries theta_constant_series(const QuadForm& q, const Characteristic& m, const Integer& window);

struct IgusaSeries {
  std::array<QSeries, 3> pi;
  QSeries form;
  Integer window = 0;
};

// The Schottky-Igusa form along tau = i t Q. The window doubles, up to
// max_window, until a nonzero term of the form is exact.
IgusaSeries schottky_igusa_series(const QuadForm& q, const Integer& initial_window,
                                  const Integer& max_window);

}  // namespace schottky
