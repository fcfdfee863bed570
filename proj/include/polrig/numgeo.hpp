#pragma once

// Numerical cross-check of the mean squared second fundamental form.
//
// A catalog pair is given an explicit polynomial chart phi: C^n -> C^{N+1}
// of a dense open subset of its embedding. The Fubini-Study metric of
// holomorphic sectional curvature 1 pulls back to
//     g_{ij} = kappa * d_i dbar_j log |phi|^2,   kappa = 2,
// computed in closed form from polynomial derivatives. The Ricci form
// -d dbar log det g is taken by central finite differences, the scalar
// curvature is S = 2 tr(g^{-1} Ric), and |sigma|^2 = n(n+1) - S.

#include "polrig/catalog.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace polrig::numgeo {

using Complex = std::complex<double>;
using Point = std::vector<Complex>;
using HermitianMatrix = Eigen::MatrixXcd;

inline constexpr double kDefaultKappa = 2.0;
inline constexpr double kDefaultStep = 1e-4;
inline constexpr double kCalibrationTolerance = 1e-5;

/// Sparse polynomial in n complex variables with complex coefficients.
class Polynomial {
 public:
  using Exponents = std::vector<int>;

  Polynomial() = default;
  explicit Polynomial(int variables) : variables_(variables) {}
  static Polynomial constant(int variables, Complex c);
  static Polynomial monomial(int variables, const Exponents& e, Complex c = 1.0);

  int variables() const noexcept { return variables_; }
  const std::map<Exponents, Complex>& terms() const noexcept { return terms_; }
  bool is_zero(double tol = 0.0) const;
  int max_exponent() const;
  Polynomial derivative(int i) const;

  Complex evaluate(std::span<const Complex> w) const;
  /// Value and all n holomorphic partials in one pass.
  void evaluate_with_gradient(std::span<const Complex> w, Complex& value, std::span<Complex> gradient) const;

  Polynomial& operator+=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Complex s, Polynomial a);

 private:
  void add_term(const Exponents& e, Complex c);
  int variables_ = 0;
  std::map<Exponents, Complex> terms_;
};

struct EmbeddedChart {
  int n = 0;
  std::vector<Polynomial> coordinates;  // phi_0 .. phi_N
  double kappa = kDefaultKappa;
  std::string provenance;
  // phi_a d_i phi_b - phi_b d_i phi_a for every pair a < b where it is not
  // identically zero, expanded symbolically so that the cancellation in these
  // minors is exact. Filled by prepare(); computed on demand when empty.
  std::vector<std::vector<Polynomial>> minors;
  // Sampling scale of each chart variable: w_j is drawn at the scale
  // (1 + |w_0|^2)^(-e_j / 2). Scrolls set e_j = a_j - a_1 so that the fiber
  // coordinate matches the chart at the far end of the base curve. Empty: all 0.
  std::vector<int> fiber_exponents;

  int ambient_dimension() const noexcept { return static_cast<int>(coordinates.size()) - 1; }
  void prepare();

  /// phi -> U phi for an (N+1)x(N+1) matrix U.
  EmbeddedChart transformed(const Eigen::MatrixXcd& u) const;
  /// phi -> f * phi for a common polynomial factor f.
  EmbeddedChart rescaled(const Polynomial& factor) const;
};

/// Kodaira-map chart of a supported family: projective_space (d-uple Veronese),
/// product (Segre-Veronese), scroll, and quadric hypersurfaces (stereographic
/// parametrization of the Fermat quadric). Throws NumericsUnsupported otherwise.
EmbeddedChart embed(const PolarizedPair& pair);

/// Closed-form pullback metric g_{ij} = kappa (K A_ij - b_i conj(b_j)) / K^2.
/// Throws NumericsError when K vanishes or the result is not positive definite.
HermitianMatrix pullback_metric(const EmbeddedChart& chart, std::span<const Complex> w);

struct CurvatureSample {
  Point point;
  HermitianMatrix metric;
  HermitianMatrix ricci;
  double scalar = 0.0;
  double sigma_sq = 0.0;
  double volume_weight = 0.0;  // det g
};

/// Metric, Ricci form, scalar curvature and |sigma|^2 at w. `step` is measured in
/// the metric: finite differences move a distance of about step * sqrt(kappa)
/// in each direction of a frame that diagonalizes g.
CurvatureSample curvature_sample(const EmbeddedChart& chart, std::span<const Complex> w,
                                 double step = kDefaultStep);

double scalar_curvature(const EmbeddedChart& chart, std::span<const Complex> w, double step = kDefaultStep);

/// n(n+1) - S_g.
double sigma_sq_pointwise(const EmbeddedChart& chart, std::span<const Complex> w, double step = kDefaultStep);

// ---------------------------------------------------------------------------
// Sampling and integration

/// Counter-based generator: the k-th draw of sample i depends only on (seed, i, k).
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t index) : seed_(seed), index_(index) {}
  /// Uniform in the open interval (0, 1).
  double uniform();

 private:
  std::uint64_t seed_;
  std::uint64_t index_;
  std::uint64_t counter_ = 0;
};

/// Point of C^n drawn from an equal mixture of two densities. The first has
/// w_0 of density 1/(pi (1+|w|^2)^2) and w_j = s_j u_j with u_j of the same
/// density and s_j = (1+|w_0|^2)^(-e_j/2) (all s_j = 1 for empty exponents).
/// The second is the Fubini-Study volume of P^n, n! / (pi^n (1+|w|^2)^(n+1)).
/// The first matches product-like charts and scrolls, the second keeps weights
/// bounded where the chart looks like P^n at infinity (without it the weights
/// of P^n itself have infinite variance for n >= 3).
Point sample_point(int n, SampleStream& stream, std::span<const int> fiber_exponents = {});
double sampling_density(std::span<const Complex> w, std::span<const int> fiber_exponents = {});

struct IntegrationOptions {
  int batches = 40;
  double step = kDefaultStep;
  int threads = 0;  // 0: POLRIG_THREADS or hardware concurrency
};

struct IntegrationResult {
  double mean_estimate = 0.0;
  double standard_error = 0.0;
  std::int64_t sample_count = 0;
  std::uint64_t seed = 0;
  double volume_ratio_estimate = 0.0;  // Vol(M) / Vol(P^n)
  double volume_standard_error = 0.0;
  double effective_sample_size = 0.0;
};

inline constexpr std::int64_t kMinimumSamples = 10000;

/// Self-normalized importance-sampling estimate of the mean of |sigma|^2.
/// Bit-identical for a fixed (seed, samples, batches) regardless of thread count.
IntegrationResult mean_sigma_numeric(const EmbeddedChart& chart, std::int64_t samples, std::uint64_t seed,
                                     const IntegrationOptions& options = {});

/// Worker count from POLRIG_THREADS, falling back to hardware concurrency.
int default_thread_count();

// ---------------------------------------------------------------------------
// Calibration

struct CalibrationReport {
  int n = 0;
  double step = 0.0;
  double kappa = 0.0;
  double expected_scalar = 0.0;
  double max_deviation = 0.0;
  double mean_scalar = 0.0;
  double tolerance = kCalibrationTolerance;
  bool passed = false;
};

/// The 25 fixed points at which calibration evaluates P^n.
std::vector<Point> calibration_points(int n);

/// Scalar curvature of (P^n, O(1)) against n(n+1) at the calibration points.
CalibrationReport calibrate(int n, double step = kDefaultStep, double kappa = kDefaultKappa);

}  // namespace polrig::numgeo
