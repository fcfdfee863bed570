#include "polrig/numgeo.hpp"

#include "polrig/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <numbers>
#include <numeric>
#include <thread>

namespace polrig::numgeo {

// ---------------------------------------------------------------------------
// Polynomial

Polynomial Polynomial::constant(int variables, Complex c) {
  return monomial(variables, Exponents(variables, 0), c);
}

Polynomial Polynomial::monomial(int variables, const Exponents& e, Complex c) {
  if (static_cast<int>(e.size()) != variables) throw UsageError("monomial exponent count mismatch");
  Polynomial p(variables);
  p.add_term(e, c);
  return p;
}

void Polynomial::add_term(const Exponents& e, Complex c) {
  if (c == Complex(0.0)) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex(0.0)) terms_.erase(it);
  }
}

bool Polynomial::is_zero(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(), [tol](const auto& t) { return std::abs(t.second) <= tol; });
}

int Polynomial::max_exponent() const {
  int m = 0;
  for (const auto& [e, c] : terms_) {
    for (int x : e) m = std::max(m, x);
  }
  return m;
}

Polynomial Polynomial::derivative(int i) const {
  Polynomial out(variables_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponents d = e;
    --d[i];
    out.add_term(d, c * static_cast<double>(e[i]));
  }
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (variables_ == 0) variables_ = o.variables_;
  if (o.variables_ != variables_) throw UsageError("polynomials in different variable counts");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.variables_ != b.variables_) throw UsageError("polynomials in different variable counts");
  Polynomial out(a.variables_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Polynomial::Exponents e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial operator*(Complex s, Polynomial a) {
  Polynomial out(a.variables_);
  for (const auto& [e, c] : a.terms_) out.add_term(e, s * c);
  return out;
}

namespace {

// powers[j][k] = w_j^k
std::vector<std::vector<Complex>> power_table(std::span<const Complex> w, int max_exponent) {
  std::vector<std::vector<Complex>> powers(w.size(), std::vector<Complex>(max_exponent + 1, 1.0));
  for (std::size_t j = 0; j < w.size(); ++j) {
    for (int k = 1; k <= max_exponent; ++k) powers[j][k] = powers[j][k - 1] * w[j];
  }
  return powers;
}

}  // namespace

namespace {

Complex evaluate_with(const Polynomial& p, const std::vector<std::vector<Complex>>& powers) {
  Complex value = 0.0;
  for (const auto& [e, c] : p.terms()) {
    Complex mono = c;
    for (std::size_t j = 0; j < e.size(); ++j) mono *= powers[j][e[j]];
    value += mono;
  }
  return value;
}

}  // namespace

Complex Polynomial::evaluate(std::span<const Complex> w) const {
  if (static_cast<int>(w.size()) != variables_) throw UsageError("point dimension does not match polynomial");
  return evaluate_with(*this, power_table(w, max_exponent()));
}

void Polynomial::evaluate_with_gradient(std::span<const Complex> w, Complex& value,
                                        std::span<Complex> gradient) const {
  if (static_cast<int>(w.size()) != variables_ || gradient.size() != w.size()) {
    throw UsageError("point dimension does not match polynomial");
  }
  const auto powers = power_table(w, max_exponent());
  value = 0.0;
  std::fill(gradient.begin(), gradient.end(), Complex(0.0));
  for (const auto& [e, c] : terms_) {
    Complex mono = c;
    for (std::size_t j = 0; j < e.size(); ++j) mono *= powers[j][e[j]];
    value += mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      Complex d = c * static_cast<double>(e[i]) * powers[i][e[i] - 1];
      for (std::size_t j = 0; j < e.size(); ++j) {
        if (j != i) d *= powers[j][e[j]];
      }
      gradient[i] += d;
    }
  }
}

// ---------------------------------------------------------------------------
// Charts

namespace {

std::vector<std::vector<Polynomial>> compute_minors(const EmbeddedChart& chart) {
  const int count = static_cast<int>(chart.coordinates.size());
  std::vector<std::vector<Polynomial>> derivatives(count);
  for (int a = 0; a < count; ++a) {
    for (int i = 0; i < chart.n; ++i) derivatives[a].push_back(chart.coordinates[a].derivative(i));
  }
  std::vector<std::vector<Polynomial>> out;
  for (int a = 0; a < count; ++a) {
    for (int b = a + 1; b < count; ++b) {
      std::vector<Polynomial> row;
      bool zero = true;
      for (int i = 0; i < chart.n; ++i) {
        Polynomial m = chart.coordinates[a] * derivatives[b][i] + Complex(-1.0) * (chart.coordinates[b] * derivatives[a][i]);
        zero = zero && m.terms().empty();
        row.push_back(std::move(m));
      }
      if (!zero) out.push_back(std::move(row));
    }
  }
  return out;
}

}  // namespace

void EmbeddedChart::prepare() { minors = compute_minors(*this); }

EmbeddedChart EmbeddedChart::transformed(const Eigen::MatrixXcd& u) const {
  const int count = static_cast<int>(coordinates.size());
  if (u.rows() != count || u.cols() != count) throw UsageError("transform size does not match ambient space");
  EmbeddedChart out = *this;
  for (int a = 0; a < count; ++a) {
    Polynomial p(n);
    for (int b = 0; b < count; ++b) p += u(a, b) * coordinates[b];
    out.coordinates[a] = std::move(p);
  }
  out.prepare();
  return out;
}

EmbeddedChart EmbeddedChart::rescaled(const Polynomial& factor) const {
  EmbeddedChart out = *this;
  for (auto& p : out.coordinates) p = factor * p;
  out.prepare();
  return out;
}

namespace {

// Monomials of total degree <= d in `count` variables placed at `offset`
// inside a vector of `total` exponents, ordered by degree then lex.
std::vector<Polynomial::Exponents> monomials_up_to(int count, int d, int offset, int total) {
  std::vector<Polynomial::Exponents> out;
  Polynomial::Exponents e(total, 0);
  std::function<void(int, int)> exact = [&](int i, int remaining) {
    if (i == count - 1) {
      e[offset + i] = remaining;
      out.push_back(e);
      e[offset + i] = 0;
      return;
    }
    for (int x = remaining; x >= 0; --x) {
      e[offset + i] = x;
      exact(i + 1, remaining - x);
    }
    e[offset + i] = 0;
  };
  for (int degree = 0; degree <= d; ++degree) exact(0, degree);
  return out;
}

EmbeddedChart veronese_chart(int n, int d) {
  EmbeddedChart chart;
  chart.n = n;
  for (const auto& e : monomials_up_to(n, d, 0, n)) chart.coordinates.push_back(Polynomial::monomial(n, e));
  return chart;
}

EmbeddedChart segre_veronese_chart(const std::vector<int>& factors, const std::vector<int>& degrees) {
  const int n = std::accumulate(factors.begin(), factors.end(), 0);
  std::vector<Polynomial::Exponents> current{Polynomial::Exponents(n, 0)};
  int offset = 0;
  for (std::size_t f = 0; f < factors.size(); ++f) {
    std::vector<Polynomial::Exponents> next;
    for (const auto& base : current) {
      for (const auto& e : monomials_up_to(factors[f], degrees[f], offset, n)) {
        Polynomial::Exponents m = base;
        for (int i = 0; i < n; ++i) m[i] += e[i];
        next.push_back(std::move(m));
      }
    }
    current = std::move(next);
    offset += factors[f];
  }
  EmbeddedChart chart;
  chart.n = n;
  for (const auto& e : current) chart.coordinates.push_back(Polynomial::monomial(n, e));
  return chart;
}

// Variables (t, w_2, ..., w_n); coordinates w_j t^k for 0 <= k <= a_j with w_1 = 1.
EmbeddedChart scroll_chart(const std::vector<int>& a) {
  const int n = static_cast<int>(a.size());
  EmbeddedChart chart;
  chart.n = n;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k <= a[j]; ++k) {
      Polynomial::Exponents e(n, 0);
      e[0] = k;
      if (j > 0) e[j] = 1;
      chart.coordinates.push_back(Polynomial::monomial(n, e));
    }
  }
  for (int j = 0; j < n; ++j) chart.fiber_exponents.push_back(j == 0 ? 0 : a[j] - a[0]);
  return chart;
}

// Fermat quadric z_0^2 + ... + z_{n+1}^2 = 0 through
// [1 + s : i(s - 1) : -2i w_2 : ... : -2i w_{n+1}], s = sum w_j^2.
EmbeddedChart quadric_chart(int n) {
  const Complex i(0.0, 1.0);
  Polynomial s(n);
  for (int j = 0; j < n; ++j) {
    Polynomial::Exponents e(n, 0);
    e[j] = 2;
    s += Polynomial::monomial(n, e);
  }
  const Polynomial one = Polynomial::constant(n, 1.0);
  EmbeddedChart chart;
  chart.n = n;
  chart.coordinates.push_back(one + s);
  chart.coordinates.push_back(i * (s + Complex(-1.0) * one));
  for (int j = 0; j < n; ++j) {
    Polynomial::Exponents e(n, 0);
    e[j] = 1;
    chart.coordinates.push_back(Polynomial::monomial(n, e, -2.0 * i));
  }
  return chart;
}

struct ChartBuilder {
  const PolarizedPair& pair;
  EmbeddedChart operator()(const ProjectiveSpaceParams& p) const { return veronese_chart(p.n, p.twist); }
  EmbeddedChart operator()(const HypersurfaceParams& p) const {
    if (p.degree != 2) unsupported();
    return quadric_chart(p.n);
  }
  EmbeddedChart operator()(const CompleteIntersectionParams& p) const {
    if (p.degrees != std::vector<int>{2}) unsupported();
    return quadric_chart(p.n);
  }
  EmbeddedChart operator()(const ScrollParams& p) const { return scroll_chart(p.a); }
  EmbeddedChart operator()(const ProductParams& p) const { return segre_veronese_chart(p.factors, p.multidegree); }

  [[noreturn]] void unsupported() const {
    throw NumericsUnsupported("numerics unsupported for " + pair.label() +
                              ": only globally parametrized families (projective spaces, products, "
                              "scrolls, quadrics) have charts");
  }
};

// K A - b b^H = sum over pairs a < b of v v^H with v_i = phi_a d_i phi_b - phi_b d_i phi_a
// (Lagrange identity). Each term is rank one, so the sum stays positive
// semidefinite in floating point, and the minors are evaluated from their
// expanded form.
HermitianMatrix metric_at(const EmbeddedChart& chart, const std::vector<std::vector<Polynomial>>& minors,
                          std::span<const Complex> w) {
  const int n = chart.n;
  int top = 0;
  for (const auto& p : chart.coordinates) top = std::max(top, p.max_exponent());
  for (const auto& row : minors) {
    for (const auto& p : row) top = std::max(top, p.max_exponent());
  }
  const auto powers = power_table(w, top);

  double scale = 0.0;
  std::vector<Complex> values;
  values.reserve(chart.coordinates.size());
  for (const auto& p : chart.coordinates) {
    values.push_back(evaluate_with(p, powers));
    scale = std::max(scale, std::abs(values.back()));
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw NumericsError("Kähler potential vanishes or overflows at this point");
  }
  double potential = 0.0;
  for (const auto& v : values) potential += std::norm(v / scale);

  const double scale_sq = scale * scale;
  HermitianMatrix m = HermitianMatrix::Zero(n, n);
  Eigen::VectorXcd v(n);
  for (const auto& row : minors) {
    for (int i = 0; i < n; ++i) v(i) = evaluate_with(row[i], powers) / scale_sq;
    m.noalias() += v * v.adjoint();
  }
  return (chart.kappa / (potential * potential)) * m;
}

const std::vector<std::vector<Polynomial>>& minors_of(const EmbeddedChart& chart,
                                                      std::vector<std::vector<Polynomial>>& storage) {
  if (!chart.minors.empty()) return chart.minors;
  storage = compute_minors(chart);
  return storage;
}

// Returns log det g; throws when g is not positive definite.
double log_det(const HermitianMatrix& g) {
  Eigen::LLT<HermitianMatrix> llt(g);
  if (llt.info() != Eigen::Success) {
    throw NumericsError("pullback metric is not positive definite (chart rank drops at this point)");
  }
  double s = 0.0;
  for (Eigen::Index i = 0; i < g.rows(); ++i) s += std::log(llt.matrixL()(i, i).real());
  return 2.0 * s;
}


}  // namespace

EmbeddedChart embed(const PolarizedPair& pair) {
  EmbeddedChart chart = std::visit(ChartBuilder{pair}, pair.params());
  chart.provenance = pair.label();
  chart.prepare();
  const Point origin(chart.n, Complex(0.0));
  try {
    (void)log_det(pullback_metric(chart, origin));
  } catch (const NumericsError& e) {
    throw ConfigurationError("chart for " + pair.label() + " is degenerate at the origin: " + e.what());
  }
  return chart;
}

HermitianMatrix pullback_metric(const EmbeddedChart& chart, std::span<const Complex> w) {
  if (static_cast<int>(w.size()) != chart.n) throw UsageError("point dimension does not match chart");
  std::vector<std::vector<Polynomial>> storage;
  HermitianMatrix g = metric_at(chart, minors_of(chart, storage), w);
  (void)log_det(g);
  return g;
}

namespace {

// Finite differences run in a holomorphic frame w = w0 + M z, M = conj(U) D for
// g = U diag(lambda) U^H, in which the metric is diagonal. D = step *
// sqrt(kappa / lambda) makes unit steps in z equally long in the metric however
// anisotropic the chart is at w0; it is capped at 3 step (1 + |w|) so that no
// step reaches across the chart in directions where g is nearly degenerate.
//
// Along a complex line z = zeta v the mixed derivative d_v dbar_v is a quarter
// of the planar Laplacian in (Re zeta, Im zeta), taken with the nine-point
// stencil. Its leading error is proportional to the bilaplacian, which
// vanishes on the pluriharmonic part of log det g (the chart Jacobian), so
// only the intrinsic curvature contributes truncation error. Off-diagonal
// entries follow by polarization.
CurvatureSample evaluate_curvature(const EmbeddedChart& chart, std::span<const Complex> w, double step,
                                   bool with_ricci) {
  const int n = chart.n;
  if (static_cast<int>(w.size()) != n) throw UsageError("point dimension does not match chart");
  if (!(step > 0.0)) throw UsageError("finite-difference step must be positive");

  CurvatureSample out;
  out.point.assign(w.begin(), w.end());
  std::vector<std::vector<Polynomial>> storage;
  const auto& minors = minors_of(chart, storage);
  out.metric = metric_at(chart, minors, w);

  const Eigen::SelfAdjointEigenSolver<HermitianMatrix> eig(out.metric);
  if (eig.info() != Eigen::Success || !(eig.eigenvalues().minCoeff() > 0.0)) {
    throw NumericsError("pullback metric is not positive definite (chart rank drops at this point)");
  }
  const Eigen::VectorXd lambda = eig.eigenvalues();
  double norm = 0.0;
  for (const auto& z : w) norm += std::norm(z);
  const double cap = 3.0 * (1.0 + std::sqrt(norm));
  Eigen::VectorXd d(n);
  for (int k = 0; k < n; ++k) d(k) = step * std::min(std::sqrt(chart.kappa / lambda(k)), cap);
  const HermitianMatrix frame = eig.eigenvectors().conjugate() * d.asDiagonal();

  Point shifted(n);
  auto f = [&](const Eigen::VectorXcd& u, double a, double b) {
    const Complex zeta(a, b);
    for (int i = 0; i < n; ++i) shifted[i] = w[i] + zeta * u(i);
    return log_det(metric_at(chart, minors, shifted));
  };
  const double f0 = log_det(out.metric);
  // d_v dbar_v log det g for the frame direction v, with u = M v.
  auto line = [&](const Eigen::VectorXcd& u) {
    const double axis = f(u, 1, 0) + f(u, -1, 0) + f(u, 0, 1) + f(u, 0, -1);
    const double diagonal = f(u, 1, 1) + f(u, 1, -1) + f(u, -1, 1) + f(u, -1, -1);
    return 0.25 * (4.0 * axis + diagonal - 20.0 * f0) / 6.0;
  };

  HermitianMatrix hessian = HermitianMatrix::Zero(n, n);  // in the z frame
  for (int k = 0; k < n; ++k) hessian(k, k) = line(frame.col(k));
  if (with_ricci) {
    const double r = std::sqrt(0.5);
    const Complex i(0.0, 1.0);
    for (int k = 0; k < n; ++k) {
      for (int l = k + 1; l < n; ++l) {
        const double re = (line(r * (frame.col(k) + frame.col(l))) - line(r * (frame.col(k) - frame.col(l)))) / 2.0;
        const double im =
            (line(r * (frame.col(k) + i * frame.col(l))) - line(r * (frame.col(k) - i * frame.col(l)))) / 2.0;
        hessian(k, l) = Complex(re, im);
        hessian(l, k) = Complex(re, -im);
      }
    }
    // Back to w coordinates: R = U D^-1 (-H) D^-1 U^H.
    const HermitianMatrix back = eig.eigenvectors() * d.cwiseInverse().asDiagonal();
    out.ricci = -(back * hessian * back.adjoint());
  }

  // g = diag(d^2 lambda) in the z frame.
  double trace = 0.0;
  for (int k = 0; k < n; ++k) trace += hessian(k, k).real() / (d(k) * d(k) * lambda(k));
  out.scalar = -2.0 * trace;
  out.sigma_sq = n * (n + 1.0) - out.scalar;
  out.volume_weight = std::exp(f0);
  if (!std::isfinite(out.scalar) || !std::isfinite(out.volume_weight)) {
    throw NumericsError("non-finite curvature at this point; try a different finite-difference step");
  }
  return out;
}

}  // namespace

CurvatureSample curvature_sample(const EmbeddedChart& chart, std::span<const Complex> w, double step) {
  return evaluate_curvature(chart, w, step, true);
}

double scalar_curvature(const EmbeddedChart& chart, std::span<const Complex> w, double step) {
  return evaluate_curvature(chart, w, step, false).scalar;
}

double sigma_sq_pointwise(const EmbeddedChart& chart, std::span<const Complex> w, double step) {
  return evaluate_curvature(chart, w, step, false).sigma_sq;
}

// ---------------------------------------------------------------------------
// Sampling

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

double SampleStream::uniform() {
  const std::uint64_t bits = splitmix64(splitmix64(seed_ ^ splitmix64(index_)) + counter_++);
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

namespace {

double fiber_scale(std::span<const int> exponents, int j, Complex base) {
  if (j == 0 || exponents.empty() || exponents[j] == 0) return 1.0;
  return std::pow(1.0 + std::norm(base), -0.5 * exponents[j]);
}

double plane_density(Complex z) {
  const double q = 1.0 + std::norm(z);
  return 1.0 / (std::numbers::pi * q * q);
}

}  // namespace

Point sample_point(int n, SampleStream& stream, std::span<const int> fiber_exponents) {
  if (!fiber_exponents.empty() && static_cast<int>(fiber_exponents.size()) != n) {
    throw UsageError("one fiber exponent per chart variable");
  }
  Point w(n);
  if (stream.uniform() < 0.5) {
    for (int j = 0; j < n; ++j) {
      const double u = stream.uniform();
      const double r = std::sqrt(u / (1.0 - u));
      const double theta = 2.0 * std::numbers::pi * stream.uniform();
      w[j] = std::polar(r, theta) * (j == 0 ? 1.0 : fiber_scale(fiber_exponents, j, w[0]));
    }
    return w;
  }
  // Uniform point of S^{2n+1} from complex Gaussians, then affine coordinates.
  auto gaussian = [&stream] {
    const double r = std::sqrt(-std::log(stream.uniform()));
    return std::polar(r, 2.0 * std::numbers::pi * stream.uniform());
  };
  const Complex z0 = gaussian();
  for (auto& z : w) z = gaussian() / z0;
  return w;
}

double sampling_density(std::span<const Complex> w, std::span<const int> fiber_exponents) {
  const int n = static_cast<int>(w.size());
  if (!fiber_exponents.empty() && static_cast<int>(fiber_exponents.size()) != n) {
    throw UsageError("one fiber exponent per chart variable");
  }
  double product = 1.0;
  double norm = 0.0;
  for (int j = 0; j < n; ++j) {
    const double s = n > 0 ? fiber_scale(fiber_exponents, j, w[0]) : 1.0;
    product *= plane_density(w[j] / s) / (s * s);
    norm += std::norm(w[j]);
  }
  double fubini_study = std::pow(std::numbers::pi * (1.0 + norm), -(n + 1)) * std::numbers::pi;
  for (int k = 2; k <= n; ++k) fubini_study *= k;
  return 0.5 * (product + fubini_study);
}

int default_thread_count() {
  if (const char* env = std::getenv("POLRIG_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

IntegrationResult mean_sigma_numeric(const EmbeddedChart& chart, std::int64_t samples, std::uint64_t seed,
                                     const IntegrationOptions& options) {
  if (samples < kMinimumSamples) {
    throw UsageError("mean_sigma_numeric needs at least " + std::to_string(kMinimumSamples) + " samples");
  }
  if (options.batches < 20) throw UsageError("batch-means error needs at least 20 batches");
  if (samples < options.batches) throw UsageError("fewer samples than batches");

  const auto count = static_cast<std::size_t>(samples);
  std::vector<double> weight(count);
  std::vector<double> sigma(count);

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      SampleStream stream(seed, i);
      const Point w = sample_point(chart.n, stream, chart.fiber_exponents);
      const CurvatureSample s = evaluate_curvature(chart, w, options.step, false);
      weight[i] = s.volume_weight / sampling_density(w, chart.fiber_exponents);
      sigma[i] = s.sigma_sq;
    }
  };

  const int threads = std::max(1, std::min<int>(options.threads > 0 ? options.threads : default_thread_count(),
                                                static_cast<int>(count / 1000) + 1));
  if (threads == 1) {
    work(0, count);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (int t = 0; t < threads; ++t) {
      const std::size_t begin = count * t / threads;
      const std::size_t end = count * (t + 1) / threads;
      pool.emplace_back([&, t, begin, end] {
        try {
          work(begin, end);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  // Fixed-order reduction: results do not depend on the thread count.
  const int n = chart.n;
  double vol_pn = std::pow(chart.kappa * std::numbers::pi, n);
  for (int k = 2; k <= n; ++k) vol_pn /= k;

  const int batches = options.batches;
  std::vector<double> batch_mean(batches);
  std::vector<double> batch_volume(batches);
  double total_w = 0.0;
  double total_ws = 0.0;
  double total_w2 = 0.0;
  for (int b = 0; b < batches; ++b) {
    const std::size_t begin = count * b / batches;
    const std::size_t end = count * (b + 1) / batches;
    double sw = 0.0;
    double sws = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      sw += weight[i];
      sws += weight[i] * sigma[i];
      total_w2 += weight[i] * weight[i];
    }
    batch_mean[b] = sws / sw;
    batch_volume[b] = sw / static_cast<double>(end - begin) / vol_pn;
    total_w += sw;
    total_ws += sws;
  }

  auto standard_error = [batches](const std::vector<double>& v) {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / batches;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / (batches - 1) / batches);
  };

  IntegrationResult r;
  r.sample_count = samples;
  r.seed = seed;
  r.mean_estimate = total_ws / total_w;
  r.standard_error = standard_error(batch_mean);
  r.volume_ratio_estimate = total_w / static_cast<double>(count) / vol_pn;
  r.volume_standard_error = standard_error(batch_volume);
  r.effective_sample_size = total_w * total_w / total_w2;
  if (r.effective_sample_size < 0.01 * static_cast<double>(count)) {
    throw NumericsError("importance weights degenerate (effective sample size " +
                        std::to_string(r.effective_sample_size) + " of " + std::to_string(count) +
                        "); increase the sample count");
  }
  return r;
}

// ---------------------------------------------------------------------------
// Calibration

std::vector<Point> calibration_points(int n) {
  // Low-discrepancy points in the polydisc |w_j| < 2.
  constexpr double a1 = 0.6180339887498949;
  constexpr double a2 = 0.7548776662466927;
  std::vector<Point> points;
  for (int k = 0; k < 25; ++k) {
    Point w(n);
    for (int j = 0; j < n; ++j) {
      const double x = std::fmod((k + 1) * a1 + j * 0.4142135623730950, 1.0);
      const double y = std::fmod((k + 1) * a2 + j * 0.2360679774997897, 1.0);
      w[j] = std::polar(2.0 * x, 2.0 * std::numbers::pi * y);
    }
    points.push_back(std::move(w));
  }
  return points;
}

CalibrationReport calibrate(int n, double step, double kappa) {
  if (n < 1) throw UsageError("calibration needs n ≥ 1");
  if (!(step > 0.0)) throw UsageError("finite-difference step must be positive");
  if (!(kappa > 0.0)) throw UsageError("normalization must be positive");
  EmbeddedChart chart = embed(PolarizedPair::projective_space(n, 1));
  chart.kappa = kappa;

  CalibrationReport report;
  report.n = n;
  report.step = step;
  report.kappa = kappa;
  report.expected_scalar = n * (n + 1.0);
  double sum = 0.0;
  const auto points = calibration_points(n);
  for (const auto& w : points) {
    const double s = scalar_curvature(chart, w, step);
    sum += s;
    report.max_deviation = std::max(report.max_deviation, std::abs(s - report.expected_scalar));
  }
  report.mean_scalar = sum / static_cast<double>(points.size());
  report.passed = report.max_deviation < report.tolerance;
  return report;
}

}  // namespace polrig::numgeo
