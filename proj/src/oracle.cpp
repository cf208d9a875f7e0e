#include "qklyst/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qklyst/constants.hpp"
#include "qklyst/errors.hpp"

namespace qklyst::oracle {
namespace {

constexpr double kPi = std::numbers::pi;
using Complex = std::complex<double>;

double sq(double x) { return x * x; }

// Adaptive Simpson on a complex integrand. The local acceptance test is the
// standard |S2 - S1| <= 15 tol with the Richardson-corrected value
// returned, so the delivered error is far below the requested tolerance for
// smooth integrands.
template <typename F>
Complex simpson(const F& f, double a, double m, double b, Complex fa,
                Complex fm, Complex fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
Complex adaptive_simpson_rec(const F& f, double a, double b, Complex fa,
                             Complex fm, Complex fb, Complex whole,
                             double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const Complex flm = f(lm);
  const Complex frm = f(rm);
  const Complex left = simpson(f, a, lm, m, fa, flm, fm);
  const Complex right = simpson(f, m, rm, b, fm, frm, fb);
  const Complex delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol,
                              depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol,
                              depth - 1);
}

template <typename F>
Complex adaptive_simpson(const F& f, double a, double b, double tol) {
  const double m = 0.5 * (a + b);
  const Complex fa = f(a);
  const Complex fm = f(m);
  const Complex fb = f(b);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb,
                              simpson(f, a, m, b, fa, fm, fb), tol, 48);
}

}  // namespace

bool trace_is_converging(std::span<const TracePoint> trace) {
  for (size_t i = 1; i < trace.size(); ++i) {
    if (trace[i].error > trace[i - 1].error * (1.0 + 1e-12)) return false;
  }
  return true;
}

QuadratureCheck matrix_element_quadrature(double k, double k_prime, double d,
                                          double L, double abs_tol) {
  if (!(d > 0.0) || !(d < L))
    throw std::invalid_argument("need 0 < d < L");
  if (!(abs_tol > 0.0)) throw std::invalid_argument("tolerance must be > 0");
  const double q = k - k_prime;
  if (std::abs(q) < 1e-6 * std::abs(k))
    throw std::invalid_argument(
        "k' too close to k: the closed form is singular at k = k' and its "
        "limit is not defined");

  // Keep the integration essentially exact so the comparison measures the
  // formula, not the quadrature.
  const auto integrand = [q](double x) {
    return x * std::exp(Complex(0.0, q * x));
  };
  const Complex integral = adaptive_simpson(integrand, 0.0, d, abs_tol / 64.0);

  // Split off the non-resonant boundary term; the remainder is the
  // resonant piece whose magnitude the closed form states.
  const Complex boundary =
      std::exp(Complex(0.0, q * d)) * d / Complex(0.0, q);
  const Complex resonant = integral - boundary;

  QuadratureCheck check;
  check.quadrature = std::norm(resonant) / (2.0 * L * L);
  const double s = std::sin(0.5 * q * d);
  check.closed_form = 2.0 * s * s / (L * L * sq(sq(q)));
  check.relative_error =
      check.closed_form != 0.0
          ? std::abs(check.quadrature - check.closed_form) /
                std::abs(check.closed_form)
          : std::abs(check.quadrature - check.closed_form);
  return check;
}

namespace {

struct GoldenRuleGeometry {
  double alpha = 0.0;
  double k_on_shell = 0.0;  // k0'
  double q0 = 0.0;          // k - k0'
  double slope = 0.0;       // |dD/dk'| at the pole, hbar^2 k0' / m
};

GoldenRuleGeometry golden_rule_geometry(double k, double omega) {
  if (!(k > 0.0) || !(omega > 0.0))
    throw std::invalid_argument("k and omega must be positive");
  GoldenRuleGeometry g;
  g.alpha = constants::electron_mass * omega / (constants::hbar * k * k);
  if (!(g.alpha < 0.5))
    throw PhysicalValidityError(
        "no on-shell intermediate state: alpha >= 1/2");
  g.k_on_shell = k * std::sqrt(1.0 - 2.0 * g.alpha);
  g.q0 = k - g.k_on_shell;
  g.slope = sq(constants::hbar) * g.k_on_shell / constants::electron_mass;
  return g;
}

// Resonant gap matrix element with the phase convention consistent with
// |M|^2 = 2 sin^2(q d / 2) / (L^2 q^4).
Complex resonant_matrix_element(double q, double d, double L) {
  return (std::exp(Complex(0.0, q * d)) - 1.0) /
         (std::numbers::sqrt2 * L * q * q);
}

// Window half-width around the pole, in units of the resonance width
// epsilon / |D'|.
constexpr double kWindowWidths = 20.0;

// One finite-regulator evaluation of the on-shell coefficient, normalized
// by the analytic form (the ratio is box-size free).
double golden_rule_ratio(double k, double omega, const KlystronParams& pr,
                         double epsilon, double L) {
  const auto geo = golden_rule_geometry(k, omega);
  const double d = pr.gap_width;
  const double width = epsilon / geo.slope;  // resonance width in k'
  const double window = kWindowWidths * width;

  if (geo.q0 - window < 1e-6 * k)
    throw std::invalid_argument(
        "epsilon too large: resonance window reaches the q -> 0 "
        "singularity of the matrix element");
  const double modes_in_width = epsilon * L / (kPi * geo.slope);
  if (modes_in_width < 1000.0)
    throw std::invalid_argument(
        "L too small: need at least 1000 k' modes inside the resonance "
        "width");

  // T ~= integral of M(k') times the Lorentzian delta representation.
  const double spacing = 2.0 * kPi / L;
  const auto j_lo =
      static_cast<long long>(std::ceil((geo.k_on_shell - window) / spacing));
  const auto j_hi =
      static_cast<long long>(std::floor((geo.k_on_shell + window) / spacing));
  Complex t_sum = 0.0;
  for (long long j = j_lo; j <= j_hi; ++j) {
    const double kp = static_cast<double>(j) * spacing;
    const double q = k - kp;
    const double delta = 0.5 * sq(constants::hbar) * (k * k - kp * kp) /
                             constants::electron_mass -
                         constants::hbar * omega;
    const double lorentz = (1.0 / kPi) * epsilon / (delta * delta + epsilon * epsilon);
    t_sum += resonant_matrix_element(q, d, L) * lorentz;
  }
  Complex t = t_sum * spacing;
  // Lorentzian mass outside the window, with M frozen at the pole.
  const double tail = 1.0 - (2.0 / kPi) * std::atan(kWindowWidths);
  t += resonant_matrix_element(geo.q0, d, L) / geo.slope * tail;

  // On-shell coefficient assembled with the printed prefactors; the second
  // (unsummed) gap contributes the on-shell matrix element squared.
  const double m_y_sq = std::norm(resonant_matrix_element(geo.q0, d, L));
  const double vertex = sq(constants::elementary_charge / (L * d)) * kPi *
                        constants::hbar * omega / pr.capacitance;
  const double n1 = pr.photon_number + 1.0;
  const double coeff_disc = (4.0 * kPi / constants::hbar) * sq(n1) *
                            sq(vertex) * m_y_sq * sq(L) * std::norm(t);

  // Analytic on-shell form (charge factor e^4, consistent with the squared
  // second-order amplitude).
  const double sin_half = std::sin(0.5 * geo.q0 * d);
  const double sin4 = sq(sq(sin_half));
  const double e4 = sq(sq(constants::elementary_charge));
  const double coeff_ana =
      16.0 * kPi * kPi * kPi * e4 * sq(constants::electron_mass) *
      sq(omega) * sq(n1) * sin4 /
      (std::pow(constants::hbar, 3) * sq(pr.capacitance) * sq(sq(d)) *
       std::pow(L, 6) * sq(geo.k_on_shell) * std::pow(geo.q0, 8));

  return coeff_disc / coeff_ana;
}

double analytic_coefficient(double k, double omega, const KlystronParams& pr,
                            double L) {
  const auto geo = golden_rule_geometry(k, omega);
  const double d = pr.gap_width;
  const double sin_half = std::sin(0.5 * geo.q0 * d);
  const double sin4 = sq(sq(sin_half));
  const double e4 = sq(sq(constants::elementary_charge));
  const double n1 = pr.photon_number + 1.0;
  return 16.0 * kPi * kPi * kPi * e4 * sq(constants::electron_mass) *
         sq(omega) * sq(n1) * sin4 /
         (std::pow(constants::hbar, 3) * sq(pr.capacitance) * sq(sq(d)) *
          std::pow(L, 6) * sq(geo.k_on_shell) * std::pow(geo.q0, 8));
}

}  // namespace

void golden_rule_defaults(double k, double omega, double* epsilon0,
                          double* L0) {
  const auto geo = golden_rule_geometry(k, omega);
  // First-entry smearing error ~1e-2 and ~1200 modes in the width.
  *epsilon0 = 2e-3 * constants::hbar * omega;
  *L0 = 1200.0 * kPi * geo.slope / *epsilon0;
}

VerificationReport golden_rule_sum(double k, double omega,
                                   const KlystronParams& params,
                                   double epsilon0, double L0) {
  if (!(epsilon0 > 0.0) || !(L0 > 0.0))
    throw std::invalid_argument("epsilon0 and L0 must be positive");

  constexpr int kScheduleLength = 6;
  std::array<double, kScheduleLength> ratios{};
  double epsilon = epsilon0;
  double L = L0;
  for (int i = 0; i < kScheduleLength; ++i) {
    ratios[static_cast<size_t>(i)] =
        golden_rule_ratio(k, omega, params, epsilon, L);
    epsilon *= 0.5;
    L *= 2.0;
  }

  VerificationReport report;
  report.name = "golden-rule-contour-sum";
  report.tolerance = 0.05;
  double extrapolated = ratios[0];
  epsilon = epsilon0;
  for (int i = 0; i + 1 < kScheduleLength; ++i) {
    // Richardson on the halving schedule removes the regulator-linear term.
    extrapolated = 2.0 * ratios[static_cast<size_t>(i + 1)] -
                   ratios[static_cast<size_t>(i)];
    epsilon *= 0.5;
    report.trace.push_back({epsilon, std::abs(extrapolated - 1.0)});
  }

  report.analytic = analytic_coefficient(k, omega, params, L0);
  report.oracle = extrapolated * report.analytic;
  report.relative_error = std::abs(extrapolated - 1.0);
  if (!trace_is_converging(report.trace)) {
    report.name += " (non-convergent)";
    report.relative_error = std::numeric_limits<double>::infinity();
  }
  report.passed = report.relative_error <= report.tolerance;
  return report;
}

VerificationReport verify_expansion(double k, double omega,
                                    std::span<const double> alpha_schedule) {
  if (alpha_schedule.size() < 3)
    throw std::invalid_argument("need at least 3 schedule points");
  if (!(k > 0.0) || !(omega > 0.0))
    throw std::invalid_argument("k and omega must be positive");
  for (double a : alpha_schedule) {
    if (!(a > 0.0 && a < 0.1))
      throw std::invalid_argument("schedule alphas must lie in (0, 0.1)");
  }

  std::vector<double> alphas(alpha_schedule.begin(), alpha_schedule.end());
  std::sort(alphas.begin(), alphas.end(), std::greater<double>());

  VerificationReport report;
  report.name = "emission-wavenumber-expansion-order";
  std::vector<double> log_a;
  std::vector<double> log_e;
  for (double alpha : alphas) {
    // omega_a realizes this alpha at wavenumber k.
    const double omega_a =
        alpha * constants::hbar * k * k / constants::electron_mass;
    const double exact = wavenumber_after_emission_exact(k, omega_a);
    const double approx = wavenumber_after_emission_approx(k, omega_a);
    const double err = std::abs(approx - exact) / k;
    report.trace.push_back({alpha, err});
    log_a.push_back(std::log(alpha));
    log_e.push_back(std::log(err));
  }

  // Least-squares slope of log err vs log alpha.
  const auto n = static_cast<double>(alphas.size());
  double sa = 0.0, se = 0.0, saa = 0.0, sae = 0.0;
  for (size_t i = 0; i < alphas.size(); ++i) {
    sa += log_a[i];
    se += log_e[i];
    saa += log_a[i] * log_a[i];
    sae += log_a[i] * log_e[i];
  }
  const double slope = (n * sae - sa * se) / (n * saa - sa * sa);
  const double alpha_min = alphas.back();
  const double constant =
      report.trace.back().error / (alpha_min * alpha_min * alpha_min);

  report.analytic = 3.0;
  report.oracle = slope;
  report.tolerance = 1.0;
  report.relative_error = std::max(std::abs(slope - 3.0) / 0.05,
                                   std::abs(constant - 0.5) / 0.02);
  if (!trace_is_converging(report.trace)) {
    report.name += " (non-convergent)";
    report.relative_error = std::numeric_limits<double>::infinity();
  }
  report.passed = report.relative_error <= report.tolerance;
  return report;
}

VerificationReport verify_rate_identity(const KlystronParams& params) {
  const RateBreakdown rates = rate_total(params);

  VerificationReport report;
  report.name = "rate-identity";
  report.tolerance = 1e-12;
  report.analytic = rates.total;
  report.oracle = rates.stimulated + rates.spontaneous;
  const double scale = std::max(std::abs(rates.total), 1e-300);
  const double identity_err = std::abs(report.oracle - rates.total) / scale;

  // Bracket decomposition: the stimulated closed form must equal the
  // doubled stored-energy part of the combined form.
  const double j0 = electron_flux(params);
  const double ep = stored_photon_energy(params);
  const double g = gain_factor(
      transit_angle(params.omega, params.gap_width, params.velocity));
  const double denom = constants::electron_mass *
                       sq(sq(constants::hbar)) * sq(params.capacitance) *
                       sq(sq(params.gap_width)) * std::pow(params.omega, 7);
  const double from_bracket = 32.0 * kPi * kPi * kPi * sq(j0) *
                              (2.0 * sq(ep)) / denom * g;
  const double stimulated = rate_stimulated(params);
  const double bracket_scale = std::max(std::abs(stimulated), 1e-300);
  const double bracket_err =
      stimulated == 0.0 && from_bracket == 0.0
          ? 0.0
          : std::abs(from_bracket - stimulated) / bracket_scale;

  report.relative_error = std::max(identity_err, bracket_err);
  report.passed = report.relative_error <= report.tolerance;
  return report;
}

PptResult ppt_negativity(const DensityMatrix4& rho) {
  rho.validate();
  Matrix4c pt;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int kk = 0; kk < 2; ++kk)
        for (int l = 0; l < 2; ++l)
          pt(2 * i + j, 2 * kk + l) = rho.entries(2 * i + l, 2 * kk + j);

  Eigen::SelfAdjointEigenSolver<Matrix4c> es(pt, Eigen::EigenvaluesOnly);
  PptResult result;
  for (int i = 0; i < 4; ++i) {
    const double lambda = es.eigenvalues()(i);
    if (lambda < 0.0) result.negativity -= lambda;
  }
  result.is_entangled = result.negativity > 1e-10;
  return result;
}

}  // namespace qklyst::oracle
