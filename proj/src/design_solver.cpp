#include "qklyst/design_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qklyst/constants.hpp"
#include "qklyst/errors.hpp"

namespace qklyst {
namespace {

constexpr double kPi = std::numbers::pi;

// Golden-section maximization of gain_factor on [a, b] down to an interval
// of width tol.
double golden_section_max(double a, double b, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = gain_factor(x1);
  double f2 = gain_factor(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = gain_factor(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = gain_factor(x1);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

PeakGain peak_gain(double gamma_max, double scan_step) {
  if (!(gamma_max > kPi))
    throw std::invalid_argument("peak_gain: gamma_max must exceed pi");
  if (!(scan_step > 0.0) || scan_step > 1e-3)
    throw std::invalid_argument("peak_gain: scan step must be in (0, 1e-3]");

  const auto steps = static_cast<long>(std::ceil(gamma_max / scan_step));
  double best_gamma = gamma_max;
  double best_g = gain_factor(gamma_max);
  for (long i = 1; i < steps; ++i) {
    const double gamma = std::min(i * scan_step, gamma_max);
    const double g = gain_factor(gamma);
    if (g > best_g) {
      best_g = g;
      best_gamma = gamma;
    }
  }

  const double lo = std::max(best_gamma - scan_step, scan_step * 0.5);
  const double hi = std::min(best_gamma + scan_step, gamma_max);
  const double gamma_star = golden_section_max(lo, hi, 1e-8);

  PeakGain out;
  // The bracket midpoint can land a hair below the boundary maximum; keep
  // whichever evaluation wins.
  out.gamma_star = gamma_star;
  out.g_star = gain_factor(gamma_star);
  if (best_g > out.g_star) {
    out.gamma_star = best_gamma;
    out.g_star = best_g;
  }
  return out;
}

DesignReport design_for(double frequency_hz, double gap_width,
                        std::optional<double> gamma_target) {
  if (!(frequency_hz > 0.0) || !(gap_width > 0.0))
    throw std::invalid_argument(
        "design_for: frequency and gap width must be positive");
  if (gamma_target && !(*gamma_target > 0.0))
    throw std::invalid_argument("design_for: gamma target must be positive");

  DesignReport report;
  report.gamma_star = gamma_target ? *gamma_target : peak_gain().gamma_star;
  report.g_star = gain_factor(report.gamma_star);

  const double omega = 2.0 * kPi * frequency_hz;
  report.velocity = omega * gap_width / (2.0 * report.gamma_star);
  report.v_over_c = report.velocity / constants::speed_of_light;
  if (report.v_over_c >= 0.1)
    throw PhysicalValidityError(
        "design requires v >= 0.1 c; nonrelativistic model invalid");
  report.acceleration_voltage = constants::electron_mass *
                                report.velocity * report.velocity /
                                (2.0 * constants::elementary_charge);
  report.alpha = constants::hbar * omega /
                 (constants::electron_mass * report.velocity *
                  report.velocity);

  if (report.v_over_c >= 0.01)
    report.warnings.push_back(
        "v/c = " + std::to_string(report.v_over_c) +
        " >= 0.01; relativistic corrections neglected");
  if (report.alpha > 0.1)
    report.warnings.push_back("alpha = " + std::to_string(report.alpha) +
                              " > 0.1; small-alpha expansion degrades");
  return report;
}

std::vector<GainSample> sweep_gain(double gamma_min, double gamma_max,
                                   int steps) {
  if (!(gamma_min >= 0.0) || !(gamma_min < gamma_max))
    throw std::invalid_argument(
        "sweep_gain: need 0 <= gamma_min < gamma_max");
  if (steps < 2) throw std::invalid_argument("sweep_gain: steps must be >= 2");

  const double h = (gamma_max - gamma_min) / steps;
  std::vector<GainSample> curve(static_cast<size_t>(steps));
  for (int i = 1; i <= steps; ++i) {
    const double gamma = gamma_min + i * h;
    curve[static_cast<size_t>(i - 1)] = {gamma, gain_factor(gamma)};
  }
  return curve;
}

std::vector<RateRow> sweep_rates(const KlystronParams& base, SweepAxis axis,
                                 double min, double max, int steps) {
  if (steps < 1) throw std::invalid_argument("sweep_rates: steps must be >= 1");
  if (steps > 1 && !(min < max))
    throw std::invalid_argument("sweep_rates: need min < max");

  std::vector<RateRow> rows;
  rows.reserve(static_cast<size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double value =
        steps == 1 ? min : min + (max - min) * i / (steps - 1);
    KlystronParams p = base;
    switch (axis) {
      case SweepAxis::Omega: p.omega = value; break;
      case SweepAxis::GapWidth: p.gap_width = value; break;
      case SweepAxis::Velocity: p.velocity = value; break;
      case SweepAxis::PhotonNumber: p.photon_number = value; break;
      case SweepAxis::ElectronCount: p.electron_count = value; break;
    }
    RateRow row;
    row.axis_value = value;
    try {
      row.rates = rate_total(p);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace qklyst
