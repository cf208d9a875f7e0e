#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qklyst/klystron_model.hpp"

namespace qklyst {

/// Default gamma window for the gain-peak search: the first positive lobe
/// (pi, 2 pi] plus the negative lobe before it. g grows roughly linearly in
/// gamma across later lobes, so a window reaching past 2 pi would move the
/// global maximum away from the first-lobe operating point the device
/// design targets.
inline constexpr double kDefaultPeakWindow = 6.283185307179586;  // 2 pi

struct PeakGain {
  double gamma_star = 0.0;
  double g_star = 0.0;
};

/// Global maximum of gain_factor on (0, gamma_max]: dense scan (step <=
/// 1e-3) followed by golden-section refinement to an interval below 1e-8.
/// Deterministic; boundary maxima are reported as such.
PeakGain peak_gain(double gamma_max = kDefaultPeakWindow,
                   double scan_step = 1e-3);

/// Operating point derived from the photon frequency and gap width.
struct DesignReport {
  double gamma_star = 0.0;              // targeted transit angle
  double g_star = 0.0;                  // gain factor there
  double velocity = 0.0;                // m/s
  double v_over_c = 0.0;                // dimensionless
  double acceleration_voltage = 0.0;    // U0 = m v^2 / (2 e), volts
  double alpha = 0.0;                   // hbar omega / (m v^2)
  std::vector<std::string> warnings;

  double theta_g() const { return 2.0 * gamma_star; }
};

/// Design chain: omega = 2 pi f, v = omega d / (2 gamma), U0 = m v^2 /
/// (2 e). gamma_target defaults to the peak_gain() maximizer. Throws
/// PhysicalValidityError when the required velocity reaches 0.1 c; adds a
/// warning above 0.01 c.
DesignReport design_for(double frequency_hz, double gap_width,
                        std::optional<double> gamma_target = std::nullopt);

struct GainSample {
  double gamma = 0.0;
  double g = 0.0;
};

/// Uniform samples of gain_factor on (gamma_min, gamma_max]: steps points
/// at gamma_min + i (gamma_max - gamma_min) / steps, i = 1..steps.
/// Requires 0 <= gamma_min < gamma_max and steps >= 2.
std::vector<GainSample> sweep_gain(double gamma_min, double gamma_max,
                                   int steps);

enum class SweepAxis { Omega, GapWidth, Velocity, PhotonNumber, ElectronCount };

/// One row of a rate sweep. rates is empty when this row's parameters
/// violate an invariant; error then carries the reason and the sweep
/// continues.
struct RateRow {
  double axis_value = 0.0;
  std::optional<RateBreakdown> rates;
  std::string error;
};

/// Evaluates rate_total along one parameter axis: steps rows uniformly from
/// min to max inclusive (steps >= 2), or a single row at min when
/// steps == 1.
std::vector<RateRow> sweep_rates(const KlystronParams& base, SweepAxis axis,
                                 double min, double max, int steps);

}  // namespace qklyst
