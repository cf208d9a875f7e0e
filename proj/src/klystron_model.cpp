#include "qklyst/klystron_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qklyst/constants.hpp"
#include "qklyst/errors.hpp"

namespace qklyst {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi3 = kPi * kPi * kPi;

double sq(double x) { return x * x; }

// gamma cot gamma - 1 without cancellation for small |gamma|:
// -(g^2/3 + g^4/45 + 2 g^6/945 + g^8/4725 + 2 g^10/93555).
double gamma_cot_gamma_minus_one(double gamma) {
  if (std::abs(gamma) < 0.25) {
    const double g2 = gamma * gamma;
    return -g2 * (1.0 / 3.0 +
                  g2 * (1.0 / 45.0 +
                        g2 * (2.0 / 945.0 +
                              g2 * (1.0 / 4725.0 + g2 * (2.0 / 93555.0)))));
  }
  const double s = std::sin(gamma);
  return (gamma * std::cos(gamma) - s) / s;
}

}  // namespace

double capacitance_from_area(double effective_area, double gap_width) {
  if (!(effective_area > 0.0) || !(gap_width > 0.0))
    throw std::invalid_argument("area and gap width must be positive");
  return constants::vacuum_permittivity * effective_area / gap_width;
}

std::vector<std::string> validate(const KlystronParams& p) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument(std::string(name) + " must be positive");
  };
  positive(p.omega, "omega");
  positive(p.gap_width, "gap_width");
  positive(p.capacitance, "capacitance");
  positive(p.quant_volume, "quant_volume");
  positive(p.box_length, "box_length");
  positive(p.drift_length, "drift_length");
  positive(p.velocity, "velocity");
  if (p.electron_count < 0.0 || !std::isfinite(p.electron_count))
    throw std::invalid_argument("electron_count must be >= 0");
  if (p.photon_number < 0.0 || !std::isfinite(p.photon_number))
    throw std::invalid_argument("photon_number must be >= 0");

  const double beta = p.velocity / constants::speed_of_light;
  if (beta >= 0.1)
    throw PhysicalValidityError(
        "electron velocity exceeds 0.1 c; nonrelativistic model invalid");
  const double alpha = constants::hbar * p.omega /
                       (constants::electron_mass * sq(p.velocity));
  if (alpha >= 1.0)
    throw PhysicalValidityError(
        "alpha = hbar omega / (m v^2) >= 1; photon energy exceeds electron "
        "kinetic energy scale");

  std::vector<std::string> warnings;
  if (beta >= 0.01)
    warnings.push_back("v/c = " + std::to_string(beta) +
                       " >= 0.01; relativistic corrections neglected");
  if (alpha > 0.1)
    warnings.push_back("alpha = " + std::to_string(alpha) +
                       " > 0.1; small-alpha expansion degrades");
  return warnings;
}

double transit_angle(double omega, double gap_width, double velocity) {
  if (!(omega > 0.0) || !(gap_width > 0.0) || !(velocity > 0.0))
    throw std::invalid_argument(
        "transit_angle requires positive omega, gap width, velocity");
  return omega * gap_width / (2.0 * velocity);
}

double gain_factor(double gamma) {
  if (!std::isfinite(gamma))
    throw std::invalid_argument("gain_factor: non-finite gamma");
  const double a = std::abs(gamma);
  if (a < 1e-3) {
    const double g2 = gamma * gamma;
    const double g6 = g2 * g2 * g2;
    return -g6 * (1.0 / 3.0 - g2 / 5.0 + 17.0 * g2 * g2 / 315.0);
  }
  // sin^4 kills the cot pole at multiples of pi; snap the window where the
  // true value is below ~1e-26 to an exact zero.
  const double k = std::nearbyint(gamma / kPi);
  if (k != 0.0 && std::abs(gamma - k * kPi) < 1e-9) return 0.0;
  const double s = std::sin(gamma);
  const double s2 = s * s;
  return gamma_cot_gamma_minus_one(gamma) * s2 * s2;
}

double electron_flux(const KlystronParams& p) {
  validate(p);
  return constants::elementary_charge * p.velocity * p.electron_count /
         p.quant_volume;
}

double stored_photon_energy(const KlystronParams& p) {
  validate(p);
  return p.photon_number * constants::hbar * p.omega;
}

namespace {

// m hbar^4 C^2 d^4 omega^7, the shared denominator of the gain terms.
double gain_term_denominator(const KlystronParams& p) {
  const double hbar4 = sq(sq(constants::hbar));
  return constants::electron_mass * hbar4 * sq(p.capacitance) *
         sq(sq(p.gap_width)) * std::pow(p.omega, 7);
}

double velocity_term(const KlystronParams& p, double j0) {
  const double hbar3 = constants::hbar * sq(constants::hbar);
  return 16.0 * kPi3 * sq(j0) * sq(p.velocity) /
         (hbar3 * sq(p.capacitance) * sq(sq(p.gap_width)) *
          std::pow(p.omega, 6));
}

}  // namespace

double rate_stimulated(const KlystronParams& p) {
  const double j0 = electron_flux(p);
  const double ep = stored_photon_energy(p);
  const double g =
      gain_factor(transit_angle(p.omega, p.gap_width, p.velocity));
  return 64.0 * kPi3 * sq(j0) * sq(ep) / gain_term_denominator(p) * g;
}

double rate_spontaneous(const KlystronParams& p) {
  const double j0 = electron_flux(p);
  const double g =
      gain_factor(transit_angle(p.omega, p.gap_width, p.velocity));
  const double hw = constants::hbar * p.omega;
  return 32.0 * kPi3 * sq(j0) * sq(hw) / gain_term_denominator(p) * g +
         velocity_term(p, j0);
}

RateBreakdown rate_total(const KlystronParams& p) {
  const double j0 = electron_flux(p);
  const double ep = stored_photon_energy(p);
  const double hw = constants::hbar * p.omega;
  const double g =
      gain_factor(transit_angle(p.omega, p.gap_width, p.velocity));

  RateBreakdown out;
  out.stimulated = rate_stimulated(p);
  out.spontaneous = rate_spontaneous(p);
  out.total = 32.0 * kPi3 * sq(j0) * (2.0 * sq(ep) + sq(hw)) /
                  gain_term_denominator(p) * g +
              velocity_term(p, j0);
  return out;
}

namespace {

// Shared prefactor of the reduced emission/absorption coefficients:
// 16 pi^3 e^2 hbar^5 k^6 / (L^6 C^2 d^4 m^6 omega^6).
double reduced_rate_prefactor(const KlystronParams& p) {
  const double k = constants::electron_mass * p.velocity / constants::hbar;
  const double hbar5 = sq(sq(constants::hbar)) * constants::hbar;
  const double m6 = std::pow(constants::electron_mass, 6);
  return 16.0 * kPi3 * sq(constants::elementary_charge) * hbar5 *
         std::pow(k, 6) /
         (std::pow(p.box_length, 6) * sq(p.capacitance) *
          sq(sq(p.gap_width)) * m6 * std::pow(p.omega, 6));
}

// [1 -+ 2 alpha (1 - gamma cot gamma)] sin^4 gamma, pole-free:
// sin^4 gamma +- 2 alpha g(gamma).
double bracket_times_sin4(const KlystronParams& p, double alpha_sign) {
  const double gamma = transit_angle(p.omega, p.gap_width, p.velocity);
  const double alpha = constants::hbar * p.omega /
                       (constants::electron_mass * sq(p.velocity));
  const double s2 = sq(std::sin(gamma));
  return sq(s2) + alpha_sign * 2.0 * alpha * gain_factor(gamma);
}

}  // namespace

double reduced_emission_rate(double n, const KlystronParams& p) {
  if (n < 0.0) throw std::invalid_argument("photon number must be >= 0");
  validate(p);
  return reduced_rate_prefactor(p) * sq(n + 1.0) * bracket_times_sin4(p, 1.0);
}

double reduced_absorption_rate(double n, const KlystronParams& p) {
  if (n < 0.0) throw std::invalid_argument("photon number must be >= 0");
  validate(p);
  if (n == 0.0) return 0.0;
  return reduced_rate_prefactor(p) * sq(n) * bracket_times_sin4(p, -1.0);
}

double wavenumber_after_emission_exact(double k, double omega) {
  if (!(k > 0.0)) throw std::invalid_argument("k must be positive");
  const double alpha =
      constants::electron_mass * omega / (constants::hbar * k * k);
  if (alpha > 0.5)
    throw PhysicalValidityError(
        "electron kinetic energy below photon energy; emission forbidden");
  return k * std::sqrt(1.0 - 2.0 * alpha);
}

double wavenumber_after_emission_approx(double k, double omega) {
  if (!(k > 0.0)) throw std::invalid_argument("k must be positive");
  const double alpha =
      constants::electron_mass * omega / (constants::hbar * k * k);
  if (alpha >= 1.0)
    throw PhysicalValidityError("alpha >= 1; expansion invalid");
  return k * (1.0 - alpha * (1.0 + 0.5 * alpha));
}

std::vector<double> allowed_wavenumbers(double drift_length, int count) {
  if (!(drift_length > 0.0))
    throw std::invalid_argument("drift length must be positive");
  if (count < 1) throw std::invalid_argument("count must be >= 1");
  std::vector<double> ks(static_cast<size_t>(count));
  for (int nu = 1; nu <= count; ++nu)
    ks[static_cast<size_t>(nu - 1)] = nu * kPi / (2.0 * drift_length);
  return ks;
}

}  // namespace qklyst
