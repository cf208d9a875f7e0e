#pragma once

#include <string>
#include <vector>

namespace qklyst {

/// Device and beam parameters of the double-gap reflex klystron, SI units.
/// The two beams are symmetric by construction (same N, v, k per gap).
struct KlystronParams {
  double omega = 0.0;           // photon angular frequency, rad/s
  double gap_width = 0.0;       // d, m
  double capacitance = 0.0;     // C, F
  double quant_volume = 0.0;    // V, m^3
  double box_length = 0.0;      // L, m (electron quantization box)
  double drift_length = 0.0;    // l, gap-to-repeller distance, m
  double velocity = 0.0;        // v, electron speed, m/s
  double electron_count = 0.0;  // N per beam, dimensionless
  double photon_number = 0.0;   // n stored per mode, dimensionless
};

/// C = eps0 * A / d for parallel plates of effective area A.
double capacitance_from_area(double effective_area, double gap_width);

/// Checks parameter invariants. Returns human-readable warnings for the
/// soft limits (v/c >= 0.01, alpha > 0.1); throws std::invalid_argument for
/// non-positive quantities and PhysicalValidityError for v/c >= 0.1 or
/// alpha >= 1 (photon energy above electron kinetic energy).
std::vector<std::string> validate(const KlystronParams& params);

/// Gap transit angle gamma = omega d / (2 v).
double transit_angle(double omega, double gap_width, double velocity);

/// Gain factor g(gamma) = (gamma cot gamma - 1) sin^4 gamma.
///
/// Cancellation-safe: below |gamma| = 1e-3 the series -g^6 (1/3 - g^2/5 +
/// 17 g^4/315) is used; the bracket is evaluated by its own series below
/// |gamma| = 0.25 so both branches agree to ~1e-14 at the switchover.
/// Exactly zero at multiples of pi (within 1e-9), where sin^4 kills the
/// cot pole.
double gain_factor(double gamma);

/// Electron flux J0 = e v N / V.
double electron_flux(const KlystronParams& params);

/// Stored photon energy E_p = n hbar omega.
double stored_photon_energy(const KlystronParams& params);

/// Photon-pair output rates, pairs/second. total is evaluated from the
/// combined closed form, stimulated/spontaneous from their own closed
/// forms; total = stimulated + spontaneous holds to 1e-12 relative.
struct RateBreakdown {
  double stimulated = 0.0;
  double spontaneous = 0.0;
  double total = 0.0;
};

/// Stimulated pair output rate
///   64 pi^3 J0^2 E_p^2 / (m hbar^4 C^2 d^4 omega^7) * g(gamma).
double rate_stimulated(const KlystronParams& params);

/// Spontaneous pair output rate
///   32 pi^3 J0^2 (hbar omega)^2 / (m hbar^4 C^2 d^4 omega^7) * g(gamma)
///   + 16 pi^3 J0^2 v^2 / (hbar^3 C^2 d^4 omega^6).
double rate_spontaneous(const KlystronParams& params);

/// Net pair output rate
///   32 pi^3 J0^2 / (m hbar^4 C^2 d^4 omega^7) [2 E_p^2 + (hbar omega)^2]
///   g(gamma) + 16 pi^3 J0^2 v^2 / (hbar^3 C^2 d^4 omega^6),
/// with the stimulated/spontaneous split alongside.
RateBreakdown rate_total(const KlystronParams& params);

/// On-shell coefficient of the two-photon emission rate (the factor
/// multiplying the energy-conservation delta):
///   16 pi^3 e^2 hbar^5 k^6 / (L^6 C^2 d^4 m^6 omega^6) (n+1)^2
///   [1 - 2 alpha (1 - gamma cot gamma)] sin^4 gamma,
/// evaluated pole-free as (n+1)^2 pref (sin^4 gamma + 2 alpha g(gamma)).
/// k = m v / hbar and alpha = hbar omega / (m v^2) derive from params;
/// n overrides params.photon_number.
double reduced_emission_rate(double n, const KlystronParams& params);

/// Absorption counterpart: n^2 and the opposite alpha sign,
///   n^2 pref (sin^4 gamma - 2 alpha g(gamma)).
double reduced_absorption_rate(double n, const KlystronParams& params);

/// Electron wavenumber after emitting one photon, exact kinematics:
/// k' = k sqrt(1 - 2 alpha) with alpha = m omega / (hbar k^2). Negative
/// omega gives the absorption direction. Throws PhysicalValidityError when
/// the electron lacks the energy to emit (alpha > 1/2).
double wavenumber_after_emission_exact(double k, double omega);

/// Second-order expansion k' = k [1 - alpha (1 + alpha/2)]; requires
/// alpha < 1.
double wavenumber_after_emission_approx(double k, double omega);

/// Repeller-quantized wavenumbers k_nu = nu pi / (2 l), nu = 1..count.
std::vector<double> allowed_wavenumbers(double drift_length, int count);

}  // namespace qklyst
