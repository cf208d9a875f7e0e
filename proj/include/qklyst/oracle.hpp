#pragma once

#include <span>
#include <string>
#include <vector>

#include "qklyst/klystron_model.hpp"
#include "qklyst/quantum_state.hpp"

// Brute-force verifiers for the closed forms implemented in klystron_model
// and the entanglement claims in quantum_state. Everything here recomputes
// its target from first principles (quadrature, discretized sums, direct
// eigenvalue checks); nothing calls into the formula internals it validates
// beyond parameter plumbing.
namespace qklyst::oracle {

struct TracePoint {
  double control = 0.0;  // schedule control parameter (epsilon, alpha, ...)
  double error = 0.0;    // relative error at that entry
};

/// Outcome of one verification. passed <=> relative_error <= tolerance;
/// when a convergence trace fails to decrease monotonically after its first
/// entry, relative_error is set to +infinity (non-convergent), so the
/// equivalence still holds.
struct VerificationReport {
  std::string name;
  double analytic = 0.0;
  double oracle = 0.0;
  double relative_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::vector<TracePoint> trace;
};

/// Checks whether a trace is monotone non-increasing after its first entry.
bool trace_is_converging(std::span<const TracePoint> trace);

struct QuadratureCheck {
  double quadrature = 0.0;    // |resonant term|^2 / (2 L^2) from quadrature
  double closed_form = 0.0;   // 2 sin^2(q d / 2) / (L^2 q^4)
  double relative_error = 0.0;  // absolute difference when closed_form == 0
};

/// Verifies the gap matrix element: numerically integrates x e^{i q x} over
/// the gap [0, d] (the slowly oscillating cross term of the standing waves,
/// q = k - k'), subtracts the non-resonant boundary term e^{i q d} d/(i q),
/// and compares the squared resonant remainder against the closed form
/// 2 sin^2(q d / 2) / (L^2 q^4). Adaptive quadrature, absolute tolerance
/// 1e-12 by default.
///
/// The closed form is singular at k = k' and its limit there is not
/// defined; tuples with |k - k'| < 1e-6 k are rejected.
QuadratureCheck matrix_element_quadrature(double k, double k_prime, double d,
                                          double L, double abs_tol = 1e-12);

/// Verifies the contour-integral evaluation of the second-order golden-rule
/// sum. The discrete sum over intermediate wavenumbers k' (spacing 2 pi/L)
/// of the resonant matrix element M(k') = (e^{i q d} - 1)/(sqrt2 L q^2)
/// weighted by the finite-epsilon resonance (1/pi) eps/(D^2 + eps^2) is
/// evaluated on a halving epsilon schedule with L doubled in step, then
/// Richardson-extrapolated to the regulator limit. The extrapolated
/// on-shell coefficient is compared against the analytic form
///
///   16 pi^3 e^4 m^2 omega^2 (n+1)^2 sin^4(q0 d/2)
///     / (hbar^3 C^2 d^4 L^6 k0'^2 q0^8)
///
/// at the energy-conserving k0' = k sqrt(1 - 2 alpha), q0 = k - k0'. Both
/// sides carry the squared-amplitude charge factor e^4. Tolerance 5%: this
/// validates the sum-to-contour structure, not precision.
///
/// epsilon0 (J) and L0 (m) seed the schedule; preconditions: at least 1000
/// k' modes inside the resonance width, and the resonance window must stay
/// clear of the q -> 0 singularity of M.
VerificationReport golden_rule_sum(double k, double omega,
                                   const KlystronParams& params,
                                   double epsilon0, double L0);

/// Suggested schedule seeds for golden_rule_sum at the given operating
/// point (first-entry error near 1e-2, mode count ~1200).
void golden_rule_defaults(double k, double omega, double* epsilon0,
                          double* L0);

/// Verifies the second-order emission-wavenumber expansion
/// k' = k [1 - alpha (1 + alpha/2)] against the exact k sqrt(1 - 2 alpha):
/// fits the log-log slope of |approx - exact|/k over the alpha schedule and
/// the remainder constant error/alpha^3 at the smallest alpha. Passes when
/// the slope is 3.0 +- 0.05 and the constant 0.5 +- 0.02; relative_error is
/// the larger bound-normalized deviation (1.0 = at the bound), tolerance 1.
/// Requires >= 3 schedule points, all in (0, 0.1).
VerificationReport verify_expansion(double k, double omega,
                                    std::span<const double> alpha_schedule);

/// Checks total = stimulated + spontaneous to 1e-12 relative, plus the
/// bracket decomposition: the stimulated closed form equals the 2 E_p^2
/// part of the combined form, compared coefficient-by-coefficient.
VerificationReport verify_rate_identity(const KlystronParams& params);

struct PptResult {
  bool is_entangled = false;
  double negativity = 0.0;  // sum of |negative eigenvalues| of rho^(T_B)
};

/// Peres-Horodecki witness: partial transpose over the second qubit;
/// entangled iff the negativity exceeds 1e-10 (exact criterion for two
/// qubits). Throws on an invalid density matrix.
PptResult ppt_negativity(const DensityMatrix4& rho);

}  // namespace qklyst::oracle
