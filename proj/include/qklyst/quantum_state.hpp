#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace qklyst {

using Complex = std::complex<double>;
using Matrix4c = Eigen::Matrix4cd;

/// Two-photon polarization basis, fixed order used everywhere in this
/// library: index 0 = XX, 1 = XY, 2 = YX, 3 = YY (first letter = photon 1).
///
/// In the Fock-rail realization each photon lives on a pair of rails and
/// |X> is shorthand for all quanta on the x rail, |Y> for all quanta on the
/// y rail; the rail occupation n is carried as a separate parameter where it
/// matters (see amplify_channel), not as a Fock-space array.
enum class Basis : int { XX = 0, XY = 1, YX = 2, YY = 3 };

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

/// Pure two-qubit polarization state: four complex amplitudes in the
/// (XX, XY, YX, YY) basis. Valid states are normalized to 1 within 1e-12.
struct TwoPhotonState {
  std::array<Complex, 4> amplitudes{};

  double norm_sq() const;
  bool is_normalized(double tol = 1e-12) const;
};

/// 4x4 density matrix over the (XX, XY, YX, YY) basis.
///
/// Invariants (checked by validate()):
///   - Hermitian, max elementwise deviation 1e-12
///   - trace 1 within 1e-12
///   - eigenvalues >= -1e-10
struct DensityMatrix4 {
  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kTraceTol = 1e-12;
  static constexpr double kPsdFloor = -1e-10;

  Matrix4c entries = Matrix4c::Zero();

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;
};

enum class WernerConvention {
  AsPrinted,          // numerator [3/4 - S_M(S_M+1) - S_I(S_I+1)]^2
  ExampleConsistent,  // numerator [3/4 + S_M(S_M+1) - S_I(S_I+1)]^2
};

/// Spin chain of an ionization cascade producing a spin-entangled electron
/// pair: initial, intermediate and final spins (non-negative half-integers).
/// The entanglement-transfer parameter p it induces is computed by
/// werner_p(); the two printed-formula conventions are kept side by side
/// because they disagree (see werner_p).
struct WernerSpec {
  double spin_initial = 0.0;   // S_I
  double spin_middle = 0.5;    // S_M
  double spin_final = 0.0;     // S_F
  WernerConvention convention = WernerConvention::ExampleConsistent;
};

/// The four maximally entangled Bell states. Phi+- have support on {XY, YX},
/// Psi+- on {XX, YY}.
TwoPhotonState bell_state(BellKind kind);

/// |psi><psi| of a normalized pure state. Throws on non-normalized input.
DensityMatrix4 density_matrix(const TwoPhotonState& state);

/// One branch of a photon-environment superposition: photon basis label,
/// complex amplitude, and an opaque label identifying the environment state
/// attached to that branch.
struct EnvironmentBranch {
  Basis basis;
  Complex amplitude;
  std::string environment;
};

/// Pairwise environment overlap <env_a|env_b>. Must be Hermitian
/// (f(a,b) = conj(f(b,a))), have f(a,a) = 1 and |f| <= 1.
using OverlapFn =
    std::function<Complex(const std::string&, const std::string&)>;

/// Photon density matrix after tracing out the environment register:
/// rho[i,j] = sum over branch pairs of amp_i * conj(amp_j) * overlap(env_i,
/// env_j). Branch amplitudes must be normalized. Throws when the overlap
/// table is not Hermitian, has diagonal != 1, leaves the unit disk, or the
/// resulting matrix violates DensityMatrix4 invariants.
DensityMatrix4 partial_trace_environment(
    std::span<const EnvironmentBranch> branches, const OverlapFn& overlap);

/// One-pair amplification channel in the Fock-rail picture.
///
/// Each basis branch keeps its polarization labels (the occupied rail gains
/// one photon, so X stays X and Y stays Y as effective qubit labels). Each
/// branch carries a gap-excitation signature: the pair (total x-rail
/// photons, total y-rail photons) over both beams. Coherence between
/// branches with equal signatures survives unchanged; between branches with
/// different signatures it is scaled by eta, the electron-state
/// distinguishability overlap. eta = 0 reproduces fully distinguishable
/// electron finals (Phi+- keep concurrence 1, Psi+- decohere to zero);
/// eta = 1 is the identity channel.
///
/// photon_number is the per-rail occupation n of the input (>= 1; at n = 0
/// all signatures coincide and the map is meaningless).
DensityMatrix4 amplify_channel(const TwoPhotonState& state, int photon_number,
                               double eta);

/// Wootters two-qubit concurrence: with F = (sigma_y x sigma_y),
/// R = rho * F * conj(rho) * F, and lambda_i the decreasing square roots of
/// R's eigenvalues, C = max(0, l1 - l2 - l3 - l4). Eigenvalues with
/// magnitude below 1e-10 are clamped to zero before the square roots; the
/// result is clamped into [0, 1]. Throws on an input violating the
/// DensityMatrix4 invariants.
double concurrence(const DensityMatrix4& rho);

/// Werner state p |Bell><Bell| + (1-p) I/4. Throws ModelRangeError when p
/// is outside [0, 1].
DensityMatrix4 werner_state(double p, BellKind bell = BellKind::PhiPlus);

/// Entanglement-transfer parameter for an ionization cascade with
/// S_I = S_F and S_M > 0:
///
///   p = [3/4 -+ S_M(S_M+1) - S_I(S_I+1)]^2 / (3 S_M(S_M+1))
///
/// AsPrinted uses the minus sign; it yields p = 0 for the singlet->doublet->
/// singlet cascade whose known value is 1. ExampleConsistent (default) uses
/// the plus sign, which reproduces p(0, 1/2, 0) = 1, and is believed to be
/// the intended formula. Both are provided, neither is silently "fixed".
///
/// Throws std::invalid_argument for S_I != S_F, S_M = 0 or non-half-integer
/// spins, and ModelRangeError (carrying the raw value) when the result falls
/// outside [0, 1].
double werner_p(const WernerSpec& spec);

/// Raw formula value without the half-integer/range checks; used for
/// continuity and discrepancy studies.
double werner_p_formula(double spin_initial, double spin_middle,
                        WernerConvention convention);

}  // namespace qklyst
