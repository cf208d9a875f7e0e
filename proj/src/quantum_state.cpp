#include "qklyst/quantum_state.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "qklyst/errors.hpp"

namespace qklyst {
namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;

// sigma_y (x) sigma_y in the XX, XY, YX, YY basis.
Matrix4c spin_flip() {
  Matrix4c f = Matrix4c::Zero();
  f(0, 3) = -1.0;
  f(1, 2) = 1.0;
  f(2, 1) = 1.0;
  f(3, 0) = -1.0;
  return f;
}

}  // namespace

double TwoPhotonState::norm_sq() const {
  double s = 0.0;
  for (const auto& a : amplitudes) s += std::norm(a);
  return s;
}

bool TwoPhotonState::is_normalized(double tol) const {
  return std::abs(norm_sq() - 1.0) <= tol;
}

void DensityMatrix4::validate() const {
  if (!entries.allFinite())
    throw std::invalid_argument("density matrix has non-finite entries");
  const double herm = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermitianTol)
    throw std::invalid_argument("density matrix is not Hermitian");
  const Complex tr = entries.trace();
  if (std::abs(tr - Complex(1.0)) > kTraceTol)
    throw std::invalid_argument("density matrix trace is not 1");
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(entries,
                                             Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < kPsdFloor)
    throw std::invalid_argument("density matrix is not positive semidefinite");
}

TwoPhotonState bell_state(BellKind kind) {
  TwoPhotonState s;
  switch (kind) {
    case BellKind::PhiPlus:
      s.amplitudes = {Complex(0), Complex(kInvSqrt2), Complex(kInvSqrt2),
                      Complex(0)};
      break;
    case BellKind::PhiMinus:
      s.amplitudes = {Complex(0), Complex(kInvSqrt2), Complex(-kInvSqrt2),
                      Complex(0)};
      break;
    case BellKind::PsiPlus:
      s.amplitudes = {Complex(kInvSqrt2), Complex(0), Complex(0),
                      Complex(kInvSqrt2)};
      break;
    case BellKind::PsiMinus:
      s.amplitudes = {Complex(kInvSqrt2), Complex(0), Complex(0),
                      Complex(-kInvSqrt2)};
      break;
  }
  return s;
}

DensityMatrix4 density_matrix(const TwoPhotonState& state) {
  if (!state.is_normalized())
    throw std::invalid_argument("state is not normalized");
  DensityMatrix4 rho;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      rho.entries(i, j) =
          state.amplitudes[i] * std::conj(state.amplitudes[j]);
  rho.validate();
  return rho;
}

DensityMatrix4 partial_trace_environment(
    std::span<const EnvironmentBranch> branches, const OverlapFn& overlap) {
  if (branches.empty()) throw std::invalid_argument("no branches");
  if (!overlap) throw std::invalid_argument("null overlap function");

  double norm = 0.0;
  for (const auto& b : branches) norm += std::norm(b.amplitude);
  if (std::abs(norm - 1.0) > 1e-12)
    throw std::invalid_argument("branch amplitudes are not normalized");

  // Overlap table sanity over the labels actually present.
  std::vector<std::string> labels;
  for (const auto& b : branches) labels.push_back(b.environment);
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  for (const auto& a : labels) {
    if (std::abs(overlap(a, a) - Complex(1.0)) > 1e-12)
      throw std::invalid_argument("overlap diagonal is not 1");
  }
  for (size_t i = 0; i < labels.size(); ++i) {
    for (size_t j = i + 1; j < labels.size(); ++j) {
      const Complex ab = overlap(labels[i], labels[j]);
      const Complex ba = overlap(labels[j], labels[i]);
      if (std::abs(ab - std::conj(ba)) > 1e-12)
        throw std::invalid_argument("overlap table is not Hermitian");
      if (std::abs(ab) > 1.0 + 1e-12)
        throw std::invalid_argument("overlap magnitude exceeds 1");
    }
  }

  DensityMatrix4 rho;
  for (const auto& bi : branches) {
    for (const auto& bj : branches) {
      rho.entries(static_cast<int>(bi.basis), static_cast<int>(bj.basis)) +=
          bi.amplitude * std::conj(bj.amplitude) *
          overlap(bi.environment, bj.environment);
    }
  }
  // Symmetrize away roundoff before validation.
  rho.entries = 0.5 * (rho.entries + rho.entries.adjoint()).eval();
  rho.validate();
  return rho;
}

DensityMatrix4 amplify_channel(const TwoPhotonState& state, int photon_number,
                               double eta) {
  if (photon_number < 1)
    throw std::invalid_argument("photon_number must be >= 1");
  if (!(eta >= 0.0 && eta <= 1.0))
    throw std::invalid_argument("eta must lie in [0, 1]");
  if (!state.is_normalized())
    throw std::invalid_argument("state is not normalized");

  // Gap-excitation signature of each output branch: (x-rail, y-rail) photon
  // totals over both beams. With m = photon_number + 1 per occupied rail:
  //   XX -> (2m, 0),  XY -> (m, m),  YX -> (m, m),  YY -> (0, 2m).
  const int m = photon_number + 1;
  const std::array<std::pair<int, int>, 4> signature = {
      std::pair{2 * m, 0}, {m, m}, {m, m}, {0, 2 * m}};

  DensityMatrix4 rho;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double coherence = (signature[i] == signature[j]) ? 1.0 : eta;
      rho.entries(i, j) = state.amplitudes[i] *
                          std::conj(state.amplitudes[j]) * coherence;
    }
  }
  rho.validate();
  return rho;
}

double concurrence(const DensityMatrix4& rho) {
  rho.validate();
  const Matrix4c f = spin_flip();
  const Matrix4c r = rho.entries * f * rho.entries.conjugate() * f;

  Eigen::ComplexEigenSolver<Matrix4c> es(r, /*computeEigenvectors=*/false);
  std::array<double, 4> lambdas{};
  for (int i = 0; i < 4; ++i) {
    Complex ev = es.eigenvalues()(i);
    // Eigenvalues of rho * rho~ are real and non-negative; what is left in
    // the imaginary part / below 1e-10 magnitude is spectral noise.
    double v = std::abs(ev) < 1e-10 ? 0.0 : std::real(ev);
    lambdas[i] = std::sqrt(std::max(0.0, v));
  }
  std::sort(lambdas.begin(), lambdas.end(), std::greater<double>());
  const double c = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3];
  return std::clamp(c, 0.0, 1.0);
}

DensityMatrix4 werner_state(double p, BellKind bell) {
  if (!(p >= 0.0 && p <= 1.0))
    throw ModelRangeError("werner_state: p outside [0, 1]", p);
  const DensityMatrix4 projector = density_matrix(bell_state(bell));
  DensityMatrix4 rho;
  rho.entries = p * projector.entries +
                (1.0 - p) * 0.25 * Matrix4c::Identity();
  rho.validate();
  return rho;
}

double werner_p_formula(double spin_initial, double spin_middle,
                        WernerConvention convention) {
  const double sm = spin_middle * (spin_middle + 1.0);
  const double si = spin_initial * (spin_initial + 1.0);
  const double signed_sm =
      convention == WernerConvention::AsPrinted ? -sm : sm;
  const double numerator = 0.75 + signed_sm - si;
  return numerator * numerator / (3.0 * sm);
}

namespace {

bool is_half_integer(double s) {
  return s >= 0.0 && std::abs(2.0 * s - std::round(2.0 * s)) <= 1e-9;
}

}  // namespace

double werner_p(const WernerSpec& spec) {
  if (!is_half_integer(spec.spin_initial) ||
      !is_half_integer(spec.spin_middle) ||
      !is_half_integer(spec.spin_final))
    throw std::invalid_argument(
        "werner_p: spins must be non-negative half-integers");
  if (spec.spin_initial != spec.spin_final)
    throw std::invalid_argument("werner_p requires S_I = S_F");
  if (spec.spin_middle <= 0.0)
    throw std::invalid_argument("werner_p requires S_M > 0");

  const double p =
      werner_p_formula(spec.spin_initial, spec.spin_middle, spec.convention);
  if (!(p >= 0.0 && p <= 1.0))
    throw ModelRangeError("werner_p: result outside [0, 1]", p);
  return p;
}

}  // namespace qklyst
