// Numerical tolerances used across the toolkit. Values are fixed project-wide
// so every report and test refers to the same thresholds.

#pragma once

namespace qsand::tol {

// Maximum allowed deviation from Hermiticity, max|m - m^dag|.
inline constexpr double herm = 1e-10;

// Eigendecomposition reconstruction tolerance (scaled by dimension).
inline constexpr double eig = 1e-10;

// Spectral clip: eigenvalues at or below this are treated as exact zeros
// (kernel) by matrix_log_on_support and support_projector.
inline constexpr double spectral_clip = 1e-12;

// Kraus completeness: max|sum K^dag K - I| must stay below this.
inline constexpr double kraus = 1e-9;

// Kernel-condition proxy: Tr(rho (I - P_gamma)) above this means
// ker(gamma) is not contained in ker(rho), so H(rho,gamma) = +inf.
inline constexpr double kernel = 1e-9;

// Default inequality slack tolerance (slack >= -slack_tol passes).
inline constexpr double slack = 1e-9;

// Provably-nonnegative quantities in (-clamp_window, 0) are reported as 0;
// anything at or below -clamp_window is an internal-consistency failure.
inline constexpr double clamp_window = 1e-9;

// Mixing weight for regularizing rank-deficient sampled states.
inline constexpr double regularize_eps = 1e-9;

// Unitarity checks on constructed/parametrized unitaries.
inline constexpr double unitary = 1e-10;

// Unitarity requirement on user-supplied remix matrices.
inline constexpr double remix_unitary = 1e-9;

} // namespace qsand::tol
