// Von Neumann entropy, relative entropy with the kernel condition, and
// conditional entropy. All values are in nats; +infinity marks a violated
// kernel condition in the relative entropy.

#pragma once

#include <vector>

#include "qsand/linalg.hpp"

namespace qsand {

// Real entropy value in nats, or +infinity.
using EntropyValue = double;

// Hermitian, PSD (eigenvalues >= -spectral_clip), unit-trace matrix bound to
// a SystemLayout. Construction validates and stores the symmetrized matrix.
class DensityMatrix {
  public:
    DensityMatrix(ComplexMatrix matrix, SystemLayout layout);

    const ComplexMatrix& matrix() const { return matrix_; }
    const SystemLayout& layout() const { return layout_; }
    int dim() const { return static_cast<int>(matrix_.rows()); }

    // Marginal with the given factors traced out (resp. kept).
    DensityMatrix trace_out(const std::vector<std::string>& labels) const;
    DensityMatrix keeping(const std::vector<std::string>& labels) const;

    // (1-eps) rho + eps I/d; keeps random suites away from exact rank
    // deficiency without masking real violations.
    DensityMatrix regularized(double eps = tol::regularize_eps) const;

  private:
    ComplexMatrix matrix_;
    SystemLayout layout_;
};

// -sum lambda ln lambda over eigenvalues above the clip; always in [0, ln d]
// up to the clamp window.
EntropyValue von_neumann_entropy(const DensityMatrix& rho);

// Tr rho (ln rho - ln gamma) on the support of gamma; +infinity when the
// kernel condition ker(gamma) within ker(rho) fails (support-projector test,
// Tr(rho (I-P)) > tol::kernel).
EntropyValue relative_entropy(const DensityMatrix& rho, const DensityMatrix& gamma);

// S(rho_{rest+target}) - S(rho_rest); may be negative.
EntropyValue conditional_entropy(const DensityMatrix& rho, const std::string& target,
                                 const std::vector<std::string>& rest);

// Same value computed as ln d_target - H(rho_{rest+target},
// rho_rest x I/d_target), with the identity factor at target's position.
EntropyValue conditional_via_relative(const DensityMatrix& rho, const std::string& target,
                                      const std::vector<std::string>& rest);

} // namespace qsand
