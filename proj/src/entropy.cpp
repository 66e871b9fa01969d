#include "qsand/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qsand {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Maps results in (-clamp_window, 0) to 0; anything lower means the caller's
// "provably nonnegative" claim failed, which is a bug.
double clamp_nonnegative(double value, const char* who) {
    if (value >= 0.0) return value;
    if (value > -tol::clamp_window) return 0.0;
    throw consistency_error(std::string(who) + ": nonnegative quantity came out " +
                            std::to_string(value));
}

void check_target_and_rest(const SystemLayout& layout, const std::string& target,
                           const std::vector<std::string>& rest, const char* who) {
    if (!layout.has_label(target)) {
        throw std::invalid_argument(std::string(who) + ": unknown label '" + target + "'");
    }
    for (const auto& l : rest) {
        if (!layout.has_label(l)) {
            throw std::invalid_argument(std::string(who) + ": unknown label '" + l + "'");
        }
        if (l == target) {
            throw std::invalid_argument(std::string(who) + ": target '" + target +
                                        "' also listed in rest");
        }
    }
}

} // namespace

DensityMatrix::DensityMatrix(ComplexMatrix matrix, SystemLayout layout)
    : matrix_(std::move(matrix)), layout_(std::move(layout)) {
    if (matrix_.rows() != matrix_.cols()) {
        throw std::invalid_argument("DensityMatrix: matrix must be square");
    }
    if (matrix_.rows() != layout_.total_dim()) {
        throw std::invalid_argument("DensityMatrix: matrix dim " +
                                    std::to_string(matrix_.rows()) +
                                    " does not match layout total " +
                                    std::to_string(layout_.total_dim()));
    }
    const double herm_dev = max_abs_diff(matrix_, matrix_.adjoint());
    if (herm_dev > tol::herm) {
        throw std::invalid_argument("DensityMatrix: Hermiticity deviation " +
                                    std::to_string(herm_dev) + " exceeds tolerance");
    }
    matrix_ = 0.5 * (matrix_ + matrix_.adjoint()).eval();

    const double trace_dev = std::abs(matrix_.trace().real() - 1.0) +
                             std::abs(matrix_.trace().imag());
    if (trace_dev > 1e-10) {
        throw std::invalid_argument("DensityMatrix: trace deviates from 1 by " +
                                    std::to_string(trace_dev));
    }
    const Spectrum spec = hermitian_eig(matrix_);
    const double min_eig = spec.eigenvalues[spec.eigenvalues.size() - 1];
    if (min_eig < -tol::spectral_clip) {
        throw std::invalid_argument("DensityMatrix: eigenvalue " + std::to_string(min_eig) +
                                    " below -clip, not PSD");
    }
}

DensityMatrix DensityMatrix::trace_out(const std::vector<std::string>& labels) const {
    auto [reduced, reduced_layout] = partial_trace(matrix_, layout_, labels);
    return DensityMatrix(std::move(reduced), std::move(reduced_layout));
}

DensityMatrix DensityMatrix::keeping(const std::vector<std::string>& labels) const {
    return trace_out(layout_.without(labels).labels());
}

DensityMatrix DensityMatrix::regularized(double eps) const {
    const int d = dim();
    ComplexMatrix mixed =
        (1.0 - eps) * matrix_ + (eps / static_cast<double>(d)) * identity_matrix(d);
    return DensityMatrix(std::move(mixed), layout_);
}

EntropyValue von_neumann_entropy(const DensityMatrix& rho) {
    const Spectrum spec = hermitian_eig(rho.matrix());
    double s = 0.0;
    for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
        const double lambda = spec.eigenvalues[i];
        if (lambda > tol::spectral_clip) s -= lambda * std::log(lambda);
    }
    return clamp_nonnegative(s, "von_neumann_entropy");
}

EntropyValue relative_entropy(const DensityMatrix& rho, const DensityMatrix& gamma) {
    if (rho.dim() != gamma.dim()) {
        throw std::invalid_argument("relative_entropy: dimension mismatch (" +
                                    std::to_string(rho.dim()) + " vs " +
                                    std::to_string(gamma.dim()) + ")");
    }

    const Spectrum gamma_spec = hermitian_eig(gamma.matrix());
    const Eigen::Index n = gamma_spec.eigenvalues.size();
    Eigen::VectorXd log_diag(n), support_diag(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double lambda = gamma_spec.eigenvalues[i];
        if (lambda < -tol::spectral_clip) {
            throw std::invalid_argument("relative_entropy: gamma eigenvalue " +
                                        std::to_string(lambda) + " below -clip, not PSD");
        }
        const bool on_support = lambda > tol::spectral_clip;
        log_diag[i] = on_support ? std::log(lambda) : 0.0;
        support_diag[i] = on_support ? 1.0 : 0.0;
    }

    // Kernel condition: weight of rho outside gamma's support.
    const ComplexMatrix projector = gamma_spec.eigenvectors * support_diag.asDiagonal() *
                                    gamma_spec.eigenvectors.adjoint();
    const double outside = 1.0 - (rho.matrix() * projector).trace().real();
    if (outside > tol::kernel) return kInf;

    const ComplexMatrix log_gamma = gamma_spec.eigenvectors * log_diag.asDiagonal() *
                                    gamma_spec.eigenvectors.adjoint();

    // Tr rho ln rho from rho's spectrum (zero eigenvalues contribute nothing),
    // minus Tr rho ln gamma on gamma's support; cross terms vanish because
    // ln gamma above is already projected.
    const Spectrum rho_spec = hermitian_eig(rho.matrix());
    double tr_rho_log_rho = 0.0;
    for (Eigen::Index i = 0; i < rho_spec.eigenvalues.size(); ++i) {
        const double lambda = rho_spec.eigenvalues[i];
        if (lambda > tol::spectral_clip) tr_rho_log_rho += lambda * std::log(lambda);
    }
    const double tr_rho_log_gamma = (rho.matrix() * log_gamma).trace().real();
    return clamp_nonnegative(tr_rho_log_rho - tr_rho_log_gamma, "relative_entropy");
}

EntropyValue conditional_entropy(const DensityMatrix& rho, const std::string& target,
                                 const std::vector<std::string>& rest) {
    check_target_and_rest(rho.layout(), target, rest, "conditional_entropy");
    auto joint_labels = rest;
    joint_labels.push_back(target);
    const DensityMatrix joint = rho.keeping(joint_labels);
    if (rest.empty()) return von_neumann_entropy(joint);
    const DensityMatrix reduced = rho.keeping(rest);
    return von_neumann_entropy(joint) - von_neumann_entropy(reduced);
}

EntropyValue conditional_via_relative(const DensityMatrix& rho, const std::string& target,
                                      const std::vector<std::string>& rest) {
    check_target_and_rest(rho.layout(), target, rest, "conditional_via_relative");
    auto joint_labels = rest;
    joint_labels.push_back(target);
    const DensityMatrix joint = rho.keeping(joint_labels);
    const SystemLayout& joint_layout = joint.layout();
    const int d_target = rho.layout().dim_of(target);

    // gamma = rho_rest x I/d_target with the identity at target's position.
    ComplexMatrix rest_matrix;
    if (rest.empty()) {
        rest_matrix = ComplexMatrix::Ones(1, 1);
    } else {
        rest_matrix = rho.keeping(rest).matrix();
    }
    const SystemLayout rest_layout = joint_layout.without({target});
    ComplexMatrix gamma_matrix =
        extend_with_identity(rest_matrix, joint_layout, rest_layout.labels(), true);
    const DensityMatrix gamma(std::move(gamma_matrix), joint_layout);

    const EntropyValue h = relative_entropy(joint, gamma);
    if (std::isinf(h)) {
        // Cannot happen for valid states: supp(rho_XY) <= supp(rho_X x I_Y).
        throw consistency_error(
            "conditional_via_relative: relative entropy diverged on valid input");
    }
    return std::log(static_cast<double>(d_target)) - h;
}

} // namespace qsand
