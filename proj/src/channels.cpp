#include "qsand/channels.hpp"

namespace qsand {

namespace {

void require_valid(const KrausSet& ks, const char* who) {
    const auto report = validate_kraus(ks);
    if (!report.pass) {
        throw std::invalid_argument(std::string(who) + ": Kraus completeness deviation " +
                                    std::to_string(report.max_deviation) +
                                    " exceeds tolerance");
    }
}

void require_dim(const KrausSet& ks, const DensityMatrix& rho, const char* who) {
    if (ks.dim() != rho.dim()) {
        throw std::invalid_argument(std::string(who) + ": Kraus dim " +
                                    std::to_string(ks.dim()) + " does not match state dim " +
                                    std::to_string(rho.dim()));
    }
}

} // namespace

int KrausSet::dim() const {
    if (operators.empty()) {
        throw std::invalid_argument("KrausSet: no operators");
    }
    return static_cast<int>(operators.front().rows());
}

KrausValidation validate_kraus(const KrausSet& ks) {
    if (ks.operators.empty()) {
        throw std::invalid_argument("validate_kraus: no operators");
    }
    const Eigen::Index d = ks.operators.front().rows();
    for (const auto& k : ks.operators) {
        if (k.rows() != k.cols() || k.rows() != d) {
            throw std::invalid_argument("validate_kraus: operators must be square and "
                                        "equally shaped");
        }
    }
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const auto& k : ks.operators) sum += k.adjoint() * k;
    KrausValidation report;
    report.max_deviation = max_abs_diff(sum, ComplexMatrix::Identity(d, d));
    report.pass = report.max_deviation <= tol::kraus;
    return report;
}

DensityMatrix apply_channel(const KrausSet& ks, const DensityMatrix& rho) {
    require_valid(ks, "apply_channel");
    require_dim(ks, rho, "apply_channel");
    ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
    for (const auto& k : ks.operators) out += k * rho.matrix() * k.adjoint();
    return DensityMatrix(std::move(out), rho.layout());
}

DensityMatrix apply_ls_channel(const KrausSet& ks, const DensityMatrix& rho) {
    require_valid(ks, "apply_ls_channel");
    require_dim(ks, rho, "apply_ls_channel");
    const int d = rho.dim();
    const int m = ks.count();
    const std::string flag = rho.layout().unique_label("D");
    const SystemLayout out_layout = rho.layout().appended(flag, m);

    // Block diagonal in the flag index: entry ((i,a),(j,b)) is nonzero only
    // for a == b, where it carries [K_a rho K_a^dag]_{ij}.
    ComplexMatrix out = ComplexMatrix::Zero(d * m, d * m);
    for (int a = 0; a < m; ++a) {
        const ComplexMatrix block =
            ks.operators[static_cast<std::size_t>(a)] * rho.matrix() *
            ks.operators[static_cast<std::size_t>(a)].adjoint();
        for (Eigen::Index i = 0; i < d; ++i) {
            for (Eigen::Index j = 0; j < d; ++j) {
                out(i * m + a, j * m + a) = block(i, j);
            }
        }
    }
    return DensityMatrix(std::move(out), out_layout);
}

DilationResult build_dilation(const KrausSet& ks, const DensityMatrix& rho) {
    require_valid(ks, "build_dilation");
    require_dim(ks, rho, "build_dilation");
    const int d = rho.dim();
    const int m = ks.count();
    const std::string flag = rho.layout().unique_label("D");
    SystemLayout out_layout = rho.layout().appended(flag, m);
    const std::string env = out_layout.unique_label("E");
    out_layout = out_layout.appended(env, m);

    // V = sum_m K_m x |m>_D x |m>_E as a block column: row (i, a, b) of
    // column j holds delta_{ab} [K_a]_{ij}.
    ComplexMatrix isometry = ComplexMatrix::Zero(d * m * m, d);
    for (int a = 0; a < m; ++a) {
        const auto& k = ks.operators[static_cast<std::size_t>(a)];
        for (Eigen::Index i = 0; i < d; ++i) {
            for (Eigen::Index j = 0; j < d; ++j) {
                isometry(i * m * m + a * m + a, j) = k(i, j);
            }
        }
    }

    ComplexMatrix sigma = isometry * rho.matrix() * isometry.adjoint();
    return DilationResult{DensityMatrix(std::move(sigma), out_layout), std::move(isometry),
                          flag, env};
}

KrausSet remix_kraus(const KrausSet& ks, const ComplexMatrix& w) {
    require_valid(ks, "remix_kraus");
    const int m = ks.count();
    if (w.rows() != m || w.cols() != m) {
        throw std::invalid_argument("remix_kraus: remix matrix must be " +
                                    std::to_string(m) + "x" + std::to_string(m));
    }
    const double dev = isometry_deviation(w);
    if (dev > tol::remix_unitary) {
        throw std::invalid_argument("remix_kraus: remix matrix unitarity deviation " +
                                    std::to_string(dev) + " exceeds tolerance");
    }
    KrausSet out;
    out.acting_on = ks.acting_on;
    out.operators.reserve(static_cast<std::size_t>(m));
    for (int n = 0; n < m; ++n) {
        ComplexMatrix k = ComplexMatrix::Zero(ks.dim(), ks.dim());
        for (int j = 0; j < m; ++j) {
            k += w(n, j) * ks.operators[static_cast<std::size_t>(j)];
        }
        out.operators.push_back(std::move(k));
    }
    return out;
}

KrausSet embed_on_subsystem(const KrausSet& ks, const SystemLayout& layout) {
    require_valid(ks, "embed_on_subsystem");
    if (ks.acting_on.empty()) {
        throw std::invalid_argument("embed_on_subsystem: Kraus set has no acting_on label");
    }
    const std::size_t pos = layout.position(ks.acting_on);
    if (layout.factor(pos).dim != ks.dim()) {
        throw std::invalid_argument("embed_on_subsystem: Kraus dim " +
                                    std::to_string(ks.dim()) + " does not match factor '" +
                                    ks.acting_on + "' of dim " +
                                    std::to_string(layout.factor(pos).dim));
    }
    Eigen::Index before = 1, after = 1;
    for (std::size_t i = 0; i < layout.size(); ++i) {
        if (i < pos) before *= layout.factor(i).dim;
        if (i > pos) after *= layout.factor(i).dim;
    }
    KrausSet out;
    out.operators.reserve(ks.operators.size());
    for (const auto& k : ks.operators) {
        out.operators.push_back(
            kron(kron(ComplexMatrix::Identity(before, before), k),
                 ComplexMatrix::Identity(after, after)));
    }
    return out;
}

} // namespace qsand
