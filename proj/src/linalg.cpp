#include "qsand/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace qsand {

namespace {

// Per-factor strides for the leftmost-most-significant convention.
std::vector<int> strides_of(const std::vector<Factor>& factors) {
    std::vector<int> strides(factors.size(), 1);
    for (std::size_t i = factors.size(); i-- > 1;) {
        strides[i - 1] = strides[i] * factors[i].dim;
    }
    return strides;
}

// Global offsets contributed by the factors at `positions`, enumerated over
// all their joint digit values in row-major (most significant first) order.
std::vector<Eigen::Index> offsets_for(const SystemLayout& layout,
                                      const std::vector<std::size_t>& positions) {
    const auto strides = strides_of(layout.factors());
    std::vector<Eigen::Index> offsets{0};
    for (std::size_t p : positions) {
        const int d = layout.factor(p).dim;
        const int stride = strides[p];
        std::vector<Eigen::Index> next;
        next.reserve(offsets.size() * static_cast<std::size_t>(d));
        for (Eigen::Index base : offsets) {
            for (int a = 0; a < d; ++a) next.push_back(base + static_cast<Eigen::Index>(a) * stride);
        }
        offsets = std::move(next);
    }
    return offsets;
}

void check_unique_known(const SystemLayout& layout, const std::vector<std::string>& labels,
                        const char* who) {
    std::unordered_set<std::string> seen;
    for (const auto& l : labels) {
        if (!layout.has_label(l)) {
            throw std::invalid_argument(std::string(who) + ": unknown label '" + l + "'");
        }
        if (!seen.insert(l).second) {
            throw std::invalid_argument(std::string(who) + ": duplicate label '" + l + "'");
        }
    }
}

} // namespace

SystemLayout::SystemLayout(std::vector<Factor> factors) : factors_(std::move(factors)) {
    std::unordered_set<std::string> seen;
    for (const auto& f : factors_) {
        if (f.dim < 1) {
            throw std::invalid_argument("SystemLayout: dimension of '" + f.label +
                                        "' must be >= 1");
        }
        if (!seen.insert(f.label).second) {
            throw std::invalid_argument("SystemLayout: duplicate label '" + f.label + "'");
        }
        total_dim_ *= f.dim;
    }
}

SystemLayout SystemLayout::of_dims(const std::vector<int>& dims) {
    std::vector<Factor> factors;
    factors.reserve(dims.size());
    for (std::size_t i = 0; i < dims.size(); ++i) {
        std::string label;
        // A..Z, then F26, F27, ...
        if (i < 26) {
            label = std::string(1, static_cast<char>('A' + i));
        } else {
            label = "F" + std::to_string(i);
        }
        factors.push_back({label, dims[i]});
    }
    return SystemLayout(std::move(factors));
}

bool SystemLayout::has_label(const std::string& label) const {
    return std::any_of(factors_.begin(), factors_.end(),
                       [&](const Factor& f) { return f.label == label; });
}

std::size_t SystemLayout::position(const std::string& label) const {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i].label == label) return i;
    }
    throw std::invalid_argument("SystemLayout: unknown label '" + label + "'");
}

int SystemLayout::dim_of(const std::string& label) const {
    return factors_[position(label)].dim;
}

SystemLayout SystemLayout::subset(const std::vector<std::string>& labels) const {
    check_unique_known(*this, labels, "SystemLayout::subset");
    std::vector<Factor> kept;
    for (const auto& f : factors_) {
        if (std::find(labels.begin(), labels.end(), f.label) != labels.end()) kept.push_back(f);
    }
    return SystemLayout(std::move(kept));
}

SystemLayout SystemLayout::without(const std::vector<std::string>& labels) const {
    check_unique_known(*this, labels, "SystemLayout::without");
    std::vector<Factor> kept;
    for (const auto& f : factors_) {
        if (std::find(labels.begin(), labels.end(), f.label) == labels.end()) kept.push_back(f);
    }
    return SystemLayout(std::move(kept));
}

SystemLayout SystemLayout::appended(const std::string& label, int dim) const {
    auto factors = factors_;
    factors.push_back({label, dim});
    return SystemLayout(std::move(factors));
}

std::string SystemLayout::unique_label(const std::string& stem) const {
    if (!has_label(stem)) return stem;
    for (int i = 1;; ++i) {
        std::string candidate = stem + std::to_string(i);
        if (!has_label(candidate)) return candidate;
    }
}

std::vector<std::string> SystemLayout::labels() const {
    std::vector<std::string> out;
    out.reserve(factors_.size());
    for (const auto& f : factors_) out.push_back(f.label);
    return out;
}

std::string SystemLayout::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) os << ",";
        os << factors_[i].label << ":" << factors_[i].dim;
    }
    return os.str();
}

bool SystemLayout::operator==(const SystemLayout& other) const {
    if (factors_.size() != other.factors_.size()) return false;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i].label != other.factors_[i].label ||
            factors_[i].dim != other.factors_[i].dim) {
            return false;
        }
    }
    return true;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

std::pair<ComplexMatrix, SystemLayout>
partial_trace(const ComplexMatrix& m, const SystemLayout& layout,
              const std::vector<std::string>& traced) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("partial_trace: matrix must be square");
    }
    if (m.rows() != layout.total_dim()) {
        throw std::invalid_argument("partial_trace: matrix dim " + std::to_string(m.rows()) +
                                    " does not match layout total " +
                                    std::to_string(layout.total_dim()));
    }
    check_unique_known(layout, traced, "partial_trace");

    std::vector<std::size_t> kept_pos, traced_pos;
    for (std::size_t i = 0; i < layout.size(); ++i) {
        const auto& label = layout.factor(i).label;
        if (std::find(traced.begin(), traced.end(), label) != traced.end()) {
            traced_pos.push_back(i);
        } else {
            kept_pos.push_back(i);
        }
    }

    const auto kept_offsets = offsets_for(layout, kept_pos);
    const auto traced_offsets = offsets_for(layout, traced_pos);
    const auto n_kept = static_cast<Eigen::Index>(kept_offsets.size());

    ComplexMatrix out = ComplexMatrix::Zero(n_kept, n_kept);
    for (Eigen::Index r = 0; r < n_kept; ++r) {
        for (Eigen::Index c = 0; c < n_kept; ++c) {
            Complex sum(0.0, 0.0);
            for (Eigen::Index t : traced_offsets) {
                sum += m(kept_offsets[r] + t, kept_offsets[c] + t);
            }
            out(r, c) = sum;
        }
    }
    return {std::move(out), layout.without(traced)};
}

ComplexMatrix extend_with_identity(const ComplexMatrix& sub, const SystemLayout& full,
                                   const std::vector<std::string>& present, bool normalize) {
    check_unique_known(full, present, "extend_with_identity");

    std::vector<std::size_t> present_pos, missing_pos;
    for (std::size_t i = 0; i < full.size(); ++i) {
        const auto& label = full.factor(i).label;
        if (std::find(present.begin(), present.end(), label) != present.end()) {
            present_pos.push_back(i);
        } else {
            missing_pos.push_back(i);
        }
    }

    const auto present_offsets = offsets_for(full, present_pos);
    const auto missing_offsets = offsets_for(full, missing_pos);
    const auto n_present = static_cast<Eigen::Index>(present_offsets.size());
    if (sub.rows() != n_present || sub.cols() != n_present) {
        throw std::invalid_argument("extend_with_identity: matrix dim " +
                                    std::to_string(sub.rows()) +
                                    " does not match the present factors' total " +
                                    std::to_string(n_present));
    }

    const double weight =
        normalize ? 1.0 / static_cast<double>(missing_offsets.size()) : 1.0;
    ComplexMatrix out = ComplexMatrix::Zero(full.total_dim(), full.total_dim());
    for (Eigen::Index r = 0; r < n_present; ++r) {
        for (Eigen::Index c = 0; c < n_present; ++c) {
            const Complex v = sub(r, c) * weight;
            if (v == Complex(0.0, 0.0)) continue;
            for (Eigen::Index t : missing_offsets) {
                out(present_offsets[r] + t, present_offsets[c] + t) = v;
            }
        }
    }
    return out;
}

Spectrum hermitian_eig(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("hermitian_eig: matrix must be square");
    }
    const double dev = max_abs_diff(m, m.adjoint());
    if (dev > tol::herm) {
        throw std::invalid_argument("hermitian_eig: Hermiticity deviation " +
                                    std::to_string(dev) + " exceeds tolerance");
    }
    const ComplexMatrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_eig: eigensolver failed to converge");
    }

    // Eigen returns ascending order; flip to descending.
    Spectrum spec;
    spec.eigenvalues = solver.eigenvalues().reverse();
    spec.eigenvectors = solver.eigenvectors().rowwise().reverse();
    return spec;
}

namespace {

ComplexMatrix spectral_apply(const ComplexMatrix& m, double clip, const char* who,
                             double (*f)(double)) {
    const Spectrum spec = hermitian_eig(m);
    Eigen::VectorXd mapped(spec.eigenvalues.size());
    for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
        const double lambda = spec.eigenvalues[i];
        if (lambda < -clip) {
            throw std::invalid_argument(std::string(who) + ": eigenvalue " +
                                        std::to_string(lambda) + " below -clip, not PSD");
        }
        mapped[i] = lambda > clip ? f(lambda) : 0.0;
    }
    return spec.eigenvectors * mapped.asDiagonal() * spec.eigenvectors.adjoint();
}

} // namespace

ComplexMatrix matrix_log_on_support(const ComplexMatrix& m, double clip) {
    return spectral_apply(m, clip, "matrix_log_on_support",
                          [](double x) { return std::log(x); });
}

ComplexMatrix support_projector(const ComplexMatrix& m, double clip) {
    return spectral_apply(m, clip, "support_projector", [](double) { return 1.0; });
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    }
    if (a.size() == 0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

double isometry_deviation(const ComplexMatrix& m) {
    const ComplexMatrix gram = m.adjoint() * m;
    return max_abs_diff(gram, ComplexMatrix::Identity(gram.rows(), gram.cols()));
}

ComplexMatrix identity_matrix(int d) { return ComplexMatrix::Identity(d, d); }

} // namespace qsand
