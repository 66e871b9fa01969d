#include "qsand/optimizer.hpp"

#include <cmath>

namespace qsand {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInitialStep = kPi / 4.0;
constexpr double kMinStep = 1e-4;

struct ChainViews {
    // Precomputed marginals for the ls chains.
    std::optional<DensityMatrix> rho_ab;
};

double middle_term(const RemixObjective& obj, const ChainViews& views, const KrausSet& ks) {
    switch (obj.chain) {
        case ChainKind::Sandwich:
            return relative_entropy(apply_ls_channel(ks, obj.rho),
                                    apply_ls_channel(ks, *obj.gamma));
        case ChainKind::LsMain: {
            const int dim_c = obj.rho.layout().factor(2).dim;
            KrausSet full;
            full.operators.reserve(ks.operators.size());
            const ComplexMatrix eye_c = ComplexMatrix::Identity(dim_c, dim_c);
            for (const auto& k : ks.operators) full.operators.push_back(kron(k, eye_c));
            return von_neumann_entropy(apply_ls_channel(full, obj.rho)) -
                   von_neumann_entropy(apply_ls_channel(ks, *views.rho_ab));
        }
        case ChainKind::Ls9: {
            KrausSet local = ks;
            if (local.acting_on.empty()) {
                local.acting_on = obj.rho.layout().factor(1).label;
            }
            const KrausSet full = embed_on_subsystem(local, obj.rho.layout());
            const KrausSet on_ab = embed_on_subsystem(local, views.rho_ab->layout());
            return von_neumann_entropy(apply_ls_channel(full, obj.rho)) -
                   von_neumann_entropy(apply_ls_channel(on_ab, *views.rho_ab));
        }
    }
    throw std::logic_error("middle_term: unreachable");
}

ChainViews make_views(const RemixObjective& obj) {
    ChainViews views;
    if (obj.chain != ChainKind::Sandwich) {
        const auto& layout = obj.rho.layout();
        views.rho_ab =
            obj.rho.keeping({layout.factor(0).label, layout.factor(1).label});
    }
    return views;
}

bool improves(Direction direction, double candidate, double incumbent) {
    return direction == Direction::MaximizeMiddle ? candidate > incumbent
                                                  : candidate < incumbent;
}

} // namespace

Direction direction_from_name(const std::string& name) {
    if (name == "maximize" || name == "maximize-middle" || name == "max") {
        return Direction::MaximizeMiddle;
    }
    if (name == "minimize" || name == "minimize-middle" || name == "min") {
        return Direction::MinimizeMiddle;
    }
    throw std::invalid_argument("unknown direction '" + name + "'");
}

ChainKind chain_kind_from_name(const std::string& name) {
    if (name == "sandwich") return ChainKind::Sandwich;
    if (name == "ls-main") return ChainKind::LsMain;
    if (name == "ls9") return ChainKind::Ls9;
    throw std::invalid_argument("unknown chain '" + name + "' for tightening");
}

std::string to_string(Direction direction) {
    return direction == Direction::MaximizeMiddle ? "maximize-middle" : "minimize-middle";
}

std::string to_string(ChainKind chain) {
    switch (chain) {
        case ChainKind::Sandwich: return "sandwich";
        case ChainKind::LsMain: return "ls-main";
        case ChainKind::Ls9: return "ls9";
    }
    return "?";
}

void RemixObjective::validate() const {
    const auto report = validate_kraus(base);
    if (!report.pass) {
        throw std::invalid_argument("RemixObjective: base Kraus set deviation " +
                                    std::to_string(report.max_deviation) +
                                    " exceeds tolerance");
    }
    switch (chain) {
        case ChainKind::Sandwich:
            if (!gamma) {
                throw std::invalid_argument("RemixObjective: sandwich chain needs gamma");
            }
            if (gamma->dim() != rho.dim() || base.dim() != rho.dim()) {
                throw std::invalid_argument("RemixObjective: sandwich dimensions mismatch");
            }
            break;
        case ChainKind::LsMain: {
            if (rho.layout().size() != 3) {
                throw std::invalid_argument("RemixObjective: ls-main needs a three-factor state");
            }
            const int dim_ab = rho.layout().factor(0).dim * rho.layout().factor(1).dim;
            if (base.dim() != dim_ab) {
                throw std::invalid_argument("RemixObjective: Kraus dim does not match the "
                                            "leading compound");
            }
            break;
        }
        case ChainKind::Ls9: {
            if (rho.layout().size() != 3) {
                throw std::invalid_argument("RemixObjective: ls9 needs a three-factor state");
            }
            const auto& middle = rho.layout().factor(1);
            if (base.dim() != middle.dim) {
                throw std::invalid_argument("RemixObjective: Kraus dim does not match the "
                                            "middle factor");
            }
            if (!base.acting_on.empty() && base.acting_on != middle.label) {
                throw std::invalid_argument("RemixObjective: Kraus set acts on '" +
                                            base.acting_on + "', expected '" + middle.label +
                                            "'");
            }
            break;
        }
    }
}

ComplexMatrix parametrize_unitary(const std::vector<double>& params) {
    const auto n = params.size();
    const auto m = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
    if (m * m != n || n == 0) {
        throw std::invalid_argument("parametrize_unitary: parameter count " +
                                    std::to_string(n) + " is not a positive perfect square");
    }

    ComplexMatrix a = ComplexMatrix::Zero(static_cast<Eigen::Index>(m),
                                          static_cast<Eigen::Index>(m));
    std::size_t idx = 0;
    for (std::size_t k = 0; k < m; ++k) a(k, k) = Complex(0.0, params[idx++]);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = j + 1; k < m; ++k) {
            const double re = params[idx++];
            const double im = params[idx++];
            a(j, k) = Complex(re, im);
            a(k, j) = Complex(-re, im); // -conj(a_jk)
        }
    }

    if (a.cwiseAbs().maxCoeff() == 0.0) {
        return ComplexMatrix::Identity(a.rows(), a.cols());
    }

    // exp(A) = exp(iH) with H = -iA Hermitian, via the spectral decomposition.
    const ComplexMatrix h = Complex(0.0, -1.0) * a;
    const Spectrum spec = hermitian_eig(h);
    Eigen::VectorXcd phases(spec.eigenvalues.size());
    for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
        phases[i] = std::exp(Complex(0.0, spec.eigenvalues[i]));
    }
    return spec.eigenvectors * phases.asDiagonal() * spec.eigenvectors.adjoint();
}

double evaluate_objective(const RemixObjective& obj, const ComplexMatrix& w) {
    obj.validate();
    if (w.rows() != obj.base.count() || w.cols() != obj.base.count()) {
        throw std::invalid_argument("evaluate_objective: remix matrix must be " +
                                    std::to_string(obj.base.count()) + "x" +
                                    std::to_string(obj.base.count()));
    }
    const ChainViews views = make_views(obj);
    return middle_term(obj, views, remix_kraus(obj.base, w));
}

std::pair<double, double> objective_outer_terms(const RemixObjective& obj) {
    obj.validate();
    switch (obj.chain) {
        case ChainKind::Sandwich:
            return {relative_entropy(apply_channel(obj.base, obj.rho),
                                     apply_channel(obj.base, *obj.gamma)),
                    relative_entropy(obj.rho, *obj.gamma)};
        case ChainKind::LsMain: {
            const SlackReport report = check_ls_main(obj.rho, obj.base);
            return {report.terms[0].value, report.terms[2].value};
        }
        case ChainKind::Ls9: {
            const SlackReport report = check_ls9(obj.rho, obj.base);
            return {report.terms[0].value, report.terms[2].value};
        }
    }
    throw std::logic_error("objective_outer_terms: unreachable");
}

RemixTrace tighten(const RemixObjective& obj, int budget, int restarts,
                   SeededGenerator& gen) {
    obj.validate();
    if (budget < 1) throw std::invalid_argument("tighten: budget must be >= 1");
    if (restarts < 1) throw std::invalid_argument("tighten: restarts must be >= 1");

    const ChainViews views = make_views(obj);
    const std::size_t n_params =
        static_cast<std::size_t>(obj.base.count()) * static_cast<std::size_t>(obj.base.count());

    RemixTrace trace;
    trace.seed = gen.seed();
    trace.rng_algorithm = SeededGenerator::algorithm();
    const auto outer = objective_outer_terms(obj);
    trace.outer_lower = outer.first;
    trace.outer_upper = outer.second;

    bool have_best = false;
    const auto evaluate = [&](const std::vector<double>& params) {
        const double value = middle_term(obj, views, remix_kraus(obj.base, parametrize_unitary(params)));
        trace.evaluations.push_back({params, value});
        if (!have_best || improves(obj.direction, value, trace.best_value)) {
            trace.best_value = value;
            trace.best_params = params;
            have_best = true;
        }
        return value;
    };

    // Per-restart evaluation quota; earlier restarts absorb the remainder.
    const int base_quota = budget / restarts;
    int leftover = budget % restarts;

    for (int restart = 0; restart < restarts; ++restart) {
        int quota = base_quota + (leftover > 0 ? 1 : 0);
        if (leftover > 0) --leftover;
        const int global_remaining = budget - static_cast<int>(trace.evaluations.size());
        quota = std::min(quota, global_remaining);
        if (quota < 1) break;

        std::vector<double> point(n_params, 0.0);
        if (restart > 0) {
            for (auto& p : point) p = (2.0 * gen.next_uniform() - 1.0) * kPi;
        }

        int used = 0;
        double incumbent = evaluate(point);
        ++used;
        if (restart == 0) trace.baseline_value = incumbent;

        double step = kInitialStep;
        while (step >= kMinStep && used < quota) {
            bool improved = false;
            for (std::size_t i = 0; i < n_params && used < quota; ++i) {
                for (const double sign : {+1.0, -1.0}) {
                    if (used >= quota) break;
                    std::vector<double> trial = point;
                    trial[i] += sign * step;
                    const double value = evaluate(trial);
                    ++used;
                    if (improves(obj.direction, value, incumbent)) {
                        point = std::move(trial);
                        incumbent = value;
                        improved = true;
                        break;
                    }
                }
            }
            if (!improved) step *= 0.5;
        }
    }

    trace.budget_used = static_cast<int>(trace.evaluations.size());
    trace.best_unitary = parametrize_unitary(trace.best_params);
    return trace;
}

} // namespace qsand
