// Shared fixtures and independent oracles for the test suites. Everything
// here is deliberately dumb and self-contained: closed-form entropies of
// probability vectors, hand-built states, elementary matrices. These are the
// reference values the library is checked against, so none of it may call
// back into the code paths under test.

#pragma once

#include <cmath>
#include <vector>

#include "qsand/entropy.hpp"
#include "qsand/linalg.hpp"

namespace qsand::testing {

inline constexpr double kLn2 = 0.69314718055994530941723212145818;

// Shannon entropy of a probability vector, in nats.
inline double shannon(const std::vector<double>& p) {
    double s = 0.0;
    for (double x : p) {
        if (x > 0.0) s -= x * std::log(x);
    }
    return s;
}

inline ComplexMatrix ket(int d, int i) {
    ComplexMatrix v = ComplexMatrix::Zero(d, 1);
    v(i, 0) = 1.0;
    return v;
}

inline ComplexMatrix projector(int d, int i) { return ket(d, i) * ket(d, i).adjoint(); }

inline ComplexMatrix pure(const ComplexMatrix& psi) { return psi * psi.adjoint(); }

// (|0...0> + |1...1> + ...)/sqrt(q) on n factors of dimension q.
inline ComplexMatrix ghz_vector(int q, int n) {
    int total = 1, repunit = 0;
    for (int k = 0; k < n; ++k) {
        total *= q;
        repunit = repunit * q + 1;
    }
    ComplexMatrix psi = ComplexMatrix::Zero(total, 1);
    for (int i = 0; i < q; ++i) psi(i * repunit, 0) = 1.0 / std::sqrt(static_cast<double>(q));
    return psi;
}

inline DensityMatrix ghz_state() {
    return DensityMatrix(pure(ghz_vector(2, 3)), SystemLayout::of_dims({2, 2, 2}));
}

inline DensityMatrix bell_state() {
    return DensityMatrix(pure(ghz_vector(2, 2)), SystemLayout::of_dims({2, 2}));
}

inline DensityMatrix plus_state() {
    ComplexMatrix psi(2, 1);
    psi << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    return DensityMatrix(pure(psi), SystemLayout::of_dims({2}));
}

inline DensityMatrix maximally_mixed(const SystemLayout& layout) {
    const int d = layout.total_dim();
    return DensityMatrix(ComplexMatrix::Identity(d, d) / static_cast<double>(d), layout);
}

inline ComplexMatrix diag_state(const std::vector<double>& p) {
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(p.size()),
                                          static_cast<Eigen::Index>(p.size()));
    for (std::size_t i = 0; i < p.size(); ++i) m(static_cast<Eigen::Index>(i),
                                                 static_cast<Eigen::Index>(i)) = p[i];
    return m;
}

} // namespace qsand::testing
