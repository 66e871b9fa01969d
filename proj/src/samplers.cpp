#include "qsand/samplers.hpp"

#include <cmath>

#include "qsand/channels.hpp"

namespace qsand {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

SeededGenerator::SeededGenerator(std::uint64_t seed) : seed_(seed) {
    std::uint64_t x = seed;
    for (auto& s : state_) s = splitmix64(x);
}

std::uint64_t SeededGenerator::next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double SeededGenerator::next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SeededGenerator::next_gaussian() {
    // One Box-Muller pair per call, cos branch only; keeps the draw order
    // independent of any cached state.
    const double u1 = 1.0 - next_uniform(); // (0, 1]
    const double u2 = next_uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

Complex SeededGenerator::next_complex_gaussian() {
    const double u1 = 1.0 - next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
}

std::uint64_t SeededGenerator::child_seed(std::uint64_t parent_seed, std::uint64_t index) {
    std::uint64_t x = parent_seed ^ rotl(index + 1, 32) ^ 0x6a09e667f3bcc909ULL;
    splitmix64(x);
    return splitmix64(x);
}

SeededGenerator SeededGenerator::child(std::uint64_t index) const {
    return SeededGenerator(child_seed(seed_, index));
}

DensityMatrix random_density_matrix(const SystemLayout& layout, int rank,
                                    SeededGenerator& gen) {
    const int d = layout.total_dim();
    if (rank < 1 || rank > d) {
        throw std::invalid_argument("random_density_matrix: rank " + std::to_string(rank) +
                                    " out of range [1, " + std::to_string(d) + "]");
    }
    ComplexMatrix g(d, rank);
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
        for (Eigen::Index j = 0; j < g.cols(); ++j) {
            g(i, j) = gen.next_complex_gaussian();
        }
    }
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix(std::move(rho), layout);
}

DensityMatrix random_density_matrix(int d, int rank, SeededGenerator& gen) {
    return random_density_matrix(SystemLayout::of_dims({d}), rank, gen);
}

ComplexMatrix random_unitary(int d, SeededGenerator& gen) {
    if (d < 1) throw std::invalid_argument("random_unitary: d must be >= 1");
    ComplexMatrix g(d, d);
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
        for (Eigen::Index j = 0; j < g.cols(); ++j) {
            g(i, j) = gen.next_complex_gaussian();
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phase gauge: absorb the R diagonal's phases so R would have a
    // positive real diagonal; this is what makes Q Haar-distributed.
    for (Eigen::Index j = 0; j < d; ++j) {
        const Complex rjj = r(j, j);
        const double mag = std::abs(rjj);
        const Complex phase = mag > 0.0 ? rjj / mag : Complex(1.0, 0.0);
        q.col(j) *= phase;
    }
    return q;
}

KrausSet random_kraus_set(int d, int m, SeededGenerator& gen) {
    if (d < 1 || m < 1) {
        throw std::invalid_argument("random_kraus_set: d and m must be >= 1");
    }
    const ComplexMatrix u = random_unitary(m * d, gen);
    const ComplexMatrix isometry = u.leftCols(d);
    KrausSet ks;
    ks.operators.reserve(static_cast<std::size_t>(m));
    for (int block = 0; block < m; ++block) {
        ks.operators.push_back(isometry.middleRows(block * d, d));
    }
    return ks;
}

} // namespace qsand
