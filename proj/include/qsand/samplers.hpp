// Seeded random generation of density matrices, Haar unitaries and Kraus
// sets. The generator is hand-rolled (xoshiro256** with splitmix64 seeding,
// Box-Muller gaussians in fixed call order) so that draw sequences are
// bit-identical for a given seed, independent of the platform's stdlib.

#pragma once

#include <cstdint>
#include <string>

#include "qsand/entropy.hpp"
#include "qsand/linalg.hpp"

namespace qsand {

struct KrausSet;

class SeededGenerator {
  public:
    explicit SeededGenerator(std::uint64_t seed);

    // Recorded in reports next to the seed.
    static const char* algorithm() { return "xoshiro256**/box-muller"; }

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64();
    double next_uniform();          // [0, 1)
    double next_gaussian();         // N(0, 1)
    Complex next_complex_gaussian(); // independent N(0,1) real and imag parts

    // Independent child stream: child_seed = hash(parent_seed, index).
    SeededGenerator child(std::uint64_t index) const;
    static std::uint64_t child_seed(std::uint64_t parent_seed, std::uint64_t index);

  private:
    std::uint64_t seed_;
    std::uint64_t state_[4];
};

// G G^dag / Tr(G G^dag) with G a (total_dim x rank) standard complex Gaussian
// matrix; Hilbert-Schmidt-induced measure at full rank.
DensityMatrix random_density_matrix(const SystemLayout& layout, int rank,
                                    SeededGenerator& gen);
DensityMatrix random_density_matrix(int d, int rank, SeededGenerator& gen);

// Haar-distributed unitary: QR of a complex Gaussian matrix with the R
// diagonal's phases absorbed into Q (R diagonal normalized to positive reals).
ComplexMatrix random_unitary(int d, SeededGenerator& gen);

// First d columns of a Haar random (m*d)-dimensional unitary, sliced into m
// stacked d x d blocks; passes the completeness check by construction.
KrausSet random_kraus_set(int d, int m, SeededGenerator& gen);

} // namespace qsand
