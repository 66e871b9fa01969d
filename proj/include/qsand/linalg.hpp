// Dense complex matrix substrate: tensor-factor layouts, Kronecker products,
// partial traces over arbitrary factor subsets, Hermitian eigendecomposition
// and spectral matrix functions with explicit kernel handling.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qsand/tolerances.hpp"

namespace qsand {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

// Raised when a quantity that is nonnegative (or an identity) by theorem
// comes out wrong beyond tolerance; indicates a bug, not bad input.
struct consistency_error : std::logic_error {
    using std::logic_error::logic_error;
};

// One labeled tensor factor.
struct Factor {
    std::string label;
    int dim = 0;
};

// Ordered list of labeled subsystem dimensions. The leftmost factor is the
// most significant in index arithmetic: a basis index (a_0,...,a_{k-1}) maps
// to sum_i a_i * prod_{j>i} d_j.
class SystemLayout {
  public:
    SystemLayout() = default;
    explicit SystemLayout(std::vector<Factor> factors);

    // Factors named A, B, C, ... in order.
    static SystemLayout of_dims(const std::vector<int>& dims);

    const std::vector<Factor>& factors() const { return factors_; }
    std::size_t size() const { return factors_.size(); }
    const Factor& factor(std::size_t i) const { return factors_.at(i); }
    int total_dim() const { return total_dim_; }

    bool has_label(const std::string& label) const;
    std::size_t position(const std::string& label) const; // throws if absent
    int dim_of(const std::string& label) const;

    // Sub-layout of the given labels, kept in this layout's factor order.
    SystemLayout subset(const std::vector<std::string>& labels) const;
    // Complement of the given labels, in this layout's factor order.
    SystemLayout without(const std::vector<std::string>& labels) const;
    // Copy with one factor appended as the new least significant slot.
    SystemLayout appended(const std::string& label, int dim) const;

    // stem, stem1, stem2, ... — first variant not already in use.
    std::string unique_label(const std::string& stem) const;

    std::vector<std::string> labels() const;
    std::string to_string() const; // "A:2,B:3"

    bool operator==(const SystemLayout& other) const;

  private:
    std::vector<Factor> factors_;
    int total_dim_ = 1;
};

// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending,
// eigenvector columns in matching order.
struct Spectrum {
    Eigen::VectorXd eigenvalues;
    ComplexMatrix eigenvectors;
};

// Kronecker product; the first argument is the most significant factor.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Trace out the given factors. Returns the reduced matrix on the remaining
// factors (original relative order preserved) and the reduced layout.
std::pair<ComplexMatrix, SystemLayout>
partial_trace(const ComplexMatrix& m, const SystemLayout& layout,
              const std::vector<std::string>& traced);

// Inverse direction of partial_trace for product extensions: given a matrix
// on the sub-layout of `present` labels, tensor identity onto every other
// factor of `full`, each at its own position. With normalize=true the result
// carries I/d on the missing factors (so unit trace is preserved).
ComplexMatrix extend_with_identity(const ComplexMatrix& sub,
                                   const SystemLayout& full,
                                   const std::vector<std::string>& present,
                                   bool normalize);

// Symmetrizes the input (after checking max|m - m^dag| <= tol::herm) and
// diagonalizes. Reconstruction error is bounded by tol::eig * dim.
Spectrum hermitian_eig(const ComplexMatrix& m);

// U f(lambda) U^dag with f(x) = ln x for x > clip and 0 on the kernel.
ComplexMatrix matrix_log_on_support(const ComplexMatrix& m,
                                    double clip = tol::spectral_clip);

// Orthogonal projector onto the span of eigenvectors with eigenvalue > clip.
ComplexMatrix support_projector(const ComplexMatrix& m,
                                double clip = tol::spectral_clip);

// Entrywise max modulus of a - b (0x0 matrices give 0).
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// max|m^dag m - I|, the deviation from having orthonormal columns.
double isometry_deviation(const ComplexMatrix& m);

ComplexMatrix identity_matrix(int d);

} // namespace qsand
