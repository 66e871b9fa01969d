// Kraus-represented CPT maps: the plain channel Phi(rho) = sum K rho K^dag,
// the flagged variant Lambda_LS(rho) = sum K rho K^dag x |m><m| that records
// which branch fired, the partial-isometry dilation sigma = V rho V^dag that
// reduces to both, unitary remixing of Kraus sets, and embedding of
// subsystem-local sets into larger layouts.

#pragma once

#include <string>
#include <vector>

#include "qsand/entropy.hpp"
#include "qsand/linalg.hpp"

namespace qsand {

// Equal-shaped square operators satisfying sum K^dag K = I. acting_on names
// the subsystem the set addresses; empty means the set is used on a full
// space directly.
struct KrausSet {
    std::vector<ComplexMatrix> operators;
    std::string acting_on;

    int count() const { return static_cast<int>(operators.size()); }
    int dim() const;
};

struct KrausValidation {
    double max_deviation = 0.0;
    bool pass = false;
};

// sigma = V rho V^dag on the input layout extended by a flag factor and an
// environment factor (both appended rightmost, flag before environment, each
// of dimension count()). Tracing out the environment gives the flagged
// channel's output; tracing out both ancillas gives the plain channel's.
struct DilationResult {
    DensityMatrix sigma;
    ComplexMatrix isometry;
    std::string flag_label;
    std::string env_label;
};

// Reports max|sum K^dag K - I|; pass iff within tol::kraus.
KrausValidation validate_kraus(const KrausSet& ks);

// Phi(rho) = sum K rho K^dag on the unchanged layout.
DensityMatrix apply_channel(const KrausSet& ks, const DensityMatrix& rho);

// Lambda_LS(rho) = sum K rho K^dag x |m><m|, the flag appended as a new
// rightmost factor with an auto-generated unique label.
DensityMatrix apply_ls_channel(const KrausSet& ks, const DensityMatrix& rho);

DilationResult build_dilation(const KrausSet& ks, const DensityMatrix& rho);

// K'_n = sum_m w_{nm} K_m for unitary w; represents the same channel.
KrausSet remix_kraus(const KrausSet& ks, const ComplexMatrix& w);

// I_before x K x I_after per the layout's factor order; requires acting_on
// to name a factor of the layout with matching dimension.
KrausSet embed_on_subsystem(const KrausSet& ks, const SystemLayout& layout);

} // namespace qsand
