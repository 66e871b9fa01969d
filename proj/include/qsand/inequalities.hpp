// Entropy-inequality chains evaluated as ordered term sequences with signed
// slacks. Terms are always listed with the theorem's smaller side first, so
// slack_i = term_{i+1} - term_i and "every slack >= -tolerance" means the
// chain holds.

#pragma once

#include <string>
#include <vector>

#include "qsand/channels.hpp"
#include "qsand/entropy.hpp"

namespace qsand {

struct SlackTerm {
    std::string description;
    double value = 0.0; // nats; may be +infinity
};

struct SlackReport {
    std::string chain_name;
    std::vector<SlackTerm> terms;
    std::vector<double> slacks; // terms.size() - 1 entries
    double tolerance = tol::slack;
    bool passed = false;

    double min_slack() const;
};

// Strong subadditivity as a conditional-entropy inequality on a three-factor
// state: S(ABC) - S(AB) <= S(BC) - S(B).
SlackReport check_ssa(const DensityMatrix& rho, double tolerance = tol::slack);

// The same statement as monotonicity of relative entropy under the partial
// trace over the first factor: H(rho_BC, rho_B x I/d_C) <= H(rho_ABC,
// rho_AB x I/d_C). The slack is checked to coincide with check_ssa's.
SlackReport check_monotonicity_form(const DensityMatrix& rho,
                                    double tolerance = tol::slack);

// H[Phi(rho), Phi(gamma)] <= H[Lambda(rho), Lambda(gamma)] <= H(rho, gamma)
// for a Kraus set acting on the full space of rho and gamma.
SlackReport check_sandwich(const DensityMatrix& rho, const DensityMatrix& gamma,
                           const KrausSet& ks, double tolerance = tol::slack);

// Entropy-difference form on a three-factor state with the channel acting on
// the AB compound:
//   S(ABC)-S(AB) <= S[(Lambda x I_C)rho]-S[Lambda rho_AB]
//                <= S[(Phi x I_C)rho]-S[Phi rho_AB].
SlackReport check_ls_main(const DensityMatrix& rho, const KrausSet& ks,
                          double tolerance = tol::slack);

// Four-term chain for a channel local to the middle factor B:
//   S(ABC)-S(AB) <= flagged-channel term <= plain-channel term
//                <= S(AC)-S(A).
SlackReport check_ls9(const DensityMatrix& rho, const KrausSet& ks_b,
                      double tolerance = tol::slack);

// Pure relative-entropy form of the B-local chain, evaluated on the dilation
// sigma = V rho V^dag with the flag merged into the B compound:
//   H(sigma_AC, sigma_A x I_C/d) <= H(sigma_ABC, sigma_AB x I_C/d)
//                                <= H(sigma_ABCE, sigma_ABE x I_C/d).
// Each slack is checked against the matching middle/end slack of check_ls9
// (the ln d_C constants cancel exactly).
SlackReport check_fin_equivalence(const DensityMatrix& rho, const KrausSet& ks_b,
                                  double tolerance = tol::slack);

} // namespace qsand
