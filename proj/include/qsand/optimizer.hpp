// Derivative-free search over the unitary-remix family of a fixed channel's
// Kraus representations, tightening the w-dependent middle term of a chain
// while its outer terms stay put.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsand/channels.hpp"
#include "qsand/inequalities.hpp"
#include "qsand/samplers.hpp"

namespace qsand {

enum class Direction { MaximizeMiddle, MinimizeMiddle };
enum class ChainKind { Sandwich, LsMain, Ls9 };

Direction direction_from_name(const std::string& name);
ChainKind chain_kind_from_name(const std::string& name);
std::string to_string(Direction direction);
std::string to_string(ChainKind chain);

// Fixed problem data: which chain's middle term to move, in which direction,
// for which states and base Kraus set.
struct RemixObjective {
    Direction direction = Direction::MaximizeMiddle;
    ChainKind chain = ChainKind::Sandwich;
    KrausSet base;
    DensityMatrix rho;                  // sandwich: rho; ls chains: the ABC state
    std::optional<DensityMatrix> gamma; // sandwich only

    void validate() const;
};

struct RemixEvaluation {
    std::vector<double> params;
    double value = 0.0;
};

struct RemixTrace {
    std::vector<RemixEvaluation> evaluations;
    std::vector<double> best_params;
    ComplexMatrix best_unitary;
    double best_value = 0.0;
    double baseline_value = 0.0; // middle term at w = I
    double outer_lower = 0.0;    // w-independent chain bounds
    double outer_upper = 0.0;
    int budget_used = 0;
    std::uint64_t seed = 0;
    std::string rng_algorithm;
};

// exp(A) for the anti-Hermitian A built from m^2 real coordinates: the first
// m give the diagonal imaginary parts, then each pair j<k contributes a real
// and an imaginary off-diagonal component.
ComplexMatrix parametrize_unitary(const std::vector<double>& params);

// Middle term of the objective's chain with the base set remixed by w.
double evaluate_objective(const RemixObjective& obj, const ComplexMatrix& w);

// The chain's w-independent (lower, upper) terms bracketing every middle.
std::pair<double, double> objective_outer_terms(const RemixObjective& obj);

// Coordinate pattern search (steps +-delta per coordinate, delta halved from
// pi/4 down to 1e-4 on sweeps without improvement). The first restart starts
// at params = 0 (the identity remix), later restarts at uniform points in
// [-pi, pi]^(m^2). One budget unit is one evaluate_objective call.
RemixTrace tighten(const RemixObjective& obj, int budget, int restarts,
                   SeededGenerator& gen);

} // namespace qsand
