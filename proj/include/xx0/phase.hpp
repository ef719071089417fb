#pragma once

#include "xx0/partition.hpp"
#include "xx0/tracywidom.hpp"

// Closed-form asymptotic free energies, the mu/sigma/j scaling functions,
// phase-region classification, boundary-hit probabilities, and numerical
// transition-order detection across the domain walls.

namespace xx0 {

enum class Region { I, II, III, IV, QP_I, QP_II };

const char* region_name(Region r);

struct PhasePoint {
    double tau = 0.0;     // GW diagram coordinate (unused for QP)
    double n_inv = 0.0;   // GW diagram coordinate
    double lambda = 0.0;  // QP diagram coordinate
    Region region;
    double free_energy;
    double wall_distance;
};

struct ScalingPair {
    double mu;
    double sigma;
};

enum class Wall {
    TauOne_GW,    // tau = 1 in the infinite model
    Blue_I_II,    // n_inv = tau + 1, tau < 1
    Green_II_IV,  // tau = 1, n_inv > 2
    Red_III_IV,   // n_inv = 2 sqrt(tau), tau > 1
    Black_I_III,  // tau = 1, n_inv < 2
    QP_wall       // lambda = 2
};

struct TransitionReport {
    int order;    // lowest derivative order with a detected jump
    double jump;  // size of that jump
    double err;   // extrapolation error estimate
};

// mu = N_f + t, sigma = 2^{-1/3} t^{1/3}             for N_f >= t;
// mu = 2 sqrt(N_f t), sigma = 2^{-2/3} t^{1/3} (sqrt(N_f/t)+sqrt(t/N_f))^{1/3}
// for N_f < t. Throws for t <= 0 (degenerate).
ScalingPair mu_sigma(int n_f, double t);

// Scaling argument j(tau, n_inv): signed distance to the critical curve in
// units of the local sigma scale, piecewise across tau = 1.
double j_param(double tau, double n_inv);

// tau^2/4 for tau <= 1; tau - 3/4 - log(tau)/2 for tau > 1.
double free_energy_gw_infinite(double tau);

// Finite-model closed form: the infinite value minus a cubic correction
// below the critical curve (coefficient c2 = 1/12 in the scaled variable).
double free_energy_gw_finite(double tau, double n_inv);

// A_QP(N_f_ref) - |lambda - 2|^3 / 3 for lambda < 2, A_QP alone above.
// A_QP is reported at a finite reference size (the defining limit diverges
// logarithmically); all wall statements are differences, which are finite.
double free_energy_qp_finite(double lambda, int n_f_ref);

// Region assignment; points exactly on a wall get the smaller region index.
PhasePoint classify(double tau, double n_inv);
PhasePoint classify_qp(double lambda, int n_f_ref = 32);

// P(magnon block reaches the boundary) = 1 - F(x) with the model's TW
// argument: x = (N - mu)/sigma (GW) or (N - 2 sqrt(N_f)) 2^{2/3} N_f^{1/6}.
double boundary_hit_probability(const ModelParams& p, Model model,
                                const TWEvaluator& ev);

// Differentiates the closed-form free energy across the wall with
// Richardson-extrapolated one-sided stencils and returns the lowest
// derivative order (1..4) whose jump exceeds 10x its error estimate.
TransitionReport transition_order(Wall wall);

}  // namespace xx0
