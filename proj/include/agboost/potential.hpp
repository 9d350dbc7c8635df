#pragma once

// Margin potentials. The smooth piecewise potential
//
//   phi(z) = 2 - z            for z <= 0
//          = (z + 2) e^{-z}   for z > 0
//
// is convex, C^2, non-negative, decreasing, with phi' in [-1, 0] and
// phi'' in [0, 1/e]. The MadaBoost variant only supplies baseline weights.
//
// All functions reject non-finite input with std::domain_error and return
// the exact limit 0 for z > 700 on the smooth branch.

namespace agboost {

enum class PotentialKind { SmoothPiecewise, MadaBoost };

double phi(double z);
double phi_prime(double z);
double phi_second(double z);

/// MadaBoost potential: 1 - z for z <= 0, e^{-z} for z > 0.
double phi_madaboost(double z);
/// -phi_madaboost'(z) = min(1, e^{-z}); the baseline relabeling weight.
double madaboost_weight(double z);

double potential(PotentialKind kind, double z);
double potential_prime(PotentialKind kind, double z);

}  // namespace agboost
