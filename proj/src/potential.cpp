#include "agboost/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace agboost {
namespace {

constexpr double kUnderflowCut = 700.0;

void require_finite(double z) {
    if (!std::isfinite(z)) throw std::domain_error("potential: non-finite margin");
}

}  // namespace

double phi(double z) {
    require_finite(z);
    if (z <= 0.0) return 2.0 - z;
    if (z > kUnderflowCut) return 0.0;
    return (z + 2.0) * std::exp(-z);
}

double phi_prime(double z) {
    require_finite(z);
    if (z <= 0.0) return -1.0;
    if (z > kUnderflowCut) return 0.0;
    return -(z + 1.0) * std::exp(-z);
}

double phi_second(double z) {
    require_finite(z);
    if (z <= 0.0) return 0.0;
    if (z > kUnderflowCut) return 0.0;
    return z * std::exp(-z);
}

double phi_madaboost(double z) {
    require_finite(z);
    if (z <= 0.0) return 1.0 - z;
    return std::exp(-z);
}

double madaboost_weight(double z) {
    require_finite(z);
    return z <= 0.0 ? 1.0 : std::exp(-z);
}

double potential(PotentialKind kind, double z) {
    return kind == PotentialKind::SmoothPiecewise ? phi(z) : phi_madaboost(z);
}

double potential_prime(PotentialKind kind, double z) {
    return kind == PotentialKind::SmoothPiecewise ? phi_prime(z) : -madaboost_weight(z);
}

}  // namespace agboost
