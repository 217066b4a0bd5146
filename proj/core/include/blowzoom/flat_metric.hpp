#pragma once

#include <optional>
#include <utility>

#include "blowzoom/measure.hpp"

namespace blowzoom {

struct MetricResult {
    double value = 0.0;
    double certified_error = 0.0;
    std::optional<int> saturation_level;  // first a with min{1, F_a} = 1
};

// F_a(mu, nu): supremum of |int phi dmu - int phi dnu| over nonnegative
// 1-Lipschitz phi supported in I_a. Exact for atomic measures (finite
// transportation dual). Dimension 1 uses the fast path solver; higher
// dimensions the successive-shortest-path engine (atom union capped at 4000;
// coarsen first).
double f_a(const AtomicMeasure& mu, const AtomicMeasure& nu, int a);

// d(mu, nu) = sum_{a>=1} 2^-a min{1, F_a}, partial sum to A_max. F_a is
// nondecreasing in a, so once a term saturates the tail is exact and the
// certified error is 0; otherwise it is 2^-A_max.
MetricResult d_metric(const AtomicMeasure& mu, const AtomicMeasure& nu, int a_max = 20);

// Membership in the open F_a-ball U_a(nu, eps).
bool in_ball(const AtomicMeasure& mu, const AtomicMeasure& nu, int a, double eps);

// Minimizes c -> f_a(c*mu, nu) (convex) by ternary search bracketing the mass
// ratio nu(I_a)/mu(I_a); relative tolerance 1e-6. Returns (c*, value at c*).
std::pair<double, double> best_constant(const AtomicMeasure& mu, const AtomicMeasure& nu, int a);

}  // namespace blowzoom
