#pragma once

#include <span>
#include <vector>

#include "blowzoom/measure.hpp"

namespace blowzoom {

// Element of W: 3^d positive weights over the neighbour offsets of I_a, in
// the neighbour order of triadic.hpp (index 0 is the center, w[0] = 1).
struct WeightVector {
    int dim = 1;
    std::vector<double> w;

    WeightVector() = default;
    WeightVector(int d, std::vector<double> weights);
    static WeightVector ones(int d);
    std::size_t size() const { return w.size(); }
};

// The parameters beta_a, eps_a = beta_a * nu(I_{-a}), and eps_a^w chosen so
// that both buffer masses around the cubes I_{+-a} stay below eps_a.
struct EpsilonChoice {
    int a = 1;
    double beta_a = 0.0;
    double eps_a = 0.0;
    double eps_a_w = 0.0;
};

// T_{x,r,c}: atom (p, w) -> ((p - x)/r, c*w).
AtomicMeasure blowup(const AtomicMeasure& mu, std::span<const double> x, double r, double c);

// Inverse map: atom (q, w) -> (x + r*q, w/c).
AtomicMeasure inverse_blowup(const AtomicMeasure& sigma, std::span<const double> x, double r, double c);

// nu_a^w: for each neighbour cube I_a^j place a copy of nu restricted to I_a,
// translated by the neighbour center and scaled by w_j. Restriction of the
// result to I_a equals nu|I_a exactly.
AtomicMeasure weighted_duplication(const AtomicMeasure& nu, int a, const WeightVector& w);

// beta_a = 3^-a / (8 nu(I_{-a})): the midpoint of the allowed range; gives
// eps_a = 3^-a/8 independently of nu.
double default_beta(const AtomicMeasure& nu, int a);

// Largest eps of the form eps_a * 2^-j, j = 1..60, with both buffer masses
//   nu(I^+_{-a,eps} \ I^-_{-a,eps})  and  nu_a^w(I^+_{a,eps} \ I^-_{a,eps})
// strictly below eps_a. Throws if none exists (atoms pathologically close to
// the boundaries).
double choose_epsilon_w(const AtomicMeasure& nu, int a, const WeightVector& w, double eps_a);

// Bundles the three choices with an optional beta override.
EpsilonChoice make_epsilon_choice(const AtomicMeasure& nu, int a, const WeightVector& w,
                                  double beta_override = 0.0);

}  // namespace blowzoom
