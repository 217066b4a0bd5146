#pragma once

#include <optional>
#include <vector>

#include "blowzoom/blowup.hpp"
#include "blowzoom/flat_metric.hpp"
#include "blowzoom/measure.hpp"
#include "blowzoom/triadic.hpp"

namespace blowzoom {

// Per-cube membership evidence: the candidate normalization (c, w), the
// F_{a+1} distance of the blow-up at x(Q) to nu_a^w, and the ball radius
// eps_a * eps_a^w it is tested against.
struct CubeCertificate {
    CubeId cube;
    double c = 0.0;
    WeightVector w;
    double distance = 0.0;
    double threshold = 0.0;
    bool pass = false;
    bool applicable = true;   // false when a neighbour leaves the window
    std::string note;
};

// mu_k = sum over cubes Q of Q_a^k contained in `window` of mu(Q) * nu^Q,
// where nu^Q is the inverse blow-up of nu|I_a onto Q normalized to unit mass.
// Every covered cube keeps its mu mass: mu_k(Q) = mu(Q). Requires mu(Q) > 0
// on every covered cube and nu(I_a) > 0.
AtomicMeasure construct_mu_k(const AtomicMeasure& mu, const AtomicMeasure& nu, int a, int k,
                             const Box& window);

// The density-proof candidate: c = nu(I_a)/mu(Q), w_j = mu(Q^j)/mu(Q).
std::pair<double, WeightVector> candidate_cw(const AtomicMeasure& mu, const AtomicMeasure& nu, int a,
                                             const CubeId& q);

// Evaluates the exact-reproduction identity for a constructed mu_k on cube Q:
// distance = F_{a+1}(T_{x(Q), r_a^k, c(Q)} mu_k, nu_a^w). For a genuine mu_k
// this vanishes to machine precision.
CubeCertificate exactness_check(const AtomicMeasure& mu_k, const AtomicMeasure& nu, int a, int k,
                                const CubeId& q, const Box& window, double beta_override = 0.0);

struct MembershipResult {
    std::optional<int> k;                     // first fully certified generation
    std::vector<CubeCertificate> certificates;  // of the success level, else of the last attempt
    int attempted_k_last = 0;
};

// Searches k = n..k_max for a generation at which every cube Q of Q_a^k
// inside I_a certifies with the candidate (c, w). Success is a sound
// membership certificate; failure is not a proof of non-membership.
MembershipResult certify_R_membership(const AtomicMeasure& mu, const AtomicMeasure& nu, int a, int n,
                                      int k_max, const Box& window, double beta_override = 0.0);

struct ConvergenceRow {
    int k = 0;
    double distance = 0.0;
    double bound = 0.0;  // 2 sqrt(d) 3^{-ak} mu(I_{b+1})
};

// F_b(mu_k, mu) against the uniform-continuity bound, per requested k.
std::vector<ConvergenceRow> convergence_probe(const AtomicMeasure& mu, const AtomicMeasure& nu, int a,
                                              const std::vector<int>& k_list, int b, const Box& window);

struct TangentProbeRow {
    int a = 0;
    int k = 0;
    CubeId cube;
    double c = 0.0;
    double distance = 0.0;   // F_b(c T_{x,r#} mu, nu)
    double threshold = 0.0;  // eps_a eps_a^w + 2 * 3^-a * nu(I_{b+1})
};

// Blow-up diagnostics at a point x: for each (a, k) locate the cube at x,
// normalize with the candidate constant, and measure the F_b distance to nu.
std::vector<TangentProbeRow> tangent_probe(const AtomicMeasure& mu, std::span<const double> x,
                                           const AtomicMeasure& nu,
                                           const std::vector<std::pair<int, int>>& a_k_list, int b);

}  // namespace blowzoom
