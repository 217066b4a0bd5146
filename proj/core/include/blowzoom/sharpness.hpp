#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blowzoom/measure.hpp"

namespace blowzoom {

// Search parameters for the Heaviside-avoider construction on R. The epsilon
// budget fixes eps' = eps/16 - 5 eps^2/4 and the certificate threshold
// min{eps'/52, eps^2}; the constant 52 traces to the ball-mass comparison
// mu(B(x,r)) <= 52 mu(B(y_i, r_i)) in the derivation.
struct SharpnessConfig {
    double eps = 0.04;            // in (0, 1/20)
    std::vector<double> r0_candidates;
    int i_max = 12;
    int y_grid_points = 6;
    int s_grid_points = 4;
    double h = 0.0;               // reference spacing; 0 = choose from eps (see sharpness.cpp)
    int cert_scales = 50;
    std::optional<double> y0;     // default: mu-mass median of the support

    double eps_prime() const { return eps / 16.0 - 5.0 * eps * eps / 4.0; }
    double threshold() const {
        double t1 = eps_prime() / 52.0, t2 = eps * eps;
        return t1 < t2 ? t1 : t2;
    }
};

struct CertRow {
    double r = 0.0;
    double distance = 0.0;   // F_2(c_{x,r} T_{x,r#} mu, reference)
    double threshold = 0.0;
    double slack = 0.0;      // reference discretization allowance
    bool pass = false;       // distance >= threshold - 1e-9
};

struct IterationRow {
    int i = 0;
    double r_i = 0.0;
    bool found = false;      // a (y_i, s_i) pair satisfied the F_3 test
    double y_i = 0.0;
    double s_i = 0.0;
    double f3 = 0.0;
    double x_i = 0.0;
};

struct SharpnessResult {
    int case_tag = 2;        // 1 = support gap, 2 = Heaviside avoider
    bool no_r0 = false;      // no starting scale passed: direct non-tangency evidence at y0
    double y0 = 0.0;
    double r0 = 0.0;
    double x = 0.0;
    std::vector<IterationRow> iterations;
    std::vector<CertRow> certificate;
    std::string note;
};

struct SupportGap {
    double x = 0.0;        // support point adjacent to the gap
    double eps_gap = 0.0;  // length of the empty interval
    int side = +1;         // +1: (x, x+eps) empty; -1: (x-eps, x) empty
};

// Scans for the largest one-sided mass gap at a support point, within the
// window. Gaps are measured from an atom to the next atom or the window edge.
std::optional<SupportGap> support_gap_scan(const AtomicMeasure& mu, const Box& window,
                                           double resolution);

// F_3 distance between the ball-normalized blow-up of mu at (y, s) and the
// h-atomized Heaviside reference on the closed cube bar(I_3). Only atoms with
// (p - y)/s in bar(I_3) participate. The reported slack 13.5 h bounds the
// atomization error of the reference and is carried into decision margins.
double f3_heaviside(const AtomicMeasure& mu, double y, double s, double h);

// Case 2 of the sharpness construction: the x_i iteration with grid searches
// over y in [x_{i-1}, x_{i-1} + r_i] and s in (r_{i+1}, r_i], followed by the
// re-evaluated certificate table over cert_scales log-spaced radii in
// (r_{i_max+1}, r_0]. Grid search approximates the exact quantifiers; only
// the certificate is acceptance-relevant.
SharpnessResult heaviside_avoider(const AtomicMeasure& mu, const SharpnessConfig& cfg);

// Case 1 evidence: at a gap point, certify F_2 distance of the blow-ups to
// the full Lebesgue reference across scales r <= eps_gap.
SharpnessResult gap_certificate(const AtomicMeasure& mu, const SupportGap& gap,
                                const SharpnessConfig& cfg);

}  // namespace blowzoom
