#pragma once

// Test-only reference solvers for the flat metric, independent of the
// production engines: a tabulated dynamic program over a discretized
// potential grid, and exact vertex enumeration for one- and two-atom
// configurations.

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <span>
#include <vector>

#include "blowzoom/geometry.hpp"

namespace blowzoom::testing {

// Brute maximization of sum c_i phi(x_i) over piecewise-linear phi sampled on
// `grid_points` points of [-L, L], with phi-values quantized to half the grid
// spacing. Atom charges are split linearly onto the two adjacent grid points,
// which realizes the same optimum as moving each atom to the grid (error at
// most sum|c| * h_g as the caller's tolerance accounts).
inline double grid_flat_oracle(std::span<const double> xs, std::span<const double> cs, double L,
                               int grid_points = 1000) {
    const int g = grid_points;
    const double hg = 2.0 * L / (g - 1);
    std::vector<double> coef(g, 0.0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double t = (xs[i] + L) / hg;
        int lo = std::clamp(static_cast<int>(std::floor(t)), 0, g - 1);
        int hi = std::min(lo + 1, g - 1);
        double frac = std::clamp(t - lo, 0.0, 1.0);
        coef[lo] += cs[i] * (1.0 - frac);
        coef[hi] += cs[i] * frac;
    }
    const double dphi = hg / 2.0;
    auto cap_at = [&](int t) { return std::min(t * hg, (g - 1 - t) * hg); };
    const int levels = static_cast<int>(std::floor(L / dphi)) + 1;
    const int window = 2;  // |q - q'| <= 2 realizes the +-hg Lipschitz step

    std::vector<double> v(levels, -1e300), next(levels, -1e300);
    v[0] = 0.0;  // phi(-L) = 0
    for (int t = 1; t < g; ++t) {
        // sliding-window maximum of v over indices within +-window
        std::deque<int> dq;
        int qmax = std::min(levels - 1, static_cast<int>(std::floor(cap_at(t) / dphi)));
        for (int q = 0; q < levels; ++q) next[q] = -1e300;
        int r = -1;
        for (int q = 0; q <= qmax; ++q) {
            while (r + 1 < levels && r + 1 <= q + window) {
                ++r;
                if (v[r] > -1e299) {
                    while (!dq.empty() && v[dq.back()] <= v[r]) dq.pop_back();
                    dq.push_back(r);
                }
            }
            while (!dq.empty() && dq.front() < q - window) dq.pop_front();
            if (!dq.empty()) next[q] = v[dq.front()] + coef[t] * (q * dphi);
        }
        std::swap(v, next);
    }
    return std::max(0.0, v[0]);  // phi(+L) = 0
}

// Exact optimum for at most two union atoms via vertex enumeration.
inline double two_atom_exact(std::span<const double> positions, int dim, std::span<const double> c,
                             std::span<const double> cap) {
    auto best_signed = [&](double c1, double c2, double cap1, double cap2, double d12) {
        std::vector<double> f1c{0.0, cap1};
        double best = 0.0;
        for (double f1 : f1c) {
            for (double f2raw : {0.0, cap2, f1 - d12, f1 + d12}) {
                double f2 = std::clamp(f2raw, 0.0, cap2);
                if (std::abs(f1 - f2) <= d12 + 1e-15) best = std::max(best, c1 * f1 + c2 * f2);
            }
        }
        // also vertices anchored at phi2 extremes
        for (double f2 : {0.0, cap2}) {
            for (double f1raw : {f2 - d12, f2 + d12}) {
                double f1 = std::clamp(f1raw, 0.0, cap1);
                if (std::abs(f1 - f2) <= d12 + 1e-15) best = std::max(best, c1 * f1 + c2 * f2);
            }
        }
        return best;
    };
    if (c.size() == 1) return std::max({0.0, c[0] * cap[0], -c[0] * cap[0]});
    std::span<const double> p1(positions.data(), dim), p2(positions.data() + dim, dim);
    double d12 = euclid(p1, p2);
    double v1 = best_signed(c[0], c[1], cap[0], cap[1], d12);
    double v2 = best_signed(-c[0], -c[1], cap[0], cap[1], d12);
    return std::max(v1, v2);
}

}  // namespace blowzoom::testing
