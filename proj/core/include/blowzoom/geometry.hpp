#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace blowzoom {

// Integer power of 3, exact for n <= 37 (3^37 < 2^63).
inline std::int64_t ipow3(int n) {
    if (n < 0 || n > 37) throw std::domain_error("ipow3: exponent out of range");
    std::int64_t r = 1;
    for (int i = 0; i < n; ++i) r *= 3;
    return r;
}

// 3^a as a double, a may be negative.
inline double pow3(int a) {
    return a >= 0 ? static_cast<double>(ipow3(a)) : 1.0 / static_cast<double>(ipow3(-a));
}

inline double sq(double v) { return v * v; }

inline double euclid(std::span<const double> p, std::span<const double> q) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += sq(p[i] - q[i]);
    return std::sqrt(s);
}

// Axis-aligned half-open box: [lo_i, hi_i) per coordinate.
struct Box {
    std::vector<double> lo;
    std::vector<double> hi;

    Box() = default;
    Box(std::vector<double> lo_, std::vector<double> hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
        if (lo.size() != hi.size() || lo.empty()) throw std::invalid_argument("Box: bad bounds");
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (!(lo[i] < hi[i])) throw std::invalid_argument("Box: requires lo < hi");
    }

    static Box cube(int dim, double half_side) {
        return Box(std::vector<double>(dim, -half_side), std::vector<double>(dim, half_side));
    }

    int dim() const { return static_cast<int>(lo.size()); }

    bool contains(std::span<const double> x) const {
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (!(x[i] >= lo[i] && x[i] < hi[i])) return false;
        return true;
    }

    double volume() const {
        double v = 1.0;
        for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
        return v;
    }

    double side(int i) const { return hi[i] - lo[i]; }

    bool contains_box(const Box& inner) const {
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (inner.lo[i] < lo[i] - 1e-12 || inner.hi[i] > hi[i] + 1e-12) return false;
        return true;
    }
};

// The standard cube I_a = [-3^a/2, 3^a/2)^d.
inline Box standard_box(int dim, int a) { return Box::cube(dim, pow3(a) / 2.0); }

// eps-expansion I^+_{a,eps} = [-3^a/2 - eps, 3^a/2 + eps)^d.
inline Box expanded_box(int dim, int a, double eps) {
    if (eps <= 0) throw std::invalid_argument("expanded_box: eps must be positive");
    return Box::cube(dim, pow3(a) / 2.0 + eps);
}

// eps-contraction I^-_{a,eps} = [-3^a/2 + eps, 3^a/2 - eps)^d; requires eps < 3^a/2.
inline Box contracted_box(int dim, int a, double eps) {
    double h = pow3(a) / 2.0;
    if (eps <= 0 || eps >= h) throw std::invalid_argument("contracted_box: need 0 < eps < 3^a/2");
    return Box::cube(dim, h - eps);
}

}  // namespace blowzoom
