#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "blowzoom/geometry.hpp"

namespace blowzoom {

// A cube Q of the 3^a-adic filtration Q_a^k: side 3^{-ak}, center m * 3^{-ak}
// componentwise, extent [m_i s - s/2, m_i s + s/2) with s = 3^{-ak}. The unit
// cube I = [-1/2,1/2)^d is CubeId(a, 0, 0) for every a.
struct CubeId {
    int a = 1;
    int k = 0;
    std::vector<std::int64_t> m;

    CubeId() = default;
    CubeId(int a_, int k_, std::vector<std::int64_t> m_) : a(a_), k(k_), m(std::move(m_)) {
        if (a < 1) throw std::invalid_argument("CubeId: a must be >= 1");
    }

    int dim() const { return static_cast<int>(m.size()); }
    double side() const { return pow3(-a * k); }
    std::vector<double> center() const {
        std::vector<double> c(m.size());
        for (std::size_t i = 0; i < m.size(); ++i) c[i] = static_cast<double>(m[i]) * side();
        return c;
    }
    Box box() const {
        double s = side();
        std::vector<double> lo(m.size()), hi(m.size());
        for (std::size_t i = 0; i < m.size(); ++i) {
            lo[i] = (static_cast<double>(m[i]) - 0.5) * s;
            hi[i] = (static_cast<double>(m[i]) + 0.5) * s;
        }
        return Box(std::move(lo), std::move(hi));
    }
    std::string label() const;  // "a{a}:k{k}:[m_1,..,m_d]"

    bool operator==(const CubeId& o) const { return a == o.a && k == o.k && m == o.m; }
    bool operator<(const CubeId& o) const {
        if (a != o.a) return a < o.a;
        if (k != o.k) return k < o.k;
        return m < o.m;
    }
};

// The unique Q in Q_a^k containing x (half-open membership).
CubeId locate(std::span<const double> x, int a, int k);

// The cube two generations finer sharing the center of Q.
CubeId central_cube(const CubeId& q);

// The 3^d same-generation cubes Q + e*l(Q), e in {-1,0,1}^d. Index 0 is Q
// itself (e = 0); the rest follow in lexicographic order of e.
std::vector<CubeId> neighbours(const CubeId& q);

// r_a^k = 3^{-(k+1)a}: the unique radius for which T_{x(Q),r} maps Q in Q_a^k
// onto I_a and its central cube onto I_{-a}.
double blowup_radius(int a, int k);

// All cubes of Q_a^k contained in the half-open box `region`.
std::vector<CubeId> cubes_in_box(int a, int k, const Box& region);

}  // namespace blowzoom
