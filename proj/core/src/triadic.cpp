#include "blowzoom/triadic.hpp"

#include <cmath>
#include <sstream>

namespace blowzoom {

std::string CubeId::label() const {
    std::ostringstream os;
    os << "a" << a << ":k" << k << ":[";
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) os << ",";
        os << m[i];
    }
    os << "]";
    return os.str();
}

CubeId locate(std::span<const double> x, int a, int k) {
    if (a < 1) throw std::invalid_argument("locate: a must be >= 1");
    double s = pow3(-a * k);
    std::vector<std::int64_t> m(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        m[i] = static_cast<std::int64_t>(std::floor(x[i] / s + 0.5));
    return CubeId(a, k, std::move(m));
}

CubeId central_cube(const CubeId& q) {
    std::int64_t f = ipow3(2 * q.a);
    std::vector<std::int64_t> m(q.m.size());
    for (std::size_t i = 0; i < q.m.size(); ++i) m[i] = q.m[i] * f;
    return CubeId(q.a, q.k + 2, std::move(m));
}

std::vector<CubeId> neighbours(const CubeId& q) {
    const int d = q.dim();
    std::vector<CubeId> out;
    out.reserve(static_cast<std::size_t>(ipow3(d)));
    out.push_back(q);  // Q^1 = Q
    std::vector<int> e(d, -1);
    while (true) {
        bool zero = true;
        for (int i = 0; i < d; ++i)
            if (e[i] != 0) { zero = false; break; }
        if (!zero) {
            std::vector<std::int64_t> m(q.m);
            for (int i = 0; i < d; ++i) m[i] += e[i];
            out.emplace_back(q.a, q.k, std::move(m));
        }
        int i = d - 1;
        while (i >= 0 && e[i] == 1) {
            e[i] = -1;
            --i;
        }
        if (i < 0) break;
        ++e[i];
    }
    return out;
}

double blowup_radius(int a, int k) {
    if (a < 1) throw std::invalid_argument("blowup_radius: a must be >= 1");
    return pow3(-(k + 1) * a);
}

std::vector<CubeId> cubes_in_box(int a, int k, const Box& region) {
    const int d = region.dim();
    const double s = pow3(-a * k);
    std::vector<std::int64_t> lo(d), hi(d);
    std::int64_t count = 1;
    for (int i = 0; i < d; ++i) {
        // cube [ms - s/2, ms + s/2) inside [lo, hi): need ms - s/2 >= lo and ms + s/2 <= hi
        lo[i] = static_cast<std::int64_t>(std::ceil(region.lo[i] / s + 0.5 - 1e-9));
        hi[i] = static_cast<std::int64_t>(std::floor(region.hi[i] / s - 0.5 + 1e-9));
        if (hi[i] < lo[i]) return {};
        count *= hi[i] - lo[i] + 1;
        if (count > (1LL << 32)) throw std::invalid_argument("cubes_in_box: too many cubes");
    }
    std::vector<CubeId> out;
    out.reserve(static_cast<std::size_t>(count));
    std::vector<std::int64_t> m(lo);
    while (true) {
        out.emplace_back(a, k, m);
        int i = d - 1;
        while (i >= 0 && m[i] == hi[i]) {
            m[i] = lo[i];
            --i;
        }
        if (i < 0) break;
        ++m[i];
    }
    return out;
}

}  // namespace blowzoom
