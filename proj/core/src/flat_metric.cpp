#include "blowzoom/flat_metric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "blowzoom/transport.hpp"

namespace blowzoom {

namespace {

// union of atom positions inside the closed cube bar(I_a), with signed
// charges scale*mu - nu; exact-equal positions merge
struct FlatInstance {
    int dim = 1;
    std::vector<double> pos;      // flattened
    std::vector<double> mu_w;     // mu weight at union point (0 if absent)
    std::vector<double> nu_w;
    std::vector<double> cap;      // distance to the complement of I_a
    double half = 0.0;
};

double cap_of(std::span<const double> x, double half) {
    double c = std::numeric_limits<double>::infinity();
    for (double v : x) c = std::min(c, std::min(half - v, v + half));
    return std::max(0.0, c);
}

FlatInstance assemble(const AtomicMeasure& mu, const AtomicMeasure& nu, int a) {
    if (mu.dim() != nu.dim()) throw std::invalid_argument("f_a: dimension mismatch");
    if (a < 1) throw std::invalid_argument("f_a: a must be >= 1");
    FlatInstance ins;
    ins.dim = mu.dim();
    ins.half = pow3(a) / 2.0;
    const int d = ins.dim;

    auto inside = [&](std::span<const double> x) {
        for (double v : x)
            if (v < -ins.half || v > ins.half) return false;  // closed cube
        return true;
    };

    // merge two sorted atom streams
    std::size_t i = 0, j = 0;
    auto push = [&](std::span<const double> x, double wm, double wn) {
        ins.pos.insert(ins.pos.end(), x.begin(), x.end());
        ins.mu_w.push_back(wm);
        ins.nu_w.push_back(wn);
        ins.cap.push_back(cap_of(x, ins.half));
    };
    auto lex = [&](std::span<const double> x, std::span<const double> y) {
        for (int k = 0; k < d; ++k) {
            if (x[k] < y[k]) return -1;
            if (x[k] > y[k]) return 1;
        }
        return 0;
    };
    while (i < mu.size() || j < nu.size()) {
        if (j == nu.size() || (i < mu.size() && lex(mu.position(i), nu.position(j)) < 0)) {
            if (inside(mu.position(i))) push(mu.position(i), mu.weight(i), 0.0);
            ++i;
        } else if (i == mu.size() || lex(mu.position(i), nu.position(j)) > 0) {
            if (inside(nu.position(j))) push(nu.position(j), 0.0, nu.weight(j));
            ++j;
        } else {
            if (inside(mu.position(i))) push(mu.position(i), mu.weight(i), nu.weight(j));
            ++i;
            ++j;
        }
    }
    return ins;
}

double solve_instance(const FlatInstance& ins, double scale) {
    const std::size_t m = ins.mu_w.size();
    if (m == 0) return 0.0;
    std::vector<double> c(m);
    for (std::size_t i = 0; i < m; ++i) c[i] = scale * ins.mu_w[i] - ins.nu_w[i];

    if (ins.dim == 1) {
        std::vector<double> cneg(m);
        for (std::size_t i = 0; i < m; ++i) cneg[i] = -c[i];
        double v1 = line_flat_optimum(ins.pos, c, ins.half);
        double v2 = line_flat_optimum(ins.pos, cneg, ins.half);
        return std::max(v1, v2);
    }
    if (m > 4000) throw std::invalid_argument("f_a: more than 4000 atoms in the cube; coarsen first");
    std::vector<double> fill(m, 0.0);
    std::vector<double> cneg(m);
    for (std::size_t i = 0; i < m; ++i) cneg[i] = -c[i];
    double v1 = ssp_flat_optimum(ins.dim, ins.pos, c, ins.cap, fill);
    double v2 = ssp_flat_optimum(ins.dim, ins.pos, cneg, ins.cap, fill);
    return std::max(v1, v2);
}

}  // namespace

double f_a(const AtomicMeasure& mu, const AtomicMeasure& nu, int a) {
    return solve_instance(assemble(mu, nu, a), 1.0);
}

MetricResult d_metric(const AtomicMeasure& mu, const AtomicMeasure& nu, int a_max) {
    if (a_max < 1) throw std::invalid_argument("d_metric: a_max must be >= 1");
    MetricResult r;
    double scale = 1.0;  // 2^-a
    for (int a = 1; a <= a_max; ++a) {
        scale *= 0.5;
        double fa = f_a(mu, nu, a);
        if (fa >= 1.0) {
            // F_b >= F_a >= 1 for b >= a, so every remaining term is 2^-b:
            // this term plus the exact tail sum equals 2 * 2^-a.
            r.value += 2.0 * scale;
            r.saturation_level = a;
            r.certified_error = 0.0;
            return r;
        }
        r.value += scale * fa;
    }
    r.certified_error = scale;
    return r;
}

bool in_ball(const AtomicMeasure& mu, const AtomicMeasure& nu, int a, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("in_ball: eps must be positive");
    return f_a(mu, nu, a) < eps;
}

std::pair<double, double> best_constant(const AtomicMeasure& mu, const AtomicMeasure& nu, int a) {
    FlatInstance ins = assemble(mu, nu, a);
    double mu_mass = std::accumulate(ins.mu_w.begin(), ins.mu_w.end(), 0.0);
    if (!(mu_mass > 0.0)) throw std::invalid_argument("best_constant: mu has zero mass on closed I_a");
    double nu_mass = std::accumulate(ins.nu_w.begin(), ins.nu_w.end(), 0.0);
    double ratio = nu_mass > 0.0 ? nu_mass / mu_mass : 1.0;

    double lo = ratio / 64.0, hi = ratio * 64.0;
    if (!(lo > 0.0)) lo = 1e-12;
    auto eval = [&](double c) { return solve_instance(ins, c); };
    // ternary search on the convex objective
    while ((hi - lo) > 1e-6 * std::max(1.0, hi)) {
        double m1 = lo + (hi - lo) / 3.0;
        double m2 = hi - (hi - lo) / 3.0;
        if (eval(m1) <= eval(m2)) hi = m2;
        else lo = m1;
    }
    double c = 0.5 * (lo + hi);
    return {c, eval(c)};
}

}  // namespace blowzoom
