#include "blowzoom/blowup.hpp"

#include <cmath>
#include <stdexcept>

#include "blowzoom/triadic.hpp"

namespace blowzoom {

WeightVector::WeightVector(int d, std::vector<double> weights) : dim(d), w(std::move(weights)) {
    if (w.size() != static_cast<std::size_t>(ipow3(d)))
        throw std::invalid_argument("WeightVector: needs 3^d entries");
    if (w[0] != 1.0) throw std::invalid_argument("WeightVector: w_1 must equal 1");
    for (double v : w)
        if (!(v > 0.0)) throw std::invalid_argument("WeightVector: weights must be positive");
}

WeightVector WeightVector::ones(int d) {
    return WeightVector(d, std::vector<double>(static_cast<std::size_t>(ipow3(d)), 1.0));
}

AtomicMeasure blowup(const AtomicMeasure& mu, std::span<const double> x, double r, double c) {
    if (static_cast<int>(x.size()) != mu.dim()) throw std::invalid_argument("blowup: dimension mismatch");
    if (!(r > 0.0) || !(c > 0.0)) throw std::invalid_argument("blowup: r and c must be positive");
    std::vector<double> p(mu.positions());
    std::vector<double> w(mu.weights());
    const int d = mu.dim();
    for (std::size_t i = 0; i < w.size(); ++i)
        for (int k = 0; k < d; ++k) p[i * d + k] = (p[i * d + k] - x[k]) / r;
    for (double& v : w) v *= c;
    return AtomicMeasure(d, std::move(p), std::move(w));
}

AtomicMeasure inverse_blowup(const AtomicMeasure& sigma, std::span<const double> x, double r, double c) {
    if (static_cast<int>(x.size()) != sigma.dim())
        throw std::invalid_argument("inverse_blowup: dimension mismatch");
    if (!(r > 0.0) || !(c > 0.0)) throw std::invalid_argument("inverse_blowup: r and c must be positive");
    std::vector<double> p(sigma.positions());
    std::vector<double> w(sigma.weights());
    const int d = sigma.dim();
    for (std::size_t i = 0; i < w.size(); ++i)
        for (int k = 0; k < d; ++k) p[i * d + k] = x[k] + r * p[i * d + k];
    for (double& v : w) v /= c;
    return AtomicMeasure(d, std::move(p), std::move(w));
}

AtomicMeasure weighted_duplication(const AtomicMeasure& nu, int a, const WeightVector& w) {
    const int d = nu.dim();
    if (w.dim != d) throw std::invalid_argument("weighted_duplication: dimension mismatch");
    AtomicMeasure nu_a = restrict(nu, standard_box(d, a));
    // neighbour offsets of I_a are the centers e * 3^a, via the unit-cube
    // neighbour enumeration scaled by 3^a
    std::vector<CubeId> nb = neighbours(CubeId(1, 0, std::vector<std::int64_t>(d, 0)));
    const double side = pow3(a);
    std::vector<double> p, ww;
    p.reserve(nu_a.size() * nb.size() * d);
    ww.reserve(nu_a.size() * nb.size());
    for (std::size_t j = 0; j < nb.size(); ++j) {
        for (std::size_t i = 0; i < nu_a.size(); ++i) {
            auto q = nu_a.position(i);
            for (int k = 0; k < d; ++k)
                p.push_back(q[k] + static_cast<double>(nb[j].m[k]) * side);
            ww.push_back(w.w[j] * nu_a.weight(i));
        }
    }
    return AtomicMeasure(d, std::move(p), std::move(ww));
}

double default_beta(const AtomicMeasure& nu, int a) {
    if (a < 1) throw std::invalid_argument("default_beta: a must be >= 1");
    double central = mass_in(nu, standard_box(nu.dim(), -a));
    if (!(central > 0.0)) throw std::invalid_argument("default_beta: nu(I_{-a}) is zero");
    return pow3(-a) / (8.0 * central);
}

double choose_epsilon_w(const AtomicMeasure& nu, int a, const WeightVector& w, double eps_a) {
    if (!(eps_a > 0.0)) throw std::invalid_argument("choose_epsilon_w: eps_a must be positive");
    const int d = nu.dim();
    AtomicMeasure dup = weighted_duplication(nu, a, w);
    for (int j = 1; j <= 60; ++j) {
        double eps = eps_a * std::pow(2.0, -j);
        if (eps >= pow3(-a) / 2.0) continue;  // contraction of I_{-a} must be nonempty
        double buf_center = mass_in(nu, expanded_box(d, -a, eps)) - mass_in(nu, contracted_box(d, -a, eps));
        double buf_dup = mass_in(dup, expanded_box(d, a, eps)) - mass_in(dup, contracted_box(d, a, eps));
        if (std::max(buf_center, buf_dup) < eps_a) return eps;
    }
    throw std::runtime_error("choose_epsilon_w: no ladder candidate found; atoms hug the boundaries");
}

EpsilonChoice make_epsilon_choice(const AtomicMeasure& nu, int a, const WeightVector& w,
                                  double beta_override) {
    EpsilonChoice e;
    e.a = a;
    double central = mass_in(nu, standard_box(nu.dim(), -a));
    if (!(central > 0.0)) throw std::invalid_argument("make_epsilon_choice: nu(I_{-a}) is zero");
    if (beta_override > 0.0) {
        if (beta_override >= pow3(-a) / (4.0 * central))
            throw std::invalid_argument("make_epsilon_choice: beta override violates beta_a < 3^-a/(4 nu(I_{-a}))");
        e.beta_a = beta_override;
    } else {
        e.beta_a = default_beta(nu, a);
    }
    e.eps_a = e.beta_a * central;
    e.eps_a_w = choose_epsilon_w(nu, a, w, e.eps_a);
    return e;
}

}  // namespace blowzoom
