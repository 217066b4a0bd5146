#include "blowzoom/approximant.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "blowzoom/parallel.hpp"

namespace blowzoom {

namespace {

// mass of mu per cube of Q_a^k inside `region`, via locate() on the atoms
std::map<std::vector<std::int64_t>, double> cube_masses(const AtomicMeasure& mu, int a, int k) {
    std::map<std::vector<std::int64_t>, double> out;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        CubeId q = locate(mu.position(i), a, k);
        out[q.m] += mu.weight(i);
    }
    return out;
}

// atoms of mu whose gen-k cube index lies within +-1 of q (the neighbourhood
// feeding the F_{a+1} window after blow-up)
AtomicMeasure neighbourhood_slice(const AtomicMeasure& mu, int a, int k, const CubeId& q) {
    const int d = mu.dim();
    std::vector<double> p, w;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        CubeId c = locate(mu.position(i), a, k);
        bool near = true;
        for (int t = 0; t < d; ++t)
            if (std::llabs(c.m[t] - q.m[t]) > 1) { near = false; break; }
        if (near) {
            auto x = mu.position(i);
            p.insert(p.end(), x.begin(), x.end());
            w.push_back(mu.weight(i));
        }
    }
    return AtomicMeasure(d, std::move(p), std::move(w));
}

}  // namespace

AtomicMeasure construct_mu_k(const AtomicMeasure& mu, const AtomicMeasure& nu, int a, int k,
                             const Box& window) {
    if (mu.dim() != nu.dim()) throw std::invalid_argument("construct_mu_k: dimension mismatch");
    const int d = mu.dim();
    AtomicMeasure nu_a = restrict(nu, standard_box(d, a));
    const double nu_mass = nu_a.total_mass();
    if (!(nu_mass > 0.0)) throw std::invalid_argument("construct_mu_k: nu(I_a) is zero");

    std::vector<CubeId> cubes = cubes_in_box(a, k, window);
    if (cubes.empty()) throw std::invalid_argument("construct_mu_k: window holds no complete cube");
    auto masses = cube_masses(mu, a, k);
    const double r = blowup_radius(a, k);

    std::vector<double> p, w;
    p.reserve(cubes.size() * nu_a.size() * d);
    w.reserve(cubes.size() * nu_a.size());
    for (const CubeId& q : cubes) {
        auto it = masses.find(q.m);
        double mq = it == masses.end() ? 0.0 : it->second;
        if (!(mq > 0.0))
            throw std::invalid_argument("construct_mu_k: empty cube " + q.label() +
                                        "; add a full-support background");
        std::vector<double> xq = q.center();
        // inverse blow-up of nu_a onto Q with total mass normalized to mu(Q)
        const double scale = mq / nu_mass;
        for (std::size_t i = 0; i < nu_a.size(); ++i) {
            auto qp = nu_a.position(i);
            for (int t = 0; t < d; ++t) p.push_back(xq[t] + r * qp[t]);
            w.push_back(scale * nu_a.weight(i));
        }
    }
    return AtomicMeasure(d, std::move(p), std::move(w));
}

std::pair<double, WeightVector> candidate_cw(const AtomicMeasure& mu, const AtomicMeasure& nu, int a,
                                             const CubeId& q) {
    const int d = mu.dim();
    double nu_mass = mass_in(nu, standard_box(d, a));
    if (!(nu_mass > 0.0)) throw std::invalid_argument("candidate_cw: nu(I_a) is zero");
    std::vector<CubeId> nb = neighbours(q);
    std::vector<double> w(nb.size());
    double mq = mass_in(mu, q.box());
    if (!(mq > 0.0)) throw std::invalid_argument("candidate_cw: mu(Q) is zero for " + q.label());
    for (std::size_t j = 0; j < nb.size(); ++j) {
        double mj = mass_in(mu, nb[j].box());
        if (!(mj > 0.0))
            throw std::invalid_argument("candidate_cw: zero neighbour mass at " + nb[j].label());
        w[j] = mj / mq;
    }
    return {nu_mass / mq, WeightVector(d, std::move(w))};
}

CubeCertificate exactness_check(const AtomicMeasure& mu_k, const AtomicMeasure& nu, int a, int k,
                                const CubeId& q, const Box& window, double beta_override) {
    CubeCertificate cert;
    cert.cube = q;
    for (const CubeId& nb : neighbours(q)) {
        if (!window.contains_box(nb.box())) {
            cert.applicable = false;
            cert.pass = false;
            cert.note = "neighbour " + nb.label() + " leaves the window";
            return cert;
        }
    }
    auto [c, w] = candidate_cw(mu_k, nu, a, q);
    cert.c = c;
    cert.w = w;
    EpsilonChoice eps = make_epsilon_choice(nu, a, w, beta_override);
    cert.threshold = eps.eps_a * eps.eps_a_w;

    AtomicMeasure local = neighbourhood_slice(mu_k, a, k, q);
    std::vector<double> xq = q.center();
    AtomicMeasure blown = blowup(local, xq, blowup_radius(a, k), c);
    AtomicMeasure dup = weighted_duplication(nu, a, w);
    cert.distance = f_a(blown, dup, a + 1);
    cert.pass = cert.distance < cert.threshold;
    return cert;
}

MembershipResult certify_R_membership(const AtomicMeasure& mu, const AtomicMeasure& nu, int a, int n,
                                      int k_max, const Box& window, double beta_override) {
    if (!window.contains_box(standard_box(mu.dim(), a + 1)))
        throw std::invalid_argument("certify_R_membership: window must contain I_{a+1}");
    MembershipResult res;
    for (int k = n; k <= k_max; ++k) {
        res.attempted_k_last = k;
        std::vector<CubeId> cubes = cubes_in_box(a, k, standard_box(mu.dim(), a));
        std::vector<CubeCertificate> certs(cubes.size());
        parallel_for(cubes.size(), [&](std::size_t i) {
            try {
                certs[i] = exactness_check(mu, nu, a, k, cubes[i], window, beta_override);
            } catch (const std::exception& e) {
                certs[i].cube = cubes[i];
                certs[i].pass = false;
                certs[i].note = e.what();
            }
        });
        bool all = true;
        for (const auto& c : certs)
            if (!c.pass) { all = false; break; }
        res.certificates = std::move(certs);
        if (all) {
            res.k = k;
            return res;
        }
    }
    return res;
}

std::vector<ConvergenceRow> convergence_probe(const AtomicMeasure& mu, const AtomicMeasure& nu, int a,
                                              const std::vector<int>& k_list, int b, const Box& window) {
    if (!window.contains_box(standard_box(mu.dim(), b)))
        throw std::invalid_argument("convergence_probe: window must cover I_b");
    std::vector<ConvergenceRow> rows;
    const double mass_bp1 = mass_in(mu, standard_box(mu.dim(), b + 1));
    for (int k : k_list) {
        AtomicMeasure mu_k = construct_mu_k(mu, nu, a, k, window);
        ConvergenceRow r;
        r.k = k;
        r.distance = f_a(mu_k, mu, b);
        r.bound = 2.0 * std::sqrt(static_cast<double>(mu.dim())) * pow3(-a * k) * mass_bp1;
        rows.push_back(r);
    }
    return rows;
}

std::vector<TangentProbeRow> tangent_probe(const AtomicMeasure& mu, std::span<const double> x,
                                           const AtomicMeasure& nu,
                                           const std::vector<std::pair<int, int>>& a_k_list, int b) {
    std::vector<TangentProbeRow> rows;
    for (auto [a, k] : a_k_list) {
        TangentProbeRow row;
        row.a = a;
        row.k = k;
        row.cube = locate(x, a, k);
        auto [c, w] = candidate_cw(mu, nu, a, row.cube);
        row.c = c;
        EpsilonChoice eps = make_epsilon_choice(nu, a, w);
        AtomicMeasure local = neighbourhood_slice(mu, a, k, row.cube);
        std::vector<double> xx(x.begin(), x.end());
        AtomicMeasure blown = blowup(local, xx, blowup_radius(a, k), c);
        row.distance = f_a(blown, nu, b);
        row.threshold =
            eps.eps_a * eps.eps_a_w + 2.0 * pow3(-a) * mass_in(nu, standard_box(nu.dim(), b + 1));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace blowzoom
