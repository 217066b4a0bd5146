#include "blowzoom/limsup.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "blowzoom/approximant.hpp"
#include "blowzoom/blowup.hpp"
#include "blowzoom/triadic.hpp"

namespace blowzoom {

FiniteProbSpace::FiniteProbSpace(std::vector<std::string> labels_, std::vector<double> prob_)
    : labels(std::move(labels_)), prob(std::move(prob_)) {
    if (labels.size() != prob.size()) throw std::invalid_argument("FiniteProbSpace: size mismatch");
    double s = 0.0;
    for (double p : prob) {
        if (p < 0.0) throw std::invalid_argument("FiniteProbSpace: negative probability");
        s += p;
    }
    if (std::abs(s - 1.0) > 1e-12) throw std::invalid_argument("FiniteProbSpace: probabilities must sum to 1");
}

namespace {

double event_prob(const FiniteProbSpace& p, const std::vector<std::size_t>& ev) {
    double s = 0.0;
    for (std::size_t i : ev) {
        if (i >= p.size()) throw std::invalid_argument("event index out of range");
        s += p.prob[i];
    }
    return s;
}

double pair_prob(const FiniteProbSpace& p, const std::vector<std::size_t>& x,
                 const std::vector<std::size_t>& y) {
    // events are kept sorted; intersect
    double s = 0.0;
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        if (x[i] < y[j]) ++i;
        else if (y[j] < x[i]) ++j;
        else { s += p.prob[x[i]]; ++i; ++j; }
    }
    return s;
}

}  // namespace

double bc_lower_bound(const FiniteProbSpace& p, const EventSeq& e, std::size_t n) {
    if (n == 0 || n > e.events.size()) throw std::invalid_argument("bc_lower_bound: bad N");
    std::vector<std::vector<std::size_t>> ev(e.events.begin(), e.events.begin() + n);
    for (auto& v : ev) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    // sum addends in sorted order so the value is exactly invariant under
    // permuting the event list
    std::vector<double> num_terms, den_terms;
    for (std::size_t i = 0; i < n; ++i) num_terms.push_back(event_prob(p, ev[i]));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) den_terms.push_back(pair_prob(p, ev[i], ev[j]));
    std::sort(num_terms.begin(), num_terms.end());
    std::sort(den_terms.begin(), den_terms.end());
    double num = 0.0, den = 0.0;
    for (double v : num_terms) num += v;
    for (double v : den_terms) den += v;
    if (!(den > 0.0)) throw std::domain_error("bc_lower_bound: all events are null");
    return num * num / den;
}

double periodic_limsup_prob(const FiniteProbSpace& p, const EventSeq& e) {
    std::vector<char> hit(p.size(), 0);
    for (const auto& ev : e.events)
        for (std::size_t i : ev) hit.at(i) = 1;
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (hit[i]) s += p.prob[i];
    return s;
}

CubeEventReport cube_event_system(const AtomicMeasure& mu, const AtomicMeasure& nu, int a, int b,
                                  const std::vector<int>& k_list, const Box& window,
                                  double beta_override, bool skip_certification) {
    const int d = mu.dim();
    const Box ib = standard_box(d, b);
    AtomicMeasure mu_b = restrict(mu, ib);
    const double total = mu_b.total_mass();
    if (!(total > 0.0)) throw std::invalid_argument("cube_event_system: mu(I_b) is zero");

    if (!skip_certification) {
        for (int k : k_list) {
            MembershipResult r = certify_R_membership(mu, nu, a, k, k, window, beta_override);
            if (!r.k) throw std::runtime_error("cube_event_system: generation " + std::to_string(k) +
                                               " is not certified for this measure");
        }
    }

    CubeEventReport rep;
    std::vector<std::string> labels(mu_b.size());
    std::vector<double> prob(mu_b.size());
    for (std::size_t i = 0; i < mu_b.size(); ++i) {
        labels[i] = "atom" + std::to_string(i);
        prob[i] = mu_b.weight(i) / total;
    }
    rep.space = FiniteProbSpace(std::move(labels), std::move(prob));

    const Box ia = standard_box(d, a);
    for (int k : k_list) {
        std::vector<std::size_t> ev;
        for (std::size_t i = 0; i < mu_b.size(); ++i) {
            auto x = mu_b.position(i);
            CubeId q = locate(x, a, k);
            if (!ia.contains_box(q.box())) continue;  // only cubes Q inside I_a
            CubeId qc = central_cube(q);
            if (locate(x, a, k + 2) == qc) ev.push_back(i);
        }
        rep.events.events.push_back(std::move(ev));
    }

    double central = mass_in(nu, standard_box(d, -a));
    double full = mass_in(nu, ia);
    if (!(central > 0.0) || !(full > 0.0))
        throw std::invalid_argument("cube_event_system: nu must charge I_{-a} and I_a");
    rep.p_a = central / full;
    double beta = beta_override > 0.0 ? beta_override : default_beta(nu, a);
    rep.rho_a = (1.0 + 2.0 * beta) / (1.0 - 2.0 * beta);
    rep.asymptote = std::pow(rep.rho_a, -4.0);

    for (const auto& ev : rep.events.events) rep.event_prob.push_back(event_prob(rep.space, ev));
    rep.pair_prob.assign(k_list.size(), std::vector<double>(k_list.size(), 0.0));
    for (std::size_t i = 0; i < k_list.size(); ++i)
        for (std::size_t j = 0; j < k_list.size(); ++j)
            rep.pair_prob[i][j] = pair_prob(rep.space, rep.events.events[i], rep.events.events[j]);
    rep.bc_bound = bc_lower_bound(rep.space, rep.events, rep.events.events.size());
    return rep;
}

std::vector<DoublingRow> doubling_scan(const AtomicMeasure& mu, std::span<const double> x, double r0,
                                       double factor, int count) {
    if (!(r0 > 0.0) || !(factor > 1.0) || count < 1)
        throw std::invalid_argument("doubling_scan: need r0 > 0, factor > 1, count >= 1");
    std::vector<DoublingRow> rows;
    double r = r0;
    for (int i = 0; i < count; ++i) {
        DoublingRow row;
        row.r = r;
        row.inner = mass_ball(mu, x, r);
        row.outer = mass_ball(mu, x, 2.0 * r);
        if (row.inner > 0.0) {
            row.ratio = row.outer / row.inner;
        } else {
            row.infinite_candidate = row.outer > 0.0;
        }
        rows.push_back(row);
        r /= factor;
    }
    return rows;
}

}  // namespace blowzoom
