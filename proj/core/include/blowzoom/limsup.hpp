#pragma once

#include <string>
#include <vector>

#include "blowzoom/measure.hpp"

namespace blowzoom {

struct FiniteProbSpace {
    std::vector<std::string> labels;
    std::vector<double> prob;  // nonnegative, sums to 1 within 1e-12

    FiniteProbSpace() = default;
    FiniteProbSpace(std::vector<std::string> labels_, std::vector<double> prob_);
    std::size_t size() const { return prob.size(); }
};

struct EventSeq {
    // each event is a set of outcome indices
    std::vector<std::vector<std::size_t>> events;
};

// Second-moment lower bound for the limsup probability:
//   (sum_{n<=N} P(A_n))^2 / (sum_{n,l<=N} P(A_n cap A_l)),
// diagonal included. Throws when every event is null.
double bc_lower_bound(const FiniteProbSpace& p, const EventSeq& e, std::size_t n);

// Finite stand-in for the limsup when the sequence repeats periodically:
// P(union of all events). Ground truth the bound is validated against.
double periodic_limsup_prob(const FiniteProbSpace& p, const EventSeq& e);

struct CubeEventReport {
    FiniteProbSpace space;
    EventSeq events;
    double p_a = 0.0;    // nu(I_{-a}) / nu(I_a)
    double rho_a = 0.0;  // (1 + 2 beta_a) / (1 - 2 beta_a)
    std::vector<double> event_prob;
    std::vector<std::vector<double>> pair_prob;
    double bc_bound = 0.0;
    double asymptote = 0.0;  // rho_a^-4
};

// The central-cube event system: P is mu restricted to I_b normalized over
// atoms; event n collects the atoms lying in some central cube Q_c of a
// certified cube Q in Q_a^{k_n} inside I_a, intersected with I_b. Every k in
// k_list must certify (checked via certify_R_membership at exactly that
// generation); otherwise this throws.
CubeEventReport cube_event_system(const AtomicMeasure& mu, const AtomicMeasure& nu, int a, int b,
                                  const std::vector<int>& k_list, const Box& window,
                                  double beta_override = 0.0, bool skip_certification = false);

struct DoublingRow {
    double r = 0.0;
    double inner = 0.0;  // mu(B(x, r))
    double outer = 0.0;  // mu(B(x, 2r))
    bool infinite_candidate = false;  // inner == 0 < outer
    double ratio = 0.0;              // outer/inner when inner > 0
};

// Geometric scan r = r0 * factor^-i of the doubling ratios at x.
std::vector<DoublingRow> doubling_scan(const AtomicMeasure& mu, std::span<const double> x, double r0,
                                       double factor, int count);

}  // namespace blowzoom
