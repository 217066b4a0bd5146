#include <random>

#include "blowzoom/approximant.hpp"
#include "blowzoom/limsup.hpp"
#include "doctest.h"

using namespace blowzoom;

namespace {

FiniteProbSpace uniform_space(std::size_t n) {
    std::vector<std::string> labels(n);
    std::vector<double> prob(n, 1.0 / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) labels[i] = "w" + std::to_string(i);
    return FiniteProbSpace(std::move(labels), std::move(prob));
}

}  // namespace

TEST_CASE("the worked two-event example gives 2/3 against a union of 3/4") {
    FiniteProbSpace p = uniform_space(4);  // outcomes 00,01,10,11
    EventSeq e;
    e.events = {{2, 3}, {1, 3}};  // first bit set; second bit set
    double bound = bc_lower_bound(p, e, 2);
    CHECK(bound == 2.0 / 3.0);  // (1/2+1/2)^2 / (1/2+1/2+2/4), exact in binary
    CHECK(periodic_limsup_prob(p, e) == 0.75);
    CHECK(bound <= periodic_limsup_prob(p, e));
}

TEST_CASE("identical events achieve equality") {
    FiniteProbSpace p = uniform_space(8);
    EventSeq e;
    e.events = {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}};
    double bound = bc_lower_bound(p, e, 3);
    CHECK(bound == doctest::Approx(3.0 / 8.0).epsilon(1e-15));
    CHECK(periodic_limsup_prob(p, e) == doctest::Approx(3.0 / 8.0));
}

TEST_CASE("the bound never exceeds the union probability or one") {
    std::mt19937_64 rng(51);
    for (int t = 0; t < 1000; ++t) {
        std::size_t n_out = 2 + rng() % 63;
        std::vector<double> prob(n_out);
        double s = 0.0;
        for (auto& v : prob) {
            v = 1e-3 + static_cast<double>(rng() % 1000);
            s += v;
        }
        for (auto& v : prob) v /= s;
        // renormalize exactly
        double s2 = 0.0;
        for (double v : prob) s2 += v;
        prob[0] += 1.0 - s2;
        std::vector<std::string> labels(n_out, "w");
        FiniteProbSpace p(labels, prob);

        std::size_t n_ev = 1 + rng() % 12;
        EventSeq e;
        bool any = false;
        for (std::size_t i = 0; i < n_ev; ++i) {
            std::vector<std::size_t> ev;
            for (std::size_t o = 0; o < n_out; ++o)
                if (rng() % 3 == 0) ev.push_back(o);
            any = any || !ev.empty();
            e.events.push_back(std::move(ev));
        }
        if (!any) continue;
        double bound = bc_lower_bound(p, e, n_ev);
        double uni = periodic_limsup_prob(p, e);
        CHECK(bound <= uni + 1e-12);
        CHECK(bound <= 1.0 + 1e-12);
    }
}

TEST_CASE("the bound is invariant under permuting the events") {
    FiniteProbSpace p = uniform_space(10);
    EventSeq e;
    e.events = {{0, 1}, {2, 3, 4}, {1, 4, 7}, {5}};
    double base = bc_lower_bound(p, e, 4);
    EventSeq perm;
    perm.events = {e.events[2], e.events[0], e.events[3], e.events[1]};
    CHECK(bc_lower_bound(p, perm, 4) == base);
}

TEST_CASE("null systems are rejected") {
    FiniteProbSpace p = uniform_space(4);
    EventSeq e;
    e.events = {{}, {}};
    CHECK_THROWS(bc_lower_bound(p, e, 2));
}

TEST_CASE("union of disjoint events sums, nested events take the maximum") {
    FiniteProbSpace p = uniform_space(6);
    EventSeq disjoint;
    disjoint.events = {{0}, {1}, {2}};
    CHECK(periodic_limsup_prob(p, disjoint) == doctest::Approx(0.5));
    EventSeq nested;
    nested.events = {{0}, {0, 1}, {0, 1, 2}};
    CHECK(periodic_limsup_prob(p, nested) == doctest::Approx(0.5));
}

TEST_CASE("cube event system reproduces the central-mass fractions") {
    AtomicMeasure mu0 = discretize_lebesgue(standard_box(1, 2), 1.0 / 27.0);
    SampleSOptions opt;
    opt.n = 1;
    opt.window = standard_box(1, 2);
    opt.h = 1.0 / 27.0;
    opt.seed = 5;
    AtomicMeasure nu = sample_S(opt).measure;
    AtomicMeasure mu_k = construct_mu_k(mu0, nu, 1, 1, standard_box(1, 2));

    CubeEventReport rep = cube_event_system(mu_k, nu, 1, 1, {1}, standard_box(1, 2));
    REQUIRE(rep.events.events.size() == 1);
    // P(A) equals p_a exactly: each cube contributes mu(Q) p_a
    CHECK(rep.event_prob[0] == doctest::Approx(rep.p_a).epsilon(1e-10));
    CHECK(rep.event_prob[0] >= rep.p_a / rep.rho_a - 1e-12);
    CHECK(rep.event_prob[0] <= rep.p_a * rep.rho_a + 1e-12);
    CHECK(rep.pair_prob[0][0] == doctest::Approx(rep.event_prob[0]));
    CHECK(rep.bc_bound <= 1.0 + 1e-12);
    CHECK(rep.asymptote == doctest::Approx(std::pow(rep.rho_a, -4.0)));
}

TEST_CASE("uncertified generations are refused") {
    AtomicMeasure mu = discretize_lebesgue(standard_box(1, 2), 1.0 / 27.0);
    AtomicMeasure nu = AtomicMeasure::delta({0.0}, 1.0);
    CHECK_THROWS(cube_event_system(mu, nu, 1, 1, {1}, standard_box(1, 2)));
}

TEST_CASE("doubling scan sees the dimension on Lebesgue and flat ratios on a point mass") {
    AtomicMeasure leb1 = discretize_lebesgue(Box({-4.0}, {4.0}), 1.0 / 64.0);
    std::vector<double> origin{0.0};
    auto rows = doubling_scan(leb1, origin, 1.0, 2.0, 4);
    for (const auto& r : rows) {
        REQUIRE(r.inner > 0.0);
        CHECK(r.ratio == doctest::Approx(2.0).epsilon(0.05));
    }

    AtomicMeasure leb2 = discretize_lebesgue(Box({-2.0, -2.0}, {2.0, 2.0}), 1.0 / 32.0);
    std::vector<double> origin2{0.0, 0.0};
    auto rows2 = doubling_scan(leb2, origin2, 0.5, 2.0, 3);
    for (const auto& r : rows2) CHECK(r.ratio == doctest::Approx(4.0).epsilon(0.05));

    AtomicMeasure point = AtomicMeasure::delta({0.0}, 1.0);
    auto rows3 = doubling_scan(point, origin, 1.0, 2.0, 5);
    for (const auto& r : rows3) CHECK(r.ratio == doctest::Approx(1.0));
}

TEST_CASE("the annulus witness shows the non-doubling jump") {
    // Lebesgue outside the unit ball: mass(B(0,2)) > 0 = mass(B(0,1))
    AtomicMeasure left = discretize_lebesgue(Box({-3.0}, {-1.0}), 1.0 / 128.0);
    AtomicMeasure right = discretize_lebesgue(Box({1.0}, {3.0}), 1.0 / 128.0);
    AtomicMeasure annulus = left.plus(right);
    std::vector<double> origin{0.0};
    auto rows = doubling_scan(annulus, origin, 1.0, 2.0, 1);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].inner == 0.0);
    CHECK(rows[0].outer > 0.0);
    CHECK(rows[0].infinite_candidate);
}
