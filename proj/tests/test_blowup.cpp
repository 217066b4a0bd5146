#include <random>

#include "blowzoom/blowup.hpp"
#include "blowzoom/flat_metric.hpp"
#include "blowzoom/triadic.hpp"
#include "doctest.h"

using namespace blowzoom;

TEST_CASE("blow-up applies the affine map to atoms") {
    AtomicMeasure mu = AtomicMeasure::delta({3.0}, 1.0);
    std::vector<double> x{1.0};
    AtomicMeasure out = blowup(mu, x, 2.0, 5.0);
    REQUIRE(out.size() == 1);
    CHECK(out.position(0)[0] == doctest::Approx(1.0));
    CHECK(out.weight(0) == doctest::Approx(5.0));

    std::vector<double> origin{0.0};
    AtomicMeasure id = blowup(mu, origin, 1.0, 1.0);
    CHECK(id.position(0)[0] == doctest::Approx(3.0));
    CHECK(id.weight(0) == doctest::Approx(1.0));
}

TEST_CASE("blow-up composes across scales") {
    AtomicMeasure mu(1, {0.3, -0.7, 2.0}, {1.0, 2.0, 0.5});
    std::vector<double> x{0.25}, origin{0.0};
    AtomicMeasure two_step = blowup(blowup(mu, x, 0.5, 1.0), origin, 0.25, 3.0);
    AtomicMeasure one_step = blowup(mu, x, 0.125, 3.0);
    REQUIRE(two_step.size() == one_step.size());
    for (std::size_t i = 0; i < one_step.size(); ++i) {
        CHECK(two_step.position(i)[0] == doctest::Approx(one_step.position(i)[0]).epsilon(1e-12));
        CHECK(two_step.weight(i) == doctest::Approx(one_step.weight(i)));
    }
}

TEST_CASE("inverse blow-up round-trips exactly on dyadic parameters") {
    AtomicMeasure mu(1, {0.25, -0.5, 1.75}, {1.0, 2.0, 3.0});
    std::vector<double> x{0.0};
    double r = 0.125, c = 4.0;  // powers of two: the round trip is exact in floating point
    AtomicMeasure back = inverse_blowup(blowup(mu, x, r, c), x, r, c);
    REQUIRE(back.size() == mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) {
        CHECK(back.position(i)[0] == mu.position(i)[0]);
        CHECK(back.weight(i) == mu.weight(i));
    }
}

TEST_CASE("inverse blow-up round-trips within tolerance on general parameters") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> pos(-2.0, 2.0), rad(0.01, 3.0), cc(0.1, 10.0);
    for (int t = 0; t < 50; ++t) {
        AtomicMeasure mu(1, {pos(rng), pos(rng)}, {1.0, 2.0});
        std::vector<double> x{pos(rng)};
        double r = rad(rng), c = cc(rng);
        AtomicMeasure back = inverse_blowup(blowup(mu, x, r, c), x, r, c);
        REQUIRE(back.size() == mu.size());
        for (std::size_t i = 0; i < mu.size(); ++i) {
            CHECK(back.position(i)[0] == doctest::Approx(mu.position(i)[0]).epsilon(1e-12));
            CHECK(back.weight(i) == doctest::Approx(mu.weight(i)).epsilon(1e-12));
        }
    }
}

TEST_CASE("pushforward mass identity on random windows") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> pos(-3.0, 3.0), wt(0.5, 2.0);
    std::vector<double> p, w;
    for (int i = 0; i < 12; ++i) {
        p.push_back(pos(rng));
        w.push_back(wt(rng));
    }
    AtomicMeasure mu(1, p, w);
    std::vector<double> x{0.5};
    double r = 0.75, c = 2.0;
    AtomicMeasure bl = blowup(mu, x, r, c);
    for (int a = 0; a <= 1; ++a) {
        Box ia = standard_box(1, a);
        Box pre({ia.lo[0] * r + x[0]}, {ia.hi[0] * r + x[0]});
        CHECK(mass_in(bl, ia) == doctest::Approx(c * mass_in(mu, pre)).epsilon(1e-12));
    }
}

TEST_CASE("normalized inverse blow-up puts unit mass on its cube") {
    AtomicMeasure nu(1, {-1.0, 0.0, 1.2}, {0.5, 1.0, 0.75});
    int a = 1, k = 1;
    AtomicMeasure nu_a = restrict(nu, standard_box(1, a));
    double mass = nu_a.total_mass();
    CubeId q(a, k, {2});
    std::vector<double> xq = q.center();
    AtomicMeasure nuq = inverse_blowup(nu_a, xq, blowup_radius(a, k), mass);
    CHECK(nuq.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mass_in(nuq, q.box()) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("weighted duplication translates copies in the neighbour order") {
    AtomicMeasure nu = AtomicMeasure::delta({0.0}, 1.0);
    WeightVector w(1, {1.0, 2.0, 3.0});
    AtomicMeasure dup = weighted_duplication(nu, 0, w);  // neighbours of I at offsets 0, -1, +1
    REQUIRE(dup.size() == 3);
    CHECK(dup.position(0)[0] == doctest::Approx(-1.0));
    CHECK(dup.weight(0) == doctest::Approx(2.0));
    CHECK(dup.position(1)[0] == doctest::Approx(0.0));
    CHECK(dup.weight(1) == doctest::Approx(1.0));
    CHECK(dup.position(2)[0] == doctest::Approx(1.0));
    CHECK(dup.weight(2) == doctest::Approx(3.0));
}

TEST_CASE("restriction of the duplication to I_a returns nu restricted") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> pos(-4.0, 4.0), wt(0.1, 2.0), wj(0.2, 5.0);
    for (int t = 0; t < 20; ++t) {
        std::vector<double> p, w;
        for (int i = 0; i < 10; ++i) {
            p.push_back(pos(rng));
            w.push_back(wt(rng));
        }
        AtomicMeasure nu(1, p, w);
        int a = 1;
        std::vector<double> weights{1.0, wj(rng), wj(rng)};
        WeightVector wv(1, weights);
        AtomicMeasure dup = weighted_duplication(nu, a, wv);
        AtomicMeasure lhs = restrict(dup, standard_box(1, a));
        AtomicMeasure rhs = restrict(nu, standard_box(1, a));
        REQUIRE(lhs.size() == rhs.size());
        for (std::size_t i = 0; i < lhs.size(); ++i) {
            CHECK(lhs.position(i)[0] == rhs.position(i)[0]);
            CHECK(lhs.weight(i) == doctest::Approx(rhs.weight(i)));
        }
        CHECK(dup.total_mass() ==
              doctest::Approx((1.0 + weights[1] + weights[2]) * rhs.total_mass()));
    }
}

TEST_CASE("default beta sits at half the allowed bound and fixes eps_a") {
    AtomicMeasure nu = AtomicMeasure::delta({0.0}, 1.0);
    double beta = default_beta(nu, 1);
    CHECK(beta == doctest::Approx(1.0 / 24.0));
    // eps_a = beta * nu(I_{-a}) is 3^-a/8 for any nu under the default
    AtomicMeasure other(1, {0.0, 0.05}, {2.0, 1.0});
    double b2 = default_beta(other, 1);
    double central = mass_in(other, standard_box(1, -1));
    CHECK(b2 * central == doctest::Approx(pow3(-1) / 8.0));
    CHECK_THROWS(default_beta(AtomicMeasure::delta({2.0}, 1.0), 1));  // zero central mass
}

TEST_CASE("epsilon ladder picks the first candidate for an isolated point mass") {
    AtomicMeasure nu = AtomicMeasure::delta({0.0}, 1.0);
    WeightVector w = WeightVector::ones(1);
    double eps_a = 1.0 / 24.0;
    double eps = choose_epsilon_w(nu, 1, w, eps_a);
    CHECK(eps == doctest::Approx(1.0 / 48.0));
    CHECK(eps < eps_a);

    EpsilonChoice ch = make_epsilon_choice(nu, 1, w);
    CHECK(ch.beta_a == doctest::Approx(1.0 / 24.0));
    CHECK(ch.eps_a == doctest::Approx(1.0 / 24.0));
    CHECK(ch.eps_a_w == doctest::Approx(1.0 / 48.0));
}

TEST_CASE("the alphachoice inequality holds for the returned epsilon") {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> wj(0.2, 4.0);
    SampleSOptions opt;
    opt.n = 1;
    opt.window = standard_box(1, 2);
    opt.h = 1.0 / 27.0;
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        opt.seed = seed;
        AtomicMeasure nu = sample_S(opt).measure;
        int a = 1;
        WeightVector w(1, {1.0, wj(rng), wj(rng)});
        EpsilonChoice ch = make_epsilon_choice(nu, a, w);
        double eps = ch.eps_a_w;
        AtomicMeasure dup = weighted_duplication(nu, a, w);
        double buf_center =
            mass_in(nu, expanded_box(1, -a, eps)) - mass_in(nu, contracted_box(1, -a, eps));
        double buf_dup =
            mass_in(dup, expanded_box(1, a, eps)) - mass_in(dup, contracted_box(1, a, eps));
        CHECK(std::max(buf_center, buf_dup) < ch.eps_a);
        CHECK(eps < ch.eps_a);
    }
}

TEST_CASE("larger neighbour weights never enlarge the chosen epsilon") {
    SampleSOptions opt;
    opt.n = 1;
    opt.window = standard_box(1, 2);
    opt.h = 1.0 / 27.0;
    opt.seed = 3;
    AtomicMeasure nu = sample_S(opt).measure;
    double eps_a = default_beta(nu, 1) * mass_in(nu, standard_box(1, -1));
    double prev = 1e9;
    for (double scale : {1.0, 2.0, 4.0, 8.0, 16.0}) {
        WeightVector w(1, {1.0, scale, scale});
        double eps = choose_epsilon_w(nu, 1, w, eps_a);
        CHECK(eps <= prev + 1e-15);
        prev = eps;
    }
}

TEST_CASE("degenerate blow-up equivariance guard") {
    AtomicMeasure mu(1, {0.1, 0.4}, {1.0, 1.0});
    std::vector<double> x{0.2};
    AtomicMeasure a = blowup(mu, x, 0.5, 2.0);
    AtomicMeasure b = blowup(mu, x, 0.5, 2.0);
    CHECK(f_a(a, b, 2) == doctest::Approx(0.0));
}
