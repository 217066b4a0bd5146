#include <algorithm>
#include <random>

#include "blowzoom/flat_metric.hpp"
#include "blowzoom/measure.hpp"
#include "blowzoom/triadic.hpp"
#include "doctest.h"

using namespace blowzoom;

TEST_CASE("construction coalesces duplicates independently of order") {
    std::vector<double> p{0.5, -1.0, 0.5, 2.0, -1.0};
    std::vector<double> w{1.0, 2.0, 3.0, 4.0, 5.0};
    AtomicMeasure a(1, p, w);

    std::mt19937_64 rng(3);
    std::vector<std::size_t> idx{0, 1, 2, 3, 4};
    for (int t = 0; t < 10; ++t) {
        std::shuffle(idx.begin(), idx.end(), rng);
        std::vector<double> pp, ww;
        for (auto i : idx) {
            pp.push_back(p[i]);
            ww.push_back(w[i]);
        }
        AtomicMeasure b(1, pp, ww);
        REQUIRE(b.size() == a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(b.position(i)[0] == a.position(i)[0]);
            CHECK(b.weight(i) == doctest::Approx(a.weight(i)));
        }
    }
    CHECK(a.size() == 3);
    CHECK(a.total_mass() == doctest::Approx(15.0));
}

TEST_CASE("nonpositive weights are rejected") {
    CHECK_THROWS(AtomicMeasure(1, {0.0}, {0.0}));
    CHECK_THROWS(AtomicMeasure(1, {0.0}, {-1.0}));
}

TEST_CASE("restrict follows the half-open convention") {
    AtomicMeasure mu = AtomicMeasure::delta({0.0}, 1.0);
    Box b({-0.5}, {0.5});
    CHECK(restrict(mu, b).total_mass() == doctest::Approx(1.0));
    Box away({1.0}, {2.0});
    CHECK(restrict(mu, away).empty());

    AtomicMeasure lo = AtomicMeasure::delta({-0.5}, 1.0);  // on the lower face: kept
    AtomicMeasure hi = AtomicMeasure::delta({0.5}, 1.0);   // on the upper face: dropped
    CHECK(restrict(lo, b).total_mass() == doctest::Approx(1.0));
    CHECK(restrict(hi, b).empty());
}

TEST_CASE("restrict is idempotent and mass-monotone") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> pos(-2.0, 2.0), wt(0.1, 1.0);
    std::vector<double> p, w;
    for (int i = 0; i < 30; ++i) {
        p.push_back(pos(rng));
        w.push_back(wt(rng));
    }
    AtomicMeasure mu(1, p, w);
    Box b({-1.0}, {1.0});
    AtomicMeasure r1 = restrict(mu, b);
    AtomicMeasure r2 = restrict(r1, b);
    CHECK(r1.total_mass() <= mu.total_mass());
    CHECK(r1.total_mass() == doctest::Approx(r2.total_mass()));
    CHECK(r1.size() == r2.size());
}

TEST_CASE("mass_ball uses closed balls and is monotone in r") {
    AtomicMeasure mu = AtomicMeasure::delta({0.0}, 2.0);
    std::vector<double> origin{0.0};
    CHECK(mass_ball(mu, origin, 1.0) == doctest::Approx(2.0));

    AtomicMeasure edge = AtomicMeasure::delta({1.0}, 1.0);
    CHECK(mass_ball(edge, origin, 1.0) == doctest::Approx(1.0));  // exactly at distance r

    AtomicMeasure grid = discretize_lebesgue(Box({-2.0}, {2.0}), 0.01);
    double m = mass_ball(grid, origin, 1.0);
    CHECK(std::abs(m - 2.0) <= 0.01 + 1e-12);
    CHECK(mass_ball(grid, origin, 0.5) <= m);
}

TEST_CASE("discretize_lebesgue tiles the box exactly") {
    AtomicMeasure a = discretize_lebesgue(Box({-0.5}, {0.5}), 1.0 / 3.0);
    REQUIRE(a.size() == 3);
    CHECK(a.position(0)[0] == doctest::Approx(-1.0 / 3.0));
    CHECK(a.position(1)[0] == doctest::Approx(0.0));
    CHECK(a.position(2)[0] == doctest::Approx(1.0 / 3.0));
    CHECK(a.total_mass() == doctest::Approx(1.0));

    AtomicMeasure b = discretize_lebesgue(Box({0.0, 0.0}, {1.0, 1.0}), 0.5);
    REQUIRE(b.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(b.weight(i) == doctest::Approx(0.25));
    CHECK(b.total_mass() == doctest::Approx(1.0));

    CHECK_THROWS(discretize_lebesgue(Box({0.0}, {1.0}), 0.3));
}

TEST_CASE("atomization error of Lebesgue stays within the transport bound") {
    // F_a between the fine and coarse atomizations of the same box is within
    // sqrt(d) h/2 * volume of either one to the continuum, so within the sum
    // of both allowances of each other
    Box b({-1.5}, {1.5});
    AtomicMeasure fine = discretize_lebesgue(b, 1.0 / 81.0);
    AtomicMeasure coarse = discretize_lebesgue(b, 1.0 / 3.0);
    double dist = f_a(fine, coarse, 1);
    double bound = 0.5 * (1.0 / 81.0) * 3.0 + 0.5 * (1.0 / 3.0) * 3.0;
    CHECK(dist <= bound + 1e-12);
    CHECK(dist > 0.0);
}

TEST_CASE("sample_S charges every rational cube and avoids triadic boundaries") {
    SampleSOptions opt;
    opt.n = 1;
    opt.window = standard_box(1, 2);
    opt.h = 1.0 / 27.0;
    opt.seed = 42;
    SampleSResult s = sample_S(opt);
    REQUIRE(s.q.size() == 9);  // side-1/3 cubes filling I_1 on the line

    // full support across Q_1^1 cubes inside the window
    for (const CubeId& q : cubes_in_box(1, 1, opt.window))
        CHECK(mass_in(s.measure, q.box()) > 0.0);

    // the rational part carries exactly sum q_Q on I_1
    double total_q = 0.0;
    for (double v : s.q) total_q += v;
    CHECK(mass_in(s.measure, standard_box(1, 1)) == doctest::Approx(total_q).epsilon(1e-9));

    // zero mass on the boundary hyperplanes of I_a for small |a|
    for (int a = -4; a <= 2; ++a) {
        double half = pow3(a) / 2.0;
        for (std::size_t i = 0; i < s.measure.size(); ++i) {
            CHECK(s.measure.position(i)[0] != half);
            CHECK(s.measure.position(i)[0] != -half);
        }
    }
}

TEST_CASE("sample_S is deterministic per seed and varies across seeds") {
    SampleSOptions opt;
    opt.n = 1;
    opt.window = standard_box(1, 2);
    opt.h = 1.0 / 27.0;
    opt.seed = 7;
    SampleSResult a = sample_S(opt);
    SampleSResult b = sample_S(opt);
    CHECK(a.q == b.q);
    opt.seed = 8;
    SampleSResult c = sample_S(opt);
    CHECK(a.q != c.q);
}

TEST_CASE("sample_S aborts when atoms would land on a triadic boundary") {
    SampleSOptions opt;
    opt.n = 1;
    opt.window = standard_box(1, 2);
    opt.h = 1.0 / 2.0;  // does not divide the cube side 1/3
    CHECK_THROWS(sample_S(opt));
}

TEST_CASE("measure files round-trip and coalesce duplicates") {
    AtomicMeasure mu(2, {0.25, -0.75, 1.0, 0.5}, {1.5, 2.5});
    AtomicMeasure back = measure_from_json(to_json(mu));
    REQUIRE(back.size() == mu.size());
    CHECK(back.total_mass() == doctest::Approx(mu.total_mass()));

    const char* dup = R"({"dim":1,"atoms":[{"x":[0.5],"w":1.0},{"x":[0.5],"w":0.25}]})";
    AtomicMeasure m = measure_from_json(dup);
    REQUIRE(m.size() == 1);
    CHECK(m.weight(0) == doctest::Approx(1.25));
}
