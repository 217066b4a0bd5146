#include <random>

#include "blowzoom/triadic.hpp"
#include "doctest.h"

using namespace blowzoom;

TEST_CASE("locate follows the half-open boundary convention") {
    std::vector<double> x{0.4};
    CHECK(locate(x, 1, 0).m[0] == 0);
    x[0] = 0.5;
    CHECK(locate(x, 1, 0).m[0] == 1);
    x[0] = -0.5;
    CHECK(locate(x, 1, 0).m[0] == 0);  // lower face belongs to the cube
}

TEST_CASE("locate inverts cube membership on random points") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> pos(-5.0, 5.0);
    for (int t = 0; t < 500; ++t) {
        int a = 1 + static_cast<int>(rng() % 2);
        int k = static_cast<int>(rng() % 3);
        int d = 1 + static_cast<int>(rng() % 2);
        std::vector<double> x(d);
        for (auto& v : x) v = pos(rng);
        CubeId q = locate(x, a, k);
        CHECK(q.box().contains(x));
    }
}

TEST_CASE("central cube shares the center two generations finer") {
    CubeId q(1, 0, {0});
    CubeId c = central_cube(q);
    CHECK(c.k == 2);
    CHECK(c.m[0] == 0);
    CHECK(c.side() == doctest::Approx(1.0 / 9.0));
    CHECK(c.center()[0] == doctest::Approx(q.center()[0]));

    CubeId q2(2, 1, {5});
    CubeId c2 = central_cube(q2);
    CHECK(c2.side() / q2.side() == doctest::Approx(pow3(-2 * 2)));
    CHECK(c2.center()[0] == doctest::Approx(q2.center()[0]));

    CubeId c4 = central_cube(central_cube(q2));
    CHECK(c4.k == q2.k + 4);
    CHECK(c4.center()[0] == doctest::Approx(q2.center()[0]));
}

TEST_CASE("locating a cube center two generations deeper hits the central cube") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 100; ++t) {
        int a = 1 + static_cast<int>(rng() % 2);
        int k = static_cast<int>(rng() % 3);
        CubeId q(a, k, {static_cast<std::int64_t>(rng() % 21) - 10});
        std::vector<double> c = q.center();
        CHECK(locate(c, a, k + 2) == central_cube(q));
    }
}

TEST_CASE("neighbours enumerate the 3^d surrounding cubes, center first") {
    CubeId q(1, 0, {0});
    auto nb = neighbours(q);
    REQUIRE(nb.size() == 3);
    CHECK(nb[0].m[0] == 0);
    CHECK(nb[1].m[0] == -1);
    CHECK(nb[2].m[0] == 1);

    CubeId q2(1, 0, {0, 0});
    auto nb2 = neighbours(q2);
    REQUIRE(nb2.size() == 9);
    CHECK(nb2[0].m == std::vector<std::int64_t>{0, 0});
    CHECK(nb2[1].m == std::vector<std::int64_t>{-1, -1});
    CHECK(nb2[8].m == std::vector<std::int64_t>{1, 1});

    double vol = 0.0;
    for (const auto& n : nb2) {
        Box b = n.box();
        vol += b.volume();
    }
    CHECK(vol == doctest::Approx(9.0 * q2.box().volume()));
}

TEST_CASE("blow-up radius maps the cube onto I_a and the central cube onto I_{-a}") {
    for (int a = 1; a <= 3; ++a) {
        for (int k = 0; k <= 2; ++k) {
            double r = blowup_radius(a, k);
            CHECK(r == doctest::Approx(pow3(-(k + 1) * a)));
            CubeId q(a, k, {2});
            Box qb = q.box();
            double xq = q.center()[0];
            // image corners of Q under y -> (y - x(Q))/r
            CHECK((qb.lo[0] - xq) / r == doctest::Approx(-pow3(a) / 2.0).epsilon(1e-12));
            CHECK((qb.hi[0] - xq) / r == doctest::Approx(pow3(a) / 2.0).epsilon(1e-12));
            Box cb = central_cube(q).box();
            CHECK((cb.lo[0] - xq) / r == doctest::Approx(-pow3(-a) / 2.0).epsilon(1e-12));
            CHECK((cb.hi[0] - xq) / r == doctest::Approx(pow3(-a) / 2.0).epsilon(1e-12));
        }
    }
    CHECK(blowup_radius(1, 1) / blowup_radius(1, 0) == doctest::Approx(pow3(-1)));
}

TEST_CASE("expansion and contraction boxes nest strictly") {
    Box plus = expanded_box(1, 0, 0.25);
    CHECK(plus.lo[0] == doctest::Approx(-0.75));
    CHECK(plus.hi[0] == doctest::Approx(0.75));
    Box minus = contracted_box(1, 0, 0.25);
    CHECK(minus.lo[0] == doctest::Approx(-0.25));
    Box base = standard_box(1, 0);
    CHECK(plus.contains_box(base));
    CHECK(base.contains_box(minus));
    CHECK_THROWS(contracted_box(1, 0, 0.5));
    CHECK(plus.volume() - minus.volume() == doctest::Approx(1.0));
}

TEST_CASE("cube partition: children tile the parent") {
    CubeId q(1, 0, {1});
    auto kids = cubes_in_box(1, 1, q.box());
    CHECK(kids.size() == 3);
    double vol = 0.0;
    for (const auto& c : kids) vol += c.box().volume();
    CHECK(vol == doctest::Approx(q.box().volume()));
    Box cc = central_cube(q).box();
    CHECK(q.box().contains_box(cc));
}

TEST_CASE("cube census inside I_a") {
    // cubes of side 3^{-ak} filling the cube of side 3^a: 3^{a(k+1)} per axis
    CHECK(cubes_in_box(1, 1, standard_box(1, 1)).size() == 9);
    CHECK(cubes_in_box(1, 2, standard_box(1, 1)).size() == 27);
    CHECK(cubes_in_box(2, 1, standard_box(1, 2)).size() == 81);
    CHECK(cubes_in_box(1, 1, standard_box(2, 1)).size() == 81);
}

TEST_CASE("cube labels render compactly") {
    CubeId q(2, 1, {3, -4});
    CHECK(q.label() == "a2:k1:[3,-4]");
}
