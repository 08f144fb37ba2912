#include <doctest.h>

#include <cmath>

#include "heatbound/geometry.hpp"
#include "oracles.hpp"

using namespace heatbound;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("inside tests for the catalog shapes") {
    const Domain disc = Domain::disc(1.0);
    CHECK(disc.inside({0, 0}));
    CHECK_FALSE(disc.inside({2, 0}));
    CHECK_FALSE(disc.inside({1, 0}));  // boundary points are outside the open set

    const Domain square = Domain::square(2.0);
    CHECK(square.inside({0.9, -0.9}));
    CHECK_FALSE(square.inside({1.1, 0}));

    const Domain annulus = Domain::annulus(1, 2);
    CHECK(annulus.inside({1.5, 0}));
    CHECK_FALSE(annulus.inside({0.5, 0}));

    const Domain lshape = Domain::l_shape(2.0, 0.5);
    CHECK(lshape.inside({-1, 0.1}));
    CHECK(lshape.inside({0.1, -1}));
    CHECK_FALSE(lshape.inside({-1, -1}));

    // polar membership oracle: radius 1.5 inside the opening wedge is removed
    const Domain horseshoe = Domain::horseshoe(1, 2, kPi / 6);
    CHECK_FALSE(horseshoe.inside({1.5, 0}));
    CHECK(horseshoe.inside({-1.5, 0}));
    CHECK(horseshoe.inside({0, 1.5}));
    // just beyond the cap ball at the positive cut the body resumes
    const double w = kPi / 12;
    const Vec2 u{std::cos(w + 0.6), std::sin(w + 0.6)};
    CHECK(horseshoe.inside(u * 1.5));
}

TEST_CASE("interval domain basics") {
    const Domain iv = Domain::interval(0, kPi);
    CHECK(iv.dimension() == 1);
    CHECK(iv.inside({1.0, 0}));
    CHECK_FALSE(iv.inside({-0.1, 0}));
    CHECK(iv.distance_to_boundary({1.0, 0}) == doctest::Approx(1.0));
    const auto bs = boundary_samples(iv, 16);
    CHECK(bs.size() == 2);
    CHECK(bs[0].normal.x == doctest::Approx(1.0));
    CHECK(bs[1].normal.x == doctest::Approx(-1.0));
    const Reach reach = estimate_reach(iv, 64, 1e-6);
    CHECK(reach.r == doctest::Approx(kPi / 2));
}

TEST_CASE("boundary samples carry inward normals") {
    SUBCASE("disc normals are anti-radial") {
        const Domain disc = Domain::disc(1.0);
        for (const auto& s : boundary_samples(disc, 32)) {
            CHECK(s.normal.norm() == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(s.normal.dot(s.point.normalized()) == doctest::Approx(-1.0).epsilon(1e-12));
            CHECK(distance(s.point, s.point.normalized()) < 1e-10);
        }
    }
    SUBCASE("square normals are axis-aligned inward") {
        const Domain square = Domain::square(2.0);
        for (const auto& s : boundary_samples(square, 8)) {
            CHECK(std::abs(s.normal.x) + std::abs(s.normal.y) == doctest::Approx(1.0));
            CHECK(square.inside(s.point + s.normal * 1e-6));
        }
    }
    SUBCASE("annulus inner-circle normal points into the body") {
        const Domain annulus = Domain::annulus(1, 2);
        for (const auto& s : boundary_samples(annulus, 64)) {
            CHECK(annulus.inside(s.point + s.normal * 1e-6));
            CHECK_FALSE(annulus.inside(s.point - s.normal * 1e-6));
            if (s.point.norm() < 1.5)  // inner circle: outward radial direction
                CHECK(s.normal.dot(s.point.normalized()) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("normal orientation at every sample of every smooth catalog shape") {
    for (const Domain& domain : {Domain::disc(1.0), Domain::annulus(1, 2),
                                 Domain::horseshoe(1, 2, 0.5), Domain::horseshoe(1, 2, 0.3)}) {
        const Reach reach = estimate_reach(domain, 512, 1e-4 * domain.diameter());
        const double eps = reach.r / 100;
        for (const auto& s : boundary_samples(domain, 256)) {
            CAPTURE(s.point.x);
            CAPTURE(s.point.y);
            CHECK(domain.inside(s.point + s.normal * eps));
            CHECK_FALSE(domain.inside(s.point - s.normal * eps));
        }
    }
}

TEST_CASE("reach of the disc equals its radius") {
    for (double radius : {1.0, 2.5}) {
        const Domain disc = Domain::disc(radius);
        const double tol = 1e-4 * radius;
        const Reach reach = estimate_reach(disc, 256, tol);
        CHECK(std::abs(reach.r - radius) <= 1e-3 * radius);
        // independent rolling-ball oracle at the returned r
        const auto bs = boundary_samples(disc, 128);
        for (int i = 0; i < 8; ++i) {
            const auto& s = bs[i * bs.size() / 8];
            CHECK(oracles::brute_force_ball_empty(disc, s.point, s.normal, +1, reach.r, 512,
                                                  2 * tol));
            CHECK(oracles::brute_force_ball_empty(disc, s.point, s.normal, -1, reach.r, 512,
                                                  2 * tol));
        }
    }
}

TEST_CASE("reach of annulus(1,2) is the half gap") {
    const Reach reach = estimate_reach(Domain::annulus(1, 2), 512, 1e-4);
    CHECK(std::abs(reach.r - 0.5) <= 5e-3);
}

TEST_CASE("corner shapes have no positive reach") {
    CHECK_THROWS_WITH_AS(estimate_reach(Domain::square(2.0), 256, 1e-4),
                         doctest::Contains("no positive reach"), GeometryError);
    CHECK_THROWS_AS(estimate_reach(Domain::l_shape(2.0, 0.5), 256, 1e-4), GeometryError);
}

TEST_CASE("rolling-ball emptiness holds at the estimated reach") {
    const Domain domain = Domain::horseshoe(1, 2, 0.3);
    const double tol = 1e-4 * domain.diameter();
    const Reach reach = estimate_reach(domain, 1024, tol);
    CHECK(reach.r > 0.05);
    CHECK(reach.r < 0.5 + 1e-6);
    // a witness exists just past the estimate
    CHECK(reach.failure_witness.has_value());
    const auto bs = boundary_samples(domain, 512);
    for (std::size_t i = 0; i < bs.size(); i += 37) {
        CHECK(oracles::brute_force_ball_empty(domain, bs[i].point, bs[i].normal, +1, reach.r,
                                              2048, 2 * tol));
        CHECK(oracles::brute_force_ball_empty(domain, bs[i].point, bs[i].normal, -1, reach.r,
                                              2048, 2 * tol));
    }
}

TEST_CASE("projection to the closed region") {
    const Domain disc = Domain::disc(1.0);
    const Reach reach = estimate_reach(disc, 256, 1e-4);
    SUBCASE("interior points are fixed") {
        const Vec2 z{0.5, 0};
        const Vec2 p = project_to_closure(disc, reach, z);
        CHECK(distance(p, z) == 0.0);
    }
    SUBCASE("outside points project radially") {
        const Vec2 p = project_to_closure(disc, reach, {1.5, 0});
        CHECK(distance(p, {1, 0}) < 1e-12);
    }
    SUBCASE("far points are rejected") {
        CHECK_THROWS_WITH_AS(project_to_closure(disc, reach, {3.0, 0}),
                             doctest::Contains("outside tubular neighborhood"), GeometryError);
    }
    SUBCASE("annulus hole projects to the inner circle") {
        const Domain annulus = Domain::annulus(1, 2);
        const Reach r2 = estimate_reach(annulus, 512, 1e-4);
        const Vec2 p = project_to_closure(annulus, r2, {0.8, 0});
        const Vec2 oracle = oracles::brute_force_nearest_boundary(annulus, {0.8, 0}, 4096);
        CHECK(distance(p, {1, 0}) < 1e-9);
        CHECK(distance(p, oracle) < 1e-6);
    }
}

TEST_CASE("projection idempotence and rho-consistency on the horseshoe tube") {
    const Domain domain = Domain::horseshoe(1, 2, 0.4);
    const Reach reach = estimate_reach(domain, 1024, 1e-4 * domain.diameter());
    Rng rng(31);
    int tested = 0;
    while (tested < 200) {
        const Vec2 z{rng.uniform(-2, 2), rng.uniform(-2, 2)};
        const double d = domain.distance_to_boundary(z);
        if (domain.inside(z) || d >= 0.9 * reach.r) continue;
        ++tested;
        const Vec2 p1 = project_to_closure(domain, reach, z);
        const Vec2 p2 = project_to_closure(domain, reach, p1);
        CHECK(distance(p1, p2) <= 1e-9);
        // z = p + u n(p) with |u| = d(z, boundary)
        CHECK(std::abs(distance(z, p1) - d) <= 1e-8);
        const Vec2 oracle = oracles::brute_force_nearest_boundary(domain, z, 8192);
        CHECK(distance(p1, oracle) <= 1e-5);
    }
}

TEST_CASE("delta neighborhood classification") {
    const Domain disc = Domain::disc(1.0);
    CHECK(classify_neighborhood(disc, {1.05, 0}, 0.1) == NeighborhoodClass::boundary_delta);
    CHECK(classify_neighborhood(disc, {0, 0}, 0.1) == NeighborhoodClass::omega_delta);
    CHECK(classify_neighborhood(disc, {1.2, 0}, 0.1) == NeighborhoodClass::neither);
}

TEST_CASE("domain JSON construction") {
    const auto spec = nlohmann::json::parse(
        R"({"shape": "horseshoe", "params": {"r_in": 1.0, "r_out": 2.0, "opening_angle": 0.5236}})");
    const Domain d = Domain::from_json(spec);
    CHECK(d.kind() == ShapeKind::horseshoe);
    CHECK_FALSE(d.inside({1.5, 0}));
    CHECK_THROWS_AS(Domain::from_json(nlohmann::json::parse(R"({"shape": "pentagon"})")),
                    SchemaError);
    CHECK_THROWS_AS(
        Domain::from_json(nlohmann::json::parse(R"({"shape": "disc", "params": {}})")),
        SchemaError);
}

TEST_CASE("curvature is finite and constant per segment") {
    const Domain horseshoe = Domain::horseshoe(1, 2, 0.3);
    for (const auto& seg : horseshoe.boundary()) {
        const double k0 = seg.curvature(0.1);
        const double k1 = seg.curvature(0.9);
        CHECK(std::isfinite(k0));
        CHECK(k0 == doctest::Approx(k1));
    }
}
