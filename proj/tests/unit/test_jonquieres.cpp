#include <doctest.h>

#include <random>

#include "jonq/errors.hpp"
#include "jonq/jonquieres.hpp"

using namespace jonq;

namespace {

const MapParams kP = MapParams::generic();

double dist_to_indeterminacy(const PointP1xC& q) { return point_distance(q, {Complex(-1.0), kP.alpha}); }

PointP1xC from_f_start() { return {1e-3 * std::polar(1.0, 0.3), 1e-3 * std::polar(1.0, 1.1)}; }

}  // namespace

TEST_CASE("parameters") {
    CHECK(kP.freq() == doctest::Approx(kGenericFreq));
    CHECK(std::abs(kP.alpha - generic_alpha()) < 1e-15);
    CHECK_THROWS_AS(validate(MapParams::from_angles(0.3, 0.25)), InvalidSpec);
    CHECK_THROWS_AS(validate(MapParams{Complex(1.1), unit_phase(kGenericFreq)}), InvalidSpec);
    CHECK_NOTHROW(validate(kP));
}

TEST_CASE("single steps of f") {
    const Complex y(0.3, -0.2);
    const auto a = apply_f(kP, {Complex(0.0), y});
    REQUIRE(a.x.is_finite());
    CHECK(std::abs(a.x.value() - y) < 1e-15);
    CHECK(std::abs(a.y - kP.beta * y) < 1e-15);

    const auto fixed = apply_f(kP, {kP.alpha - 1.0, Complex(0.0)});
    CHECK(std::abs(fixed.x.value() - (kP.alpha - 1.0)) < 1e-15);
    CHECK(fixed.y == Complex(0.0));

    CHECK(apply_f(kP, {Complex(-1.0), y}).x.is_infinite());
    const auto from_inf = apply_f(kP, {ExtComplex::infinity(), y});
    CHECK(std::abs(from_inf.x.value() - kP.alpha) < 1e-15);
    CHECK_THROWS_AS(apply_f(kP, {Complex(-1.0), kP.alpha}), IndeterminatePoint);
}

TEST_CASE("|y| is invariant along orbits") {
    const PointP1xC q{Complex(0.01), 0.01 * std::polar(1.0, std::numbers::pi / 7)};
    const auto rec = orbit(kP, q, 1000);
    REQUIRE(rec.points.size() == 1001);
    for (const auto& pt : rec.points) CHECK(std::abs(std::abs(pt.y) - 0.01) < 1e-12);

    const auto longer = orbit(kP, from_f_start(), 100000);
    double dev = 0.0;
    for (const auto& pt : longer.points) dev = std::max(dev, std::abs(std::abs(pt.y) - 1e-3));
    CHECK(dev < 1e-10);
}

TEST_CASE("orbits through the indeterminacy point are truncated") {
    // f(-1 - alpha... ) : pick q with f(q) = (-1, alpha): y0 = alpha / beta, x0 solving (alpha x + y0)/(x + 1) = -1
    const Complex y0 = kP.alpha / kP.beta;
    const Complex x0 = -(1.0 + y0) / (kP.alpha + 1.0);
    const auto step = apply_f(kP, {x0, y0});
    REQUIRE(dist_to_indeterminacy(step) < 1e-14);
    const PointP1xC exact{Complex(-1.0), kP.alpha};
    const auto rec = orbit(kP, exact, 5);
    CHECK(rec.truncated);
    CHECK(rec.points.size() == 1);
    REQUIRE_FALSE(rec.indeterminacy_hits.empty());
    CHECK(rec.indeterminacy_hits[0].step == 0);
}

TEST_CASE("matrix products reproduce the x-coordinate of f") {
    CHECK(matrix_orbit_equivalence(kP, {Complex(0.2, 0.1), Complex(0.3, 0.1)}, 1) < 1e-15);
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst_small = 0.0, worst_large = 0.0;
    for (int i = 0; i < 20; ++i) {
        const PointP1xC a{Complex(2 * u(rng) - 1, 2 * u(rng) - 1), std::polar(0.5, kTwoPi * u(rng))};
        worst_small = std::max(worst_small, matrix_orbit_equivalence(kP, a, 1000));
        const PointP1xC b{Complex(2 * u(rng) - 1, 2 * u(rng) - 1), std::polar(4.0, kTwoPi * u(rng))};
        worst_large = std::max(worst_large, matrix_orbit_equivalence(kP, b, 1000));
    }
    CHECK(worst_small < 1e-9);
    CHECK(worst_large < 1e-6);
}

TEST_CASE("g is semiconjugate to f by (x, y^2)") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const PointP1xC q{Complex(u(rng), u(rng)), Complex(u(rng), u(rng))};
        CHECK(semiconjugacy_check(kP, q, 1) < 1e-12);
    }
    const PointP1xC q{Complex(0.3, -0.2), std::polar(0.7, 0.4)};
    CHECK(semiconjugacy_check(kP, q, 1000) < 1e-8);
    CHECK(semiconjugacy_check(kP, q, 1000, true) < 1e-8);
    const auto g1 = apply_g(kP, q);
    const auto g2 = apply_g(kP, q, true);
    CHECK(std::abs(g1.y + g2.y) < 1e-15);
    CHECK(std::abs(g1.y * g1.y - kP.beta * q.y * q.y) < 1e-15);
}

TEST_CASE("closed form of the inverted square map") {
    const InvertedSquareMap G(kP);
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int i = 0; i < 200; ++i) {
        const PointP1xC q{Complex(u(rng), u(rng)), Complex(u(rng), u(rng))};
        CHECK(point_distance(G(q), G.by_composition(q)) < 1e-12);
    }
    const auto origin = G({Complex(0.0), Complex(0.0)});
    CHECK(std::abs(origin.x.value()) == 0.0);
    CHECK(origin.y == Complex(0.0));
}

TEST_CASE("Jacobian of G at the origin") {
    const InvertedSquareMap G(kP);
    const Mat2 J = G.jacobian(0.0, 0.0);
    // finite-difference oracle
    const double h = 1e-6;
    auto gx = [&](Complex x, Complex y) { return G({x, y}).x.value(); };
    auto gy = [&](Complex x, Complex y) { return G({x, y}).y; };
    const Mat2 fd{(gx(h, 0.0) - gx(-h, 0.0)) / (2 * h), (gx(0.0, h) - gx(0.0, -h)) / (2 * h),
                  (gy(h, 0.0) - gy(-h, 0.0)) / (2 * h), (gy(0.0, h) - gy(0.0, -h)) / (2 * h)};
    CHECK(max_abs_diff(J, fd) < 1e-8);

    const Complex b = kP.beta;
    CHECK(std::abs(J.m00 - 1.0 / b) < 1e-12);
    CHECK(std::abs(J.m11 - 1.0 / (b * b)) < 1e-12);
    CHECK(std::abs(J.m10) < 1e-15);
    auto ev = eigenvalues(J);
    if (std::abs(ev[0] - 1.0 / b) > std::abs(ev[1] - 1.0 / b)) std::swap(ev[0], ev[1]);
    CHECK(std::abs(ev[0] - 1.0 / b) < 1e-10);
    CHECK(std::abs(ev[1] - 1.0 / (b * b)) < 1e-10);
}

TEST_CASE("fixed points") {
    const auto fps = fixed_points(kP);
    REQUIRE(fps.size() == 3);
    for (const auto& fp : fps) CHECK(fp.residual < 1e-14);
    const auto zero = apply_f(kP, {Complex(0.0), Complex(0.0)});
    CHECK(std::abs(zero.x.value()) == 0.0);
}

TEST_CASE("orbit-closure ranks") {
    const std::size_t n = 100000;
    const auto f = classify_orbit_closure(f_orbit_cloud(kP, from_f_start(), n));
    CHECK(f.rank == 2);
    CHECK(f.confidence >= 0.9);

    const auto g = classify_orbit_closure(g_orbit_cloud(kP, {Complex(1e-3), Complex(1e-3)}, n));
    CHECK(g.rank == 1);
    CHECK(g.confidence >= 0.9);

    // rotation vector (t, 2t) satisfies the integer relation (2, -1)
    const auto lin = classify_orbit_closure(linear_orbit_cloud(kP.alpha, kP.alpha * kP.alpha, {Complex(0.3), Complex(0.2)}, n));
    CHECK(lin.rank == 1);
    const auto lin2 = classify_orbit_closure(linear_orbit_cloud(kP.alpha, kP.beta, {Complex(0.3), Complex(0.2)}, n));
    CHECK(lin2.rank == 2);
}

TEST_CASE("rank is stable under perturbing the start point") {
    const std::size_t n = 100000;
    const PointP1xC q = from_f_start();
    const PointP1xC q2{q.x.value() + Complex(1e-6, 0.0), q.y + Complex(0.0, 1e-6)};
    CHECK(classify_orbit_closure(f_orbit_cloud(kP, q2, n)).rank == 2);
    const PointP1xC g2{Complex(1e-3 + 1e-6), Complex(1e-3, 1e-6)};
    CHECK(classify_orbit_closure(g_orbit_cloud(kP, g2, n)).rank == 1);
}

TEST_CASE("too few points for box counting") {
    CHECK_THROWS_AS(classify_orbit_closure(f_orbit_cloud(kP, from_f_start(), 50)), InsufficientPoints);
}
