#include <doctest.h>

#include <random>

#include "jonq/acceleration.hpp"
#include "jonq/errors.hpp"

using namespace jonq;

namespace {

EstimatorParams quick(std::size_t n = 5000, std::size_t samples = 16) {
    EstimatorParams p;
    p.n = n;
    p.samples = samples;
    p.seed = 1;
    return p;
}

std::vector<double> sample(const std::vector<double>& s, double (*fn)(double), double noise, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, noise);
    std::vector<double> v;
    for (double x : s) v.push_back(fn(x) + (noise > 0 ? g(rng) : 0.0));
    return v;
}

double ramp(double s) { return std::max(0.0, s); }
double vee(double s) { return std::abs(s); }
double flat(double) { return 0.3; }

}  // namespace

TEST_CASE("linear grid endpoints") {
    const auto g = linear_grid(-2.0, 2.0, 41);
    REQUIRE(g.size() == 41);
    CHECK(g.front() == -2.0);
    CHECK(g.back() == 2.0);
    CHECK(g[20] == 0.0);
}

TEST_CASE("profile of the Jonquieres cocycle follows max(0, s)") {
    const auto spec = CocycleSpec::jonquieres_b(generic_alpha(), 1.0, kGenericFreq);
    const auto grid = linear_grid(-2.0, 2.0, 21);
    const auto prof = lyapunov_profile(spec, grid, quick());
    REQUIRE(prof.points.size() == 21);
    for (const auto& pt : prof.points) {
        INFO("s = " << pt.s << " L = " << pt.estimate.value);
        CHECK(std::abs(pt.estimate.value - std::max(0.0, pt.s)) <= 2.0 * resolution(pt.estimate));
    }
}

TEST_CASE("profile of a constant cocycle is flat") {
    const auto spec = CocycleSpec::constant_matrix(Mat2::diagonal(2.0, 0.5), kGenericFreq);
    const auto prof = lyapunov_profile(spec, linear_grid(-1.0, 1.0, 9), quick(2000, 4));
    for (const auto& pt : prof.points) CHECK(pt.estimate.value == doctest::Approx(std::log(2.0)).epsilon(1e-3));
    const auto fit = piecewise_affine_fit(prof);
    CHECK(fit.breakpoints.empty());
    CHECK(std::abs(fit.slopes.at(0)) < 1e-6);
}

TEST_CASE("profile of the diagonal power cocycle is |s| and convex") {
    const auto spec = CocycleSpec::diagonal_power(1.0, kGenericFreq);
    const auto prof = lyapunov_profile(spec, linear_grid(-1.0, 1.0, 21), quick(2000, 8));
    for (const auto& pt : prof.points) CHECK(std::abs(pt.estimate.value - std::abs(pt.s)) <= 2.0 * resolution(pt.estimate));
    const auto fit = piecewise_affine_fit(prof);
    REQUIRE(fit.breakpoints.size() == 1);
    CHECK(std::abs(fit.breakpoints[0]) <= 0.05);
    double res = 0.0;
    for (const auto& pt : prof.points) res = std::max(res, resolution(pt.estimate));
    for (std::size_t i = 1; i < fit.slopes.size(); ++i) CHECK(fit.slopes[i] >= fit.slopes[i - 1] - 2.0 * res);
}

TEST_CASE("BTilde profile needs a grid that avoids the unit circle") {
    const auto spec = CocycleSpec::b_tilde(generic_alpha(), 0.5, kGenericFreq);
    const std::vector<double> bad{-0.5, 0.0, 0.5};
    CHECK_THROWS_AS(lyapunov_profile(spec, bad, quick(100, 2)), RadiusOne);
}

TEST_CASE("segmented fit on synthetic profiles") {
    const auto s = linear_grid(-2.0, 2.0, 41);
    const double penalty = 2.0 * 0.01 * 0.01 * std::log(41.0);

    SUBCASE("max(0, s) with noise") {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const auto v = sample(s, ramp, 0.01, seed);
            const auto fit = piecewise_affine_fit(s, v, penalty);
            REQUIRE(fit.breakpoints.size() == 1);
            CHECK(std::abs(fit.breakpoints[0]) <= 0.05);
            CHECK(std::abs(fit.slopes[0]) <= 0.05);
            CHECK(std::abs(fit.slopes[1] - 1.0) <= 0.05);
        }
    }
    SUBCASE("constant") {
        const auto fit = piecewise_affine_fit(s, sample(s, flat, 0.0, 1), penalty);
        CHECK(fit.breakpoints.empty());
        CHECK(fit.slopes.size() == 1);
        CHECK(std::abs(fit.slopes[0]) < 1e-12);
        CHECK(fit.segment_bounds.front() == 0);
        CHECK(fit.segment_bounds.back() == 40);
    }
    SUBCASE("|s|") {
        const auto fit = piecewise_affine_fit(s, sample(s, vee, 0.0, 1), penalty);
        REQUIRE(fit.breakpoints.size() == 1);
        CHECK(std::abs(fit.breakpoints[0]) < 1e-9);
        CHECK(fit.slopes[0] == doctest::Approx(-1.0));
        CHECK(fit.slopes[1] == doctest::Approx(1.0));
    }
    SUBCASE("off-grid kink is located by line intersection") {
        std::vector<double> v;
        for (double x : s) v.push_back(std::max(0.0, x - 0.033));
        const auto fit = piecewise_affine_fit(s, v, penalty);
        REQUIRE(fit.breakpoints.size() == 1);
        CHECK(fit.breakpoints[0] == doctest::Approx(0.033).epsilon(0.05));
    }
    SUBCASE("refitting after small noise barely moves the breakpoint") {
        const auto base = piecewise_affine_fit(s, sample(s, ramp, 0.0, 1), penalty);
        for (std::uint64_t seed = 10; seed < 20; ++seed) {
            const auto noisy = piecewise_affine_fit(s, sample(s, ramp, 0.005, seed), penalty);
            REQUIRE(noisy.breakpoints.size() == base.breakpoints.size());
            CHECK(std::abs(noisy.breakpoints[0] - base.breakpoints[0]) < 0.05);
        }
    }
    SUBCASE("too few points") {
        const std::vector<double> x{0, 1, 2, 3}, y{0, 1, 2, 3};
        CHECK_THROWS_AS(piecewise_affine_fit(x, y, 1.0), InvalidSpec);
    }
}

TEST_CASE("acceleration values") {
    const auto p = quick();
    const auto dp = acceleration_at(CocycleSpec::diagonal_power(1.0, kGenericFreq), 1.0, 0.02, p);
    CHECK(std::abs(dp.omega - 1.0) <= 0.05);
    CHECK(dp.nearest_integer == 1);
    CHECK(dp.left_slope == doctest::Approx(-dp.omega));

    const auto b = acceleration_at(CocycleSpec::jonquieres_b(generic_alpha(), 1.0, kGenericFreq), 2.0, 0.02, p);
    CHECK(std::abs(b.omega + 1.0) <= 0.05);

    for (double rho : {0.5, 2.0}) {
        const auto bt = acceleration_at(CocycleSpec::b_tilde(generic_alpha(), rho, kGenericFreq), rho, 0.02, p);
        CHECK(std::abs(bt.omega) <= 0.05);
    }

    const auto c = acceleration_at(CocycleSpec::constant_matrix(Mat2::diagonal(2.0, 0.5), kGenericFreq), 1.0, 0.02, p);
    CHECK(std::abs(c.omega) <= 0.05);
}

TEST_CASE("stencils may not cross the unit circle") {
    const auto p = quick(200, 2);
    CHECK_THROWS_AS(acceleration_at(CocycleSpec::jonquieres_b(generic_alpha(), 1.0, kGenericFreq), 1.01, 0.02, p),
                    SideCrossing);
    CHECK_THROWS_AS(acceleration_at(CocycleSpec::b_tilde(generic_alpha(), 0.5, kGenericFreq), 1.0, 0.02, p), SideCrossing);
    CHECK_THROWS_AS(acceleration_at(CocycleSpec::diagonal_power(1.0, kGenericFreq), 1.0, -0.1, p), InvalidSpec);
}

TEST_CASE("quantization check") {
    auto est = [](double w) {
        AccelerationEstimate e;
        e.omega = w;
        e.nearest_integer = std::lround(w);
        e.distance = std::abs(w - static_cast<double>(e.nearest_integer));
        return e;
    };
    const std::vector<AccelerationEstimate> good{est(0.01), est(-0.98), est(1.03)};
    CHECK(quantization_check(good, 0.05).pass);
    const std::vector<AccelerationEstimate> bad{est(0.0), est(0.3)};
    const auto r = quantization_check(bad, 0.05);
    CHECK_FALSE(r.pass);
    REQUIRE(r.failures.size() == 1);
    CHECK(r.failures[0] == 1);
    CHECK(quantization_check({}, 0.05).pass);
    CHECK_THROWS_AS(quantization_check(good, 0.6), InvalidSpec);
}

TEST_CASE("regularity") {
    const auto p = quick();
    const auto bt = regularity_check(CocycleSpec::b_tilde(generic_alpha(), 2.0, kGenericFreq), 2.0, 0.02, p);
    CHECK(bt.verdict == Regularity::Regular);
    const auto dp = regularity_check(CocycleSpec::diagonal_power(1.0, kGenericFreq), 1.0, 0.02, p);
    CHECK(dp.verdict == Regularity::NotRegular);
    CHECK(dp.left_slope == doctest::Approx(-1.0).epsilon(0.05));
    CHECK(dp.right_slope == doctest::Approx(1.0).epsilon(0.05));
    const auto b = regularity_check(CocycleSpec::jonquieres_b(generic_alpha(), 1.0, kGenericFreq), 1.0, 0.02, p);
    CHECK(b.verdict == Regularity::NotRegular);
    CHECK(std::abs(b.left_slope) < 0.05);
    CHECK(std::abs(b.right_slope - 1.0) < 0.05);
}

TEST_CASE("uniform hyperbolicity") {
    const auto p = quick();
    CHECK(uh_classify(CocycleSpec::constant_matrix(Mat2::diagonal(2.0, 0.5), kGenericFreq), 1.0, 0.02, p).verdict ==
          UhVerdict::UH);
    CHECK(uh_classify(CocycleSpec::b_tilde(generic_alpha(), 2.0, kGenericFreq), 2.0, 0.02, p).verdict ==
          UhVerdict::NotUH);
    const double c = std::cos(1.0), s = std::sin(1.0);
    CHECK(uh_classify(CocycleSpec::constant_matrix(Mat2{c, -s, s, c}, kGenericFreq), 1.0, 0.02, p).verdict ==
          UhVerdict::NotUH);
    CHECK_THROWS_AS(uh_classify(CocycleSpec::jonquieres_b(generic_alpha(), 2.0, kGenericFreq), 2.0, 0.02, p),
                    NotUnimodular);
}

TEST_CASE("Schrodinger regimes") {
    const auto p = quick();
    const auto mathieu = CocycleSpec::schrodinger(0.0, TrigPotential{0.0, {6.0}, {}}, kGenericFreq);
    CHECK(regime_classify(mathieu, 0.0, 0.02, p).regime == Regime::Supercritical);
    // large coupling: Herman's bound L >= ln(lambda)
    CHECK(regime_classify(mathieu, 0.0, 0.02, p).on_circle.value >= std::log(3.0) - 0.02);

    const auto free_op = CocycleSpec::schrodinger(0.0, TrigPotential{}, kGenericFreq);
    CHECK(regime_classify(free_op, 1.0, 0.02, p).regime == Regime::SubcriticalLike);
    const auto hyp = regime_classify(free_op, 3.0, 0.02, p);
    CHECK(hyp.regime == Regime::Supercritical);
    CHECK(hyp.on_circle.value == doctest::Approx(std::log((3.0 + std::sqrt(5.0)) / 2.0)).epsilon(1e-3));
}
