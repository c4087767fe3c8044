#include <doctest.h>

#include <random>

#include "jonq/polynomial.hpp"

using namespace jonq;

namespace {

UPoly up(std::initializer_list<long> c) {
    std::vector<mpz_class> v;
    for (long x : c) v.emplace_back(x);
    return UPoly(v);
}

Poly3 random_homogeneous(std::mt19937_64& rng, int d, int bound = 5) {
    std::uniform_int_distribution<int> coef(-bound, bound);
    Poly3 p;
    for (int i = 0; i <= d; ++i) {
        for (int j = 0; i + j <= d; ++j) {
            const int c = coef(rng);
            if (c != 0) p += Poly3::monomial(c, i, j, d - i - j);
        }
    }
    if (p.is_zero()) p = Poly3::monomial(1, d, 0, 0);
    return p;
}

bool same_up_to_sign(const Poly3& a, const Poly3& b) { return a == b || a == b * mpz_class(-1); }

}  // namespace

TEST_CASE("univariate gcd") {
    const UPoly p = up({-1, 1}) * up({2, 1});       // (y - 1)(y + 2)
    const UPoly q = up({-1, 1}) * up({3, 1});       // (y - 1)(y + 3)
    CHECK(gcd(p, q) == up({-1, 1}));
    CHECK(gcd(p * mpz_class(6), q * mpz_class(4)) == up({-2, 2}));
    CHECK(gcd(p, UPoly()) == p.primitive_part() * p.content());
    CHECK(divexact(p, up({-1, 1})) == up({2, 1}));
    CHECK(up({4, 6, 2}).content() == 2);
    CHECK(up({-4, -6, -2}).primitive_part() == up({2, 3, 1}));
}

TEST_CASE("homogeneous gcd recovers a planted factor") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 30; ++t) {
        const Poly3 g = random_homogeneous(rng, 1 + t % 3);
        const Poly3 a = random_homogeneous(rng, 2) * g;
        const Poly3 b = random_homogeneous(rng, 2) * g;
        const Poly3 c = random_homogeneous(rng, 1) * g;
        const Poly3 h = gcd_homogeneous({a, b, c});
        REQUIRE(h.degree() >= g.degree());
        // g divides h, and h divides each input
        CHECK_NOTHROW(divexact(h, g.div_scalar_exact(g.content())));
        CHECK_NOTHROW(divexact(a, h));
        CHECK_NOTHROW(divexact(b, h));
        CHECK_NOTHROW(divexact(c, h));
    }
}

TEST_CASE("gcd with powers of z") {
    const Poly3 x = Poly3::x(), y = Poly3::y(), z = Poly3::z();
    const Poly3 g = gcd_homogeneous({x * z * z, y * z * (x + y), z * z * z});
    CHECK(same_up_to_sign(g, z));
    CHECK(gcd_homogeneous({x, y}).degree() == 0);
    const Poly3 common = z * (x + z);
    CHECK(same_up_to_sign(gcd_homogeneous({common * x, common * y, common * (x - y)}), common));
}

TEST_CASE("dehomogenize and homogenize are inverse on z-free factors") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 20; ++t) {
        Poly3 p = random_homogeneous(rng, 3);
        if (p.z_valuation() > 0) continue;
        CHECK(Poly3::homogenize(p.dehomogenize()) == p);
    }
}

TEST_CASE("substitution and evaluation agree") {
    std::mt19937_64 rng(77);
    const Poly3 p = random_homogeneous(rng, 3);
    const std::array<Poly3, 3> f{random_homogeneous(rng, 2), random_homogeneous(rng, 2), random_homogeneous(rng, 2)};
    const Poly3 comp = p.substitute(f);
    CHECK(comp.degree() <= 6);
    for (int t = 0; t < 10; ++t) {
        const mpq_class X(t - 3, 2), Y(2 * t + 1, 3), Z(5 - t, 7);
        const mpq_class inner = p.evaluate(f[0].evaluate(X, Y, Z), f[1].evaluate(X, Y, Z), f[2].evaluate(X, Y, Z));
        CHECK(comp.evaluate(X, Y, Z) == inner);
    }
}

TEST_CASE("exact division rejects remainders") {
    const Poly3 x = Poly3::x(), y = Poly3::y();
    CHECK_THROWS_AS(divexact(x * x + y, x), std::logic_error);
    CHECK(divexact(x * x * y, x * y) == x);
}

TEST_CASE("to_string") {
    const Poly3 p = Poly3::monomial(3, 1, 0, 1) + Poly3::monomial(-1, 0, 1, 1);
    CHECK_FALSE(p.to_string().empty());
    CHECK(Poly3().to_string() == "0");
}
