#include "jonq/linearize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <json.hpp>

#include "jonq/errors.hpp"

namespace jonq {

namespace {

constexpr double kCrossCheckTol = 1e-9;

template <class T>
struct Ring {
    using C = std::complex<T>;
    using S = BasicPowerSeries<C>;

    C alpha;
    C beta;
    C beta_m2;  // beta^{-2}
    std::size_t work;

    explicit Ring(const MapParams& p, std::size_t w)
        : alpha(T(p.alpha.real()), T(p.alpha.imag())),
          beta(T(p.beta.real()), T(p.beta.imag())),
          beta_m2(C(T(1)) / (beta * beta)),
          work(w) {}

    C power(int m) const {
        C base = m >= 0 ? beta : C(T(1)) / beta;
        C r(T(1));
        for (int k = 0; k < std::abs(m); ++k) r *= base;
        return r;
    }

    S widen(const S& s) const {
        std::vector<C> v(work + 1);
        for (std::size_t k = 0; k <= std::min(work, s.order()); ++k) v[k] = s[k];
        return S(std::move(v));
    }

    S y() const { return S::variable(work); }
    S one() const { return S::constant(work, C(T(1))); }
    S scaled(const S& s) const { return series_scale_argument(s, beta_m2); }

    S eq1(const S& a, const S& c) const {
        const S ap = scaled(a);
        const S cp = scaled(c);
        const S ac = ap * c;
        const S cc = cp * c;
        S tail = ac * (alpha * alpha);
        tail -= cc * alpha;
        tail -= cc;
        tail -= cp * a;
        S r = ac * beta;
        r += (ap * a) * (beta + alpha);
        r -= cp * a;
        r += tail.shifted();
        return r;
    }

    S eq2(const S& a, const S& b, const S& c) const {
        const S ap = scaled(a);
        const S bp = scaled(b);
        const S cp = scaled(c);
        S lin = ap * (alpha * alpha);
        lin -= c * (alpha * beta + beta);
        lin -= a * beta;
        lin -= cp * (alpha + C(T(1)));
        S quad_tail = (bp * c) * (alpha * alpha * beta);
        quad_tail -= b * cp;
        S r = (ap - a) * beta;
        r += lin.shifted();
        r += (a * bp) * (beta * (alpha + beta));
        r += (b * ap) * (alpha + beta);
        r += (bp * c) * (beta * beta);
        r -= b * cp;
        r += quad_tail.shifted();
        return r;
    }

    S eq3(const S& b) const {
        const S bp = scaled(b);
        S r = y() * (alpha + C(T(1)));
        r += b;
        r -= bp * beta;
        r -= bp.shifted() * (alpha * alpha);
        r += b.shifted();
        r -= (bp * b) * (alpha + beta);
        return r;
    }
};

template <class T>
double mod(const std::complex<T>& z) {
    return modulus(z);
}

template <class T>
double chordal(const std::complex<T>& a, const std::complex<T>& b) {
    const double d2 = static_cast<double>(norm_sq(a - b));
    const double na = static_cast<double>(norm_sq(a));
    const double nb = static_cast<double>(norm_sq(b));
    return std::sqrt(d2 / ((1.0 + na) * (1.0 + nb)));
}

// The equations are quadratic in the coefficients, so round-off in a residual
// scales with the square of the largest coefficient.
template <class S>
double term_scale(const S& a, const S& b, const S& c) {
    double m = 1.0;
    for (const S* s : {&a, &b, &c}) {
        for (const auto& z : s->coeffs()) m = std::max(m, modulus(z));
    }
    return m * m;
}

template <class T>
T probe_value(double scale) {
    return T(std::ldexp(1.0, std::ilogb(scale) + 40));
}

// The order-nu residual is affine in the unknown. The probe value is a power
// of two far above the square of the coefficient scale, so r(probe) - r(0) is
// not swamped by round-off from large, cancelling lower-order terms.
template <class T, class F>
std::complex<T> linear_coefficient(std::complex<T>& unknown, std::size_t nu, double scale, F&& residual_at) {
    const T probe = probe_value<T>(scale);
    unknown = {};
    const std::complex<T> r0 = residual_at()[nu];
    unknown = std::complex<T>(probe);
    const std::complex<T> r1 = residual_at()[nu];
    const std::complex<T> k = (r1 - r0) / probe;
    unknown = -r0 / k;
    return k;
}

void cross_check(const char* what, std::size_t nu, double derived, double expected_diff) {
    if (expected_diff > kCrossCheckTol) {
        throw DomainError(std::string("linear coefficient cross-check failed for ") + what + " at order " +
                          std::to_string(nu) + ": substitution gives modulus " + std::to_string(derived) +
                          ", closed form differs by " + std::to_string(expected_diff));
    }
}

template <class T>
std::complex<T> to_c(Complex z) {
    return {T(z.real()), T(z.imag())};
}

}  // namespace

template <class T>
BasicConjugacyCoeffs<T> solve_coefficients_as(const MapParams& p, std::size_t N, double divisor_floor) {
    using C = std::complex<T>;
    using S = BasicPowerSeries<C>;
    validate(p);
    if (!(divisor_floor > 0.0)) throw InvalidSpec("divisor floor must be positive");

    const Ring<T> R(p, 2 * N);
    S a(R.work), b(R.work), c(R.work);
    a[0] = C(T(1)) - R.beta;
    c[0] = R.alpha + R.beta;
    const C a0 = a[0];
    const C c0 = c[0];
    double floor_hit = std::numeric_limits<double>::infinity();

    auto guard = [&](const C& k, std::size_t nu) {
        const double m = mod(k);
        floor_hit = std::min(floor_hit, m);
        if (m < divisor_floor) throw SmallDivisor(static_cast<int>(nu), m);
    };

    for (std::size_t nu = 1; nu <= N; ++nu) {
        const int n2 = 2 * static_cast<int>(nu);

        const C kb = linear_coefficient(b[nu], nu, term_scale(a, b, c), [&] { return R.eq3(b); });
        cross_check("b", nu, mod(kb), mod(kb - (C(T(1)) - R.power(1 - n2))));
        guard(kb, nu);

        const C ka = linear_coefficient(a[nu], nu, term_scale(a, b, c), [&] { return R.eq2(a, b, c); });
        cross_check("a", nu, mod(ka), mod(ka - (R.power(1 - n2) - R.beta)));
        guard(ka, nu);
        {
            const C saved_a = a[nu];
            const C saved_b = b[nu];
            a[nu] = C{};
            const C base = R.eq2(a, b, c)[nu];
            const T probe = probe_value<T>(term_scale(a, b, c));
            b[nu] += C(probe);
            const C coupling = (R.eq2(a, b, c)[nu] - base) / probe;
            b[nu] = saved_b;
            a[nu] = saved_a;
            const C expected = (R.alpha + R.beta) * a0 * (C(T(1)) + R.power(1 - n2)) + c0 * (R.power(2 - n2) - C(T(1)));
            cross_check("b coupling", nu, mod(coupling), mod(coupling - expected));
        }

        const C kc = linear_coefficient(c[nu], nu, term_scale(a, b, c), [&] { return R.eq1(a, c); });
        cross_check("c", nu, mod(kc), mod(kc - a0 * (R.beta - R.power(-n2))));
        guard(kc, nu);
        {
            const C saved_a = a[nu];
            const C saved_c = c[nu];
            c[nu] = C{};
            const C base = R.eq1(a, c)[nu];
            const T probe = probe_value<T>(term_scale(a, b, c));
            a[nu] += C(probe);
            const C coupling = (R.eq1(a, c)[nu] - base) / probe;
            a[nu] = saved_a;
            c[nu] = saved_c;
            const C expected = (R.alpha + R.beta) * a0 * (C(T(1)) + R.power(-n2)) + c0 * (R.power(1 - n2) - C(T(1)));
            cross_check("a coupling", nu, mod(coupling), mod(coupling - expected));
        }
    }

    auto cut = [N](const S& s) {
        std::vector<C> v(s.coeffs().begin(), s.coeffs().begin() + static_cast<std::ptrdiff_t>(N + 1));
        return S(std::move(v));
    };
    BasicConjugacyCoeffs<T> out;
    out.a = cut(a);
    out.b = cut(b);
    out.c = cut(c);
    out.params = p;
    out.divisor_floor_hit = N == 0 ? 0.0 : floor_hit;
    return out;
}

ConjugacyCoeffs solve_coefficients(const MapParams& p, std::size_t N, double divisor_floor) {
    return solve_coefficients_as<double>(p, N, divisor_floor);
}

QuadConjugacyCoeffs solve_coefficients_quad(const MapParams& p, std::size_t N, double divisor_floor) {
    return solve_coefficients_as<quad>(p, N, divisor_floor);
}

template <class T>
std::array<typename BasicConjugacyCoeffs<T>::series, 3> equation_series(const BasicConjugacyCoeffs<T>& coeffs) {
    const std::size_t N = coeffs.order();
    const Ring<T> R(coeffs.params, std::max<std::size_t>(2 * N, 1));
    const auto a = R.widen(coeffs.a);
    const auto b = R.widen(coeffs.b);
    const auto c = R.widen(coeffs.c);
    return {R.eq1(a, c), R.eq2(a, b, c), R.eq3(b)};
}

template <class T>
ResidualNorms residual_norms(const BasicConjugacyCoeffs<T>& coeffs) {
    const auto eqs = equation_series(coeffs);
    double r[3] = {0.0, 0.0, 0.0};
    for (int e = 0; e < 3; ++e) {
        for (std::size_t k = 0; k <= coeffs.order(); ++k) r[e] = std::max(r[e], mod(eqs[e][k]));
    }
    return {r[0], r[1], r[2]};
}

template <class T>
std::complex<T> psi_x(const BasicConjugacyCoeffs<T>& coeffs, std::complex<T> x, std::complex<T> y) {
    return (coeffs.a(y) * x + coeffs.b(y)) / (coeffs.c(y) * x + std::complex<T>(T(1)));
}

template <class T>
double verify_conjugacy_numeric(const BasicConjugacyCoeffs<T>& coeffs, std::size_t sample_count, double y_radius,
                                double x_radius) {
    using C = std::complex<T>;
    const C alpha = to_c<T>(coeffs.params.alpha);
    const C beta = to_c<T>(coeffs.params.beta);
    const C one(T(1));
    double worst = 0.0;
    for (std::size_t j = 0; j < sample_count; ++j) {
        const double t = static_cast<double>(j);
        const C y = to_c<T>(std::polar(y_radius, kTwoPi * frac(0.5 + t * kGenericFreq)));
        const C x = to_c<T>(std::polar(x_radius, kTwoPi * frac(0.25 + t * kGenericAlphaAngle)));
        const C X = psi_x(coeffs, x, y);
        const C lhs = ((one + y) * X + (alpha + one) * y) / ((alpha + beta) * X + alpha * alpha * y + beta);
        const C rhs = psi_x(coeffs, x / beta, y / (beta * beta));
        worst = std::max(worst, chordal(lhs, rhs));
    }
    return worst;
}

template <class T>
double verify_zero_fiber(const BasicConjugacyCoeffs<T>& coeffs, std::size_t sample_count, double x_radius) {
    using C = std::complex<T>;
    const C alpha = to_c<T>(coeffs.params.alpha);
    const C beta = to_c<T>(coeffs.params.beta);
    const C zero{};
    double worst = 0.0;
    for (std::size_t j = 0; j < sample_count; ++j) {
        const C x = to_c<T>(std::polar(x_radius, kTwoPi * frac(0.25 + static_cast<double>(j) * kGenericAlphaAngle)));
        const C X = psi_x(coeffs, x, zero);
        const C lhs = X / ((alpha + beta) * X + beta);
        const C rhs = psi_x(coeffs, x / beta, zero);
        worst = std::max(worst, chordal(lhs, rhs));
    }
    return worst;
}

double estimate_radius(std::span<const double> magnitudes) {
    const std::size_t N = magnitudes.size() - 1;
    if (magnitudes.empty() || N < 8) throw InvalidSpec("radius estimate needs N >= 8");
    const std::size_t lo = (N + 1) / 2;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double m = 0;
    for (std::size_t nu = lo; nu <= N; ++nu) {
        if (!(magnitudes[nu] > 0.0)) continue;
        const double x = static_cast<double>(nu);
        const double y = std::log(magnitudes[nu]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        m += 1.0;
    }
    if (m < 2.0) return std::numeric_limits<double>::infinity();
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return std::exp(-slope);
}

double estimate_radius(const ConjugacyCoeffs& coeffs) {
    std::vector<double> mags(coeffs.order() + 1);
    for (std::size_t nu = 0; nu <= coeffs.order(); ++nu) {
        mags[nu] = std::max({std::abs(coeffs.a[nu]), std::abs(coeffs.b[nu]), std::abs(coeffs.c[nu])});
    }
    return estimate_radius(mags);
}

std::string coefficients_json(const ConjugacyCoeffs& coeffs) {
    using nlohmann::ordered_json;
    auto pair = [](Complex z) { return ordered_json::array({z.real(), z.imag()}); };
    auto list = [&](const PowerSeries& s) {
        ordered_json arr = ordered_json::array();
        for (const auto& z : s.coeffs()) arr.push_back(pair(z));
        return arr;
    };
    ordered_json j;
    j["alpha"] = pair(coeffs.params.alpha);
    j["beta"] = pair(coeffs.params.beta);
    j["N"] = coeffs.order();
    j["a"] = list(coeffs.a);
    j["b"] = list(coeffs.b);
    j["c"] = list(coeffs.c);
    j["divisor_floor_hit"] = coeffs.divisor_floor_hit;
    return j.dump();
}

#define JONQ_INSTANTIATE(T)                                                                                    \
    template BasicConjugacyCoeffs<T> solve_coefficients_as<T>(const MapParams&, std::size_t, double);         \
    template ResidualNorms residual_norms<T>(const BasicConjugacyCoeffs<T>&);                                 \
    template std::array<BasicConjugacyCoeffs<T>::series, 3> equation_series<T>(const BasicConjugacyCoeffs<T>&); \
    template std::complex<T> psi_x<T>(const BasicConjugacyCoeffs<T>&, std::complex<T>, std::complex<T>);      \
    template double verify_conjugacy_numeric<T>(const BasicConjugacyCoeffs<T>&, std::size_t, double, double); \
    template double verify_zero_fiber<T>(const BasicConjugacyCoeffs<T>&, std::size_t, double);

JONQ_INSTANTIATE(double)
JONQ_INSTANTIATE(quad)

#undef JONQ_INSTANTIATE

}  // namespace jonq
