#include "jonq/jonquieres.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "jonq/cocycle.hpp"
#include "jonq/errors.hpp"

namespace jonq {

namespace {

constexpr std::size_t kPointsPerBox = 10;
constexpr std::size_t kMinWindow = 2;

ExtComplex inv(const ExtComplex& z) {
    if (z.is_infinite()) return Complex(0.0, 0.0);
    if (z.value() == Complex(0.0, 0.0)) return ExtComplex::infinity();
    return Complex(1.0, 0.0) / z.value();
}

Mat2 generator_a(Complex alpha, Complex y) { return {alpha, y, 1.0, 1.0}; }

Complex half_multiplier(const MapParams& p, bool other_root) {
    const Complex gamma = std::polar(1.0, std::numbers::pi * p.freq());
    return other_root ? -gamma : gamma;
}

std::array<double, 4> coords(Complex x, Complex y) { return {x.real(), x.imag(), y.real(), y.imag()}; }

std::size_t count_boxes(const OrbitCloud& unit, int k, std::vector<std::uint64_t>& keys) {
    const double cells = std::ldexp(1.0, k);
    const std::uint64_t top = (std::uint64_t{1} << k) - 1;
    keys.clear();
    for (const auto& q : unit) {
        std::uint64_t key = 0;
        for (double c : q) {
            auto idx = static_cast<std::uint64_t>(std::max(0.0, std::floor(c * cells)));
            key = (key << k) | std::min(idx, top);
        }
        keys.push_back(key);
    }
    std::sort(keys.begin(), keys.end());
    return static_cast<std::size_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
}

}  // namespace

MapParams MapParams::from_angles(double alpha_angle, double freq) {
    return {unit_phase(alpha_angle), unit_phase(freq)};
}

MapParams MapParams::generic() { return from_angles(kGenericAlphaAngle, kGenericFreq); }

void validate(const MapParams& p) {
    if (std::abs(std::abs(p.alpha) - 1.0) > 1e-12) throw InvalidSpec("|alpha| must be 1");
    if (std::abs(std::abs(p.beta) - 1.0) > 1e-12) throw InvalidSpec("|beta| must be 1");
    if (near_rational(p.freq())) throw InvalidSpec("beta is too close to a root of unity of order <= 64");
}

PointP1xC apply_f(const MapParams& p, const PointP1xC& q) {
    if (q.x.is_finite() && q.x.value() == Complex(-1.0, 0.0) && q.y == p.alpha) throw IndeterminatePoint();
    return {projective_action(generator_a(p.alpha, q.y), q.x), p.beta * q.y};
}

double point_distance(const PointP1xC& a, const PointP1xC& b) {
    const double dx = chordal_distance(a.x, b.x);
    const double dy = std::abs(a.y - b.y);
    return std::hypot(dx, dy);
}

OrbitRecord orbit(const MapParams& p, const PointP1xC& q, std::size_t n, double dist_tol) {
    if (n < 1) throw InvalidSpec("orbit length must be >= 1");
    const PointP1xC bad{Complex(-1.0, 0.0), p.alpha};
    OrbitRecord rec;
    rec.points.reserve(n + 1);
    rec.points.push_back(q);
    PointP1xC cur = q;
    for (std::size_t k = 0;; ++k) {
        if (cur.x.is_infinite()) rec.escaped = true;
        const double d = point_distance(cur, bad);
        if (d < dist_tol) rec.indeterminacy_hits.push_back({k, d});
        if (k == n) break;
        try {
            cur = apply_f(p, cur);
        } catch (const IndeterminatePoint&) {
            rec.truncated = true;
            break;
        }
        rec.points.push_back(cur);
    }
    return rec;
}

double matrix_orbit_equivalence(const MapParams& p, const PointP1xC& q, std::size_t n) {
    const double rho = std::abs(q.y);
    if (!(rho > 0.0)) throw InvalidSpec("orbit start needs y != 0");
    const CocycleSpec spec = CocycleSpec::jonquieres_a(p.alpha, rho, p.freq());
    double theta = angle_of(q.y / rho);

    Mat2 prod = Mat2::identity();
    PointP1xC cur = q;
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        prod = evaluate_generator(spec, theta) * prod;
        prod /= Complex(frobenius_norm(prod));
        theta = frac(theta + spec.freq);
        cur = apply_f(p, cur);
        worst = std::max(worst, chordal_distance(cur.x, projective_action(prod, q.x)));
    }
    return worst;
}

PointP1xC apply_g(const MapParams& p, const PointP1xC& q, bool other_root) {
    if (q.x.is_finite() && q.x.value() == Complex(-1.0, 0.0) && q.y * q.y == p.alpha) throw IndeterminatePoint();
    return {projective_action(generator_a(p.alpha, q.y * q.y), q.x), half_multiplier(p, other_root) * q.y};
}

double semiconjugacy_check(const MapParams& p, const PointP1xC& q, std::size_t n, bool other_root) {
    const Complex gamma = half_multiplier(p, other_root);
    const MapParams f_params{p.alpha, gamma * gamma};
    PointP1xC upstairs = q;
    PointP1xC downstairs{q.x, q.y * q.y};
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        upstairs = apply_g(p, upstairs, other_root);
        downstairs = apply_f(f_params, downstairs);
        const PointP1xC projected{upstairs.x, upstairs.y * upstairs.y};
        worst = std::max(worst, point_distance(projected, downstairs));
    }
    return worst;
}

Mat2 InvertedSquareMap::moebius(Complex y) const {
    const Complex a = p_.alpha;
    const Complex b = p_.beta;
    return {1.0 + y, (a + 1.0) * y, a + b, a * a * y + b};
}

PointP1xC InvertedSquareMap::operator()(const PointP1xC& q) const {
    return {projective_action(moebius(q.y), q.x), q.y / (p_.beta * p_.beta)};
}

Mat2 InvertedSquareMap::jacobian(Complex x, Complex y) const {
    const Complex a = p_.alpha;
    const Complex b = p_.beta;
    const Mat2 m = moebius(y);
    const Complex num = m.m00 * x + m.m01;
    const Complex den = m.m10 * x + m.m11;
    const Complex dx = m.det() / (den * den);
    const Complex dy = ((x + a + 1.0) * den - num * a * a) / (den * den);
    return {dx, dy, 0.0, 1.0 / (b * b)};
}

PointP1xC InvertedSquareMap::by_composition(const PointP1xC& q) const {
    const ExtComplex y_inv = inv(q.y);
    if (y_inv.is_infinite()) throw InvalidSpec("by_composition needs y != 0");
    PointP1xC r{inv(q.x), y_inv.value()};
    r = apply_f(p_, apply_f(p_, r));
    return {inv(r.x), inv(r.y).value()};
}

std::vector<FixedPoint> fixed_points(const MapParams& p) {
    std::vector<FixedPoint> out;
    for (const auto& [name, x] : {std::pair<const char*, Complex>{"origin", 0.0}, {"alpha-1", p.alpha - 1.0}}) {
        const PointP1xC q{x, 0.0};
        const PointP1xC img = apply_f(p, q);
        out.push_back({name, x, Complex(0.0, 0.0), point_distance(q, img)});
    }
    const InvertedSquareMap g(p);
    const PointP1xC o{Complex(0.0, 0.0), 0.0};
    out.push_back({"infinity", ExtComplex::infinity(), ExtComplex::infinity(), point_distance(o, g(o))});
    return out;
}

OrbitCloud f_orbit_cloud(const MapParams& p, const PointP1xC& q, std::size_t n) {
    OrbitCloud cloud;
    cloud.reserve(n);
    PointP1xC cur = q;
    for (std::size_t k = 0; k < n; ++k) {
        if (cur.x.is_infinite()) throw DomainError("orbit left the finite chart");
        cloud.push_back(coords(cur.x.value(), cur.y));
        cur = apply_f(p, cur);
    }
    return cloud;
}

OrbitCloud g_orbit_cloud(const MapParams& p, const PointP1xC& q, std::size_t n) {
    const InvertedSquareMap g(p);
    OrbitCloud cloud;
    cloud.reserve(n);
    PointP1xC cur = q;
    for (std::size_t k = 0; k < n; ++k) {
        if (cur.x.is_infinite()) throw DomainError("orbit left the finite chart");
        cloud.push_back(coords(cur.x.value(), cur.y));
        cur = g(cur);
    }
    return cloud;
}

OrbitCloud linear_orbit_cloud(Complex a, Complex b, const PointP1xC& q, std::size_t n) {
    if (q.x.is_infinite()) throw InvalidSpec("linear model needs finite x");
    OrbitCloud cloud;
    cloud.reserve(n);
    Complex x = q.x.value();
    Complex y = q.y;
    for (std::size_t k = 0; k < n; ++k) {
        cloud.push_back(coords(x, y));
        x *= a;
        y *= b;
    }
    return cloud;
}

ClosureClassification classify_orbit_closure(const OrbitCloud& cloud, int max_octave) {
    if (cloud.empty()) throw InsufficientPoints("empty orbit");
    max_octave = std::min(max_octave, 15);

    std::array<double, 4> lo;
    std::array<double, 4> hi;
    lo.fill(std::numeric_limits<double>::infinity());
    hi.fill(-std::numeric_limits<double>::infinity());
    for (const auto& q : cloud) {
        for (int i = 0; i < 4; ++i) {
            lo[i] = std::min(lo[i], q[i]);
            hi[i] = std::max(hi[i], q[i]);
        }
    }
    OrbitCloud unit(cloud.size());
    for (std::size_t j = 0; j < cloud.size(); ++j) {
        for (int i = 0; i < 4; ++i) {
            const double span = hi[i] - lo[i];
            unit[j][i] = span > 0.0 ? (cloud[j][i] - lo[i]) / span : 0.0;
        }
    }

    ClosureClassification out;
    std::vector<std::uint64_t> keys;
    keys.reserve(unit.size());
    for (int k = 0; k <= max_octave; ++k) {
        const std::size_t boxes = count_boxes(unit, k, keys);
        if (cloud.size() < kPointsPerBox * boxes) break;
        out.counts.push_back(boxes);
    }
    for (std::size_t k = 1; k < out.counts.size(); ++k) {
        out.slopes.push_back(std::log2(static_cast<double>(out.counts[k]) / static_cast<double>(out.counts[k - 1])));
    }

    const std::size_t m = out.slopes.size();
    if (m < 2 + kMinWindow) {
        throw InsufficientPoints("only " + std::to_string(m) + " resolved octaves; need " +
                                 std::to_string(2 + kMinWindow));
    }
    out.window_begin = 2;
    out.window_end = m;
    for (int drop = 0; drop < 2 && out.window_end - out.window_begin > kMinWindow; ++drop) --out.window_end;

    std::vector<double> window(out.slopes.begin() + static_cast<std::ptrdiff_t>(out.window_begin),
                               out.slopes.begin() + static_cast<std::ptrdiff_t>(out.window_end));
    std::sort(window.begin(), window.end());
    const std::size_t w = window.size();
    out.median_slope = w % 2 == 1 ? window[w / 2] : 0.5 * (window[w / 2 - 1] + window[w / 2]);
    out.rank = static_cast<int>(std::clamp(std::lround(out.median_slope), 1L, 2L));
    const auto close = std::count_if(window.begin(), window.end(),
                                     [&](double s) { return std::abs(s - out.rank) <= 0.5; });
    out.confidence = static_cast<double>(close) / static_cast<double>(w);
    return out;
}

}  // namespace jonq
