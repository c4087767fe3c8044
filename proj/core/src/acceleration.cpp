#include "jonq/acceleration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "jonq/errors.hpp"

namespace jonq {

namespace {

bool kinked_on_unit_circle(CocycleKind k) {
    return k == CocycleKind::JonquieresA || k == CocycleKind::JonquieresB ||
           k == CocycleKind::DiagonalPower || k == CocycleKind::BTilde;
}

bool straddles_zero(double lo, double hi) { return lo < 0.0 && hi > 0.0; }

void check_side(const CocycleSpec& spec, double lo, double hi) {
    if (kinked_on_unit_circle(spec.kind) && straddles_zero(lo, hi)) {
        throw SideCrossing("finite-difference stencil [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "] crosses the unit circle");
    }
    if (spec.kind == CocycleKind::BTilde && (lo == 0.0 || hi == 0.0)) {
        throw SideCrossing("BTilde stencil touches the unit circle");
    }
}

LyapunovEstimate at_s(const CocycleSpec& spec, double s, const EstimatorParams& p) {
    return lyapunov(spec.with_rho(std::exp(s)), p.n, p.samples, p.seed, p.lyapunov);
}

AccelerationEstimate make_estimate(double omega, double h) {
    AccelerationEstimate a;
    a.omega = omega;
    a.left_slope = -omega;
    a.h = h;
    a.nearest_integer = std::lround(omega);
    a.distance = std::abs(omega - static_cast<double>(a.nearest_integer));
    return a;
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double sse = 0.0;
};

/// Prefix sums for O(1) least-squares lines over index ranges.
class SegmentCosts {
public:
    SegmentCosts(std::span<const double> s, std::span<const double> v) : s_(s), v_(v) {
        const std::size_t m = s.size();
        sx_.assign(m + 1, 0.0);
        sy_.assign(m + 1, 0.0);
        sxx_.assign(m + 1, 0.0);
        sxy_.assign(m + 1, 0.0);
        syy_.assign(m + 1, 0.0);
        // Center coordinates to keep the normal equations well conditioned.
        cx_ = std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(m);
        cy_ = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(m);
        for (std::size_t i = 0; i < m; ++i) {
            const double x = s[i] - cx_;
            const double y = v[i] - cy_;
            sx_[i + 1] = sx_[i] + x;
            sy_[i + 1] = sy_[i] + y;
            sxx_[i + 1] = sxx_[i] + x * x;
            sxy_[i + 1] = sxy_[i] + x * y;
            syy_[i + 1] = syy_[i] + y * y;
        }
    }

    /// Least-squares line through points i..j inclusive.
    LineFit fit(std::size_t i, std::size_t j) const {
        const double n = static_cast<double>(j - i + 1);
        const double sx = sx_[j + 1] - sx_[i];
        const double sy = sy_[j + 1] - sy_[i];
        const double sxx = sxx_[j + 1] - sxx_[i];
        const double sxy = sxy_[j + 1] - sxy_[i];
        const double syy = syy_[j + 1] - syy_[i];
        const double vxx = sxx - sx * sx / n;
        const double vxy = sxy - sx * sy / n;
        const double vyy = syy - sy * sy / n;
        LineFit f;
        f.slope = vxx > 0.0 ? vxy / vxx : 0.0;
        const double b_centered = (sy - f.slope * sx) / n;
        f.intercept = b_centered + cy_ - f.slope * cx_;
        f.sse = std::max(0.0, vyy - f.slope * vxy);
        return f;
    }

private:
    std::span<const double> s_;
    std::span<const double> v_;
    double cx_ = 0.0;
    double cy_ = 0.0;
    std::vector<double> sx_, sy_, sxx_, sxy_, syy_;
};

}  // namespace

double resolution(const LyapunovEstimate& est) {
    return 3.0 * est.error() + 1.0 / static_cast<double>(std::max<std::size_t>(est.n, 1));
}

std::vector<double> linear_grid(double lo, double hi, std::size_t points) {
    if (points < 2) throw InvalidSpec("grid needs at least two points");
    std::vector<double> g(points);
    const double step = (hi - lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) g[i] = lo + step * static_cast<double>(i);
    g.back() = hi;
    return g;
}

LyapunovProfile lyapunov_profile(const CocycleSpec& spec, std::span<const double> s_grid,
                                 const EstimatorParams& params) {
    for (std::size_t i = 1; i < s_grid.size(); ++i) {
        if (!(s_grid[i] > s_grid[i - 1])) throw InvalidSpec("profile grid must be strictly increasing");
    }
    LyapunovProfile profile;
    profile.spec_template = spec;
    profile.params = params;
    profile.points.reserve(s_grid.size());
    for (double s : s_grid) {
        if (spec.kind == CocycleKind::BTilde && std::abs(s) < 1e-12) throw RadiusOne();
        profile.points.push_back({s, at_s(spec, s, params)});
    }
    return profile;
}

AccelerationEstimate acceleration_at(const CocycleSpec& spec, double rho, double h,
                                     const EstimatorParams& params) {
    if (!(h > 0.0)) throw InvalidSpec("finite-difference step must be positive");
    if (!(rho > 0.0)) throw InvalidSpec("rho must be positive");
    const double s = std::log(rho);
    check_side(spec, s - h, s);

    const double at = at_s(spec, s, params).value;
    const double left = at_s(spec, s - h, params).value;
    const double left_half = at_s(spec, s - 0.5 * h, params).value;
    const double omega_h = -(at - left) / h;
    const double omega_half = -(at - left_half) / (0.5 * h);
    if (std::abs(omega_h - omega_half) > 0.02) {
        return make_estimate(2.0 * omega_half - omega_h, 0.5 * h);
    }
    return make_estimate(omega_h, h);
}

QuantizationReport quantization_check(std::span<const AccelerationEstimate> estimates, double tol) {
    if (!(tol > 0.0 && tol < 0.5)) throw InvalidSpec("quantization tolerance must lie in (0, 0.5)");
    QuantizationReport r;
    r.tol = tol;
    for (std::size_t i = 0; i < estimates.size(); ++i) {
        if (!(estimates[i].distance <= tol)) r.failures.push_back(i);
    }
    r.pass = r.failures.empty();
    return r;
}

AffineFit piecewise_affine_fit(std::span<const double> s, std::span<const double> values, double penalty) {
    const std::size_t m = s.size();
    if (m != values.size()) throw InvalidSpec("fit: s and values differ in length");
    if (m < 5) throw InvalidSpec("piecewise affine fit needs at least 5 points");
    constexpr std::size_t kMinPoints = 3;

    const SegmentCosts costs(s, values);
    const double inf = std::numeric_limits<double>::infinity();
    // best[j]: optimal cost of covering points 0..j with segments ending at j.
    std::vector<double> best(m, inf);
    std::vector<std::size_t> from(m, 0);
    for (std::size_t j = kMinPoints - 1; j < m; ++j) {
        best[j] = costs.fit(0, j).sse + penalty;
        from[j] = 0;
        for (std::size_t i = kMinPoints - 1; i + kMinPoints - 1 <= j; ++i) {
            if (best[i] == inf) continue;
            const double c = best[i] + costs.fit(i, j).sse + penalty;
            if (c < best[j]) {
                best[j] = c;
                from[j] = i;
            }
        }
    }

    std::vector<std::size_t> bounds{m - 1};
    for (std::size_t j = m - 1; j != 0;) {
        j = from[j];
        bounds.push_back(j);
    }
    std::reverse(bounds.begin(), bounds.end());

    AffineFit fit;
    fit.penalty = penalty;
    fit.segment_bounds = bounds;
    for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
        const LineFit f = costs.fit(bounds[k], bounds[k + 1]);
        fit.slopes.push_back(f.slope);
        fit.intercepts.push_back(f.intercept);
        for (std::size_t i = bounds[k]; i <= bounds[k + 1]; ++i) {
            fit.max_residual = std::max(fit.max_residual, std::abs(values[i] - (f.slope * s[i] + f.intercept)));
        }
    }
    for (std::size_t k = 1; k + 1 < bounds.size(); ++k) {
        const std::size_t j = bounds[k];
        double b = s[j];
        const double dslope = fit.slopes[k] - fit.slopes[k - 1];
        if (dslope != 0.0) {
            const double x = (fit.intercepts[k - 1] - fit.intercepts[k]) / dslope;
            if (x >= s[j - 1] && x <= s[j + 1]) b = x;
        }
        fit.breakpoints.push_back(b);
    }
    return fit;
}

double default_fit_penalty(const LyapunovProfile& profile) {
    if (profile.points.empty()) return 0.0;
    double worst = 0.0;
    for (const auto& p : profile.points) worst = std::max(worst, resolution(p.estimate));
    const double m = static_cast<double>(profile.points.size());
    return 2.0 * worst * worst * std::log(m);
}

AffineFit piecewise_affine_fit(const LyapunovProfile& profile, std::optional<double> penalty) {
    std::vector<double> s;
    std::vector<double> v;
    for (const auto& p : profile.points) {
        s.push_back(p.s);
        v.push_back(p.estimate.value);
    }
    return piecewise_affine_fit(s, v, penalty.value_or(default_fit_penalty(profile)));
}

std::string_view to_string(Regularity r) { return r == Regularity::Regular ? "Regular" : "NotRegular"; }

RegularityReport regularity_check(const CocycleSpec& spec, double rho, double h,
                                  const EstimatorParams& params) {
    if (!(h > 0.0)) throw InvalidSpec("finite-difference step must be positive");
    const double s = std::log(rho);
    check_side(spec, s - h, s);
    check_side(spec, s, s + h);

    const LyapunovEstimate left = at_s(spec, s - h, params);
    const LyapunovEstimate center = at_s(spec, s, params);
    const LyapunovEstimate right = at_s(spec, s + h, params);

    RegularityReport r;
    r.center = center;
    r.left_slope = (center.value - left.value) / h;
    r.right_slope = (right.value - center.value) / h;
    const double slope_error = (left.error() + 2.0 * center.error() + right.error()) / h;
    r.tolerance = 2.0 * slope_error;
    r.verdict = std::abs(r.right_slope - r.left_slope) <= r.tolerance ? Regularity::Regular
                                                                      : Regularity::NotRegular;
    return r;
}

std::string_view to_string(UhVerdict v) {
    switch (v) {
        case UhVerdict::UH: return "UH";
        case UhVerdict::NotUH: return "NotUH";
        case UhVerdict::Undetermined: return "Undetermined";
    }
    return "Undetermined";
}

UhReport uh_classify(const CocycleSpec& spec, double rho, double h, const EstimatorParams& params) {
    if (!spec.unimodular()) {
        throw NotUnimodular("uniform hyperbolicity is classified only for det-1 cocycles, got " +
                            std::string(to_string(spec.kind)));
    }
    UhReport r;
    r.estimate = at_s(spec, std::log(rho), params);
    if (r.estimate.value <= resolution(r.estimate)) {
        r.verdict = UhVerdict::NotUH;
        return r;
    }
    r.regularity = regularity_check(spec, rho, h, params);
    r.verdict = r.regularity.verdict == Regularity::Regular ? UhVerdict::UH : UhVerdict::Undetermined;
    return r;
}

std::string_view to_string(Regime r) {
    switch (r) {
        case Regime::Supercritical: return "Supercritical";
        case Regime::SubcriticalLike: return "SubcriticalLike";
        case Regime::Unresolved: return "Unresolved";
    }
    return "Unresolved";
}

RegimeReport regime_classify(const CocycleSpec& schrodinger, double energy, double band_eps,
                             const EstimatorParams& params, std::size_t band_points) {
    if (schrodinger.kind != CocycleKind::Schrodinger) {
        throw InvalidSpec("regime classification needs a Schrodinger cocycle");
    }
    if (!(band_eps > 0.0)) throw InvalidSpec("band width must be positive");
    CocycleSpec spec = schrodinger;
    spec.energy = energy;

    RegimeReport r;
    r.on_circle = at_s(spec, 0.0, params);
    if (r.on_circle.value > resolution(r.on_circle)) {
        r.regime = Regime::Supercritical;
        r.max_band_value = r.on_circle.value;
        return r;
    }
    bool within = true;
    r.max_band_value = r.on_circle.value;
    for (double s : linear_grid(-band_eps, band_eps, std::max<std::size_t>(band_points, 2))) {
        const LyapunovEstimate e = at_s(spec, s, params);
        r.max_band_value = std::max(r.max_band_value, e.value);
        if (e.value > resolution(e)) within = false;
    }
    r.regime = within ? Regime::SubcriticalLike : Regime::Unresolved;
    return r;
}

}  // namespace jonq
