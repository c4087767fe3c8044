#include "jonq/cocycle.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <thread>

#include "jonq/errors.hpp"

namespace jonq {

namespace {

constexpr std::array<std::pair<CocycleKind, std::string_view>, 6> kKindNames{{
    {CocycleKind::JonquieresA, "JonquieresA"},
    {CocycleKind::JonquieresB, "JonquieresB"},
    {CocycleKind::BTilde, "BTilde"},
    {CocycleKind::Schrodinger, "Schrodinger"},
    {CocycleKind::DiagonalPower, "DiagonalPower"},
    {CocycleKind::Constant, "Constant"},
}};

constexpr double kGolden = 0.6180339887498949;
constexpr double kMinGeneratorNorm = 1e-150;
constexpr double kMaxGeneratorNorm = 1e150;

bool uses_alpha(CocycleKind k) {
    return k == CocycleKind::JonquieresA || k == CocycleKind::JonquieresB || k == CocycleKind::BTilde;
}

bool is_radius_one(double rho) { return std::abs(rho - 1.0) < 1e-12; }

Complex circle_value(double rho, double theta) { return std::polar(rho, kTwoPi * theta); }

Complex branch_at(Complex alpha, Complex y, double rho) {
    if (rho < 1.0) return std::sqrt(alpha) * std::sqrt(1.0 - y * y / alpha);
    return Complex(0.0, 1.0) * y * std::sqrt(1.0 - alpha / (y * y));
}

void check_generator_norm(const Mat2& a) {
    const double g = frobenius_norm(a);
    if (!(g >= kMinGeneratorNorm && g <= kMaxGeneratorNorm)) {
        throw Overflow("generator norm " + std::to_string(g) + " outside [1e-150, 1e150]");
    }
}

double log_norm(const Mat2& p, NormKind kind) {
    return std::log(kind == NormKind::Frobenius ? frobenius_norm(p) : operator_norm(p));
}

struct SampleResult {
    double full = 0.0;
    double half = 0.0;
};

SampleResult run_sample(const CocycleSpec& spec, double theta, std::size_t n, NormKind norm) {
    const std::size_t half = n / 2;
    Mat2 p = Mat2::identity() / Complex(std::sqrt(2.0));
    double s = std::log(std::sqrt(2.0));
    SampleResult out;
    for (std::size_t k = 0; k < n; ++k) {
        const Mat2 a = evaluate_generator(spec, theta);
        check_generator_norm(a);
        p = a * p;
        const double f = frobenius_norm(p);
        p /= Complex(f);
        s += std::log(f);
        theta = frac(theta + spec.freq);
        if (k + 1 == half) out.half = (s + log_norm(p, norm)) / static_cast<double>(half);
    }
    out.full = (s + log_norm(p, norm)) / static_cast<double>(n);
    return out;
}

}  // namespace

std::string_view to_string(CocycleKind kind) {
    for (const auto& [k, name] : kKindNames) {
        if (k == kind) return name;
    }
    return "unknown";
}

CocycleKind parse_cocycle_kind(std::string_view name) {
    for (const auto& [k, n] : kKindNames) {
        if (n == name) return k;
    }
    throw InvalidSpec("unknown cocycle kind '" + std::string(name) + "'");
}

Complex TrigPotential::operator()(Complex y) const {
    Complex v = constant;
    Complex yk = 1.0;
    Complex inv_yk = 1.0;
    const Complex inv_y = 1.0 / y;
    const std::size_t terms = std::max(cos_coeffs.size(), sin_coeffs.size());
    for (std::size_t k = 0; k < terms; ++k) {
        yk *= y;
        inv_yk *= inv_y;
        if (k < cos_coeffs.size()) v += cos_coeffs[k] * 0.5 * (yk + inv_yk);
        if (k < sin_coeffs.size()) v += sin_coeffs[k] * (yk - inv_yk) / Complex(0.0, 2.0);
    }
    return v;
}

CocycleSpec CocycleSpec::jonquieres_a(Complex alpha, double rho, double freq) {
    CocycleSpec s;
    s.kind = CocycleKind::JonquieresA;
    s.alpha = alpha;
    s.rho = rho;
    s.freq = freq;
    return s;
}

CocycleSpec CocycleSpec::jonquieres_b(Complex alpha, double rho, double freq) {
    CocycleSpec s = jonquieres_a(alpha, rho, freq);
    s.kind = CocycleKind::JonquieresB;
    return s;
}

CocycleSpec CocycleSpec::b_tilde(Complex alpha, double rho, double freq) {
    CocycleSpec s = jonquieres_a(alpha, rho, freq);
    s.kind = CocycleKind::BTilde;
    return s;
}

CocycleSpec CocycleSpec::schrodinger(double energy, TrigPotential v, double freq, double rho) {
    CocycleSpec s;
    s.kind = CocycleKind::Schrodinger;
    s.energy = energy;
    s.potential = std::move(v);
    s.freq = freq;
    s.rho = rho;
    return s;
}

CocycleSpec CocycleSpec::diagonal_power(double rho, double freq) {
    CocycleSpec s;
    s.kind = CocycleKind::DiagonalPower;
    s.rho = rho;
    s.freq = freq;
    return s;
}

CocycleSpec CocycleSpec::constant_matrix(const Mat2& m, double freq) {
    CocycleSpec s;
    s.kind = CocycleKind::Constant;
    s.constant = m;
    s.freq = freq;
    return s;
}

bool CocycleSpec::unimodular() const {
    switch (kind) {
        case CocycleKind::BTilde:
        case CocycleKind::Schrodinger:
        case CocycleKind::DiagonalPower:
            return true;
        case CocycleKind::Constant:
            return std::abs(constant.det() - 1.0) < 1e-12;
        default:
            return false;
    }
}

void validate(const CocycleSpec& spec) {
    if (uses_alpha(spec.kind) && std::abs(std::abs(spec.alpha) - 1.0) > 1e-12) {
        throw InvalidSpec("|alpha| must be 1");
    }
    if (!(spec.rho > 0.0) || !std::isfinite(spec.rho)) throw InvalidSpec("rho must be positive");
    if (!(spec.freq > 0.0 && spec.freq < 1.0)) throw InvalidSpec("freq must lie in (0, 1)");
    if (near_rational(spec.freq)) {
        throw InvalidSpec("freq is resonant (rational with denominator <= 64)");
    }
    if (spec.kind == CocycleKind::BTilde && is_radius_one(spec.rho)) throw RadiusOne();
    if (spec.kind == CocycleKind::Constant && frobenius_norm(spec.constant) == 0.0) {
        throw InvalidSpec("constant generator must be nonzero");
    }
}

Mat2 evaluate_generator(const CocycleSpec& spec, double theta) {
    switch (spec.kind) {
        case CocycleKind::JonquieresA: {
            const Complex y = circle_value(spec.rho, theta);
            return {spec.alpha, y, 1.0, 1.0};
        }
        case CocycleKind::JonquieresB: {
            const Complex y = circle_value(spec.rho, theta);
            return {spec.alpha, y * y, 1.0, 1.0};
        }
        case CocycleKind::BTilde: {
            const Complex y = circle_value(spec.rho, theta);
            const Mat2 b{spec.alpha, y * y, 1.0, 1.0};
            return b / branch_at(spec.alpha, y, spec.rho);
        }
        case CocycleKind::Schrodinger: {
            const Complex y = circle_value(spec.rho, theta);
            return {spec.energy - spec.potential(y), -1.0, 1.0, 0.0};
        }
        case CocycleKind::DiagonalPower: {
            const Complex y = circle_value(spec.rho, theta);
            return Mat2::diagonal(y, 1.0 / y);
        }
        case CocycleKind::Constant:
            return spec.constant;
    }
    return spec.constant;
}

Complex sqrt_branch(const CocycleSpec& spec, double theta) {
    if (is_radius_one(spec.rho)) throw RadiusOne();
    return branch_at(spec.alpha, circle_value(spec.rho, theta), spec.rho);
}

BranchReport verify_sqrt_branch(const CocycleSpec& spec, std::size_t min_steps) {
    if (is_radius_one(spec.rho)) throw RadiusOne();
    constexpr std::size_t kMaxSteps = std::size_t{1} << 22;

    for (std::size_t steps = std::max<std::size_t>(min_steps, 16); steps <= kMaxSteps; steps *= 2) {
        BranchReport report;
        report.steps = steps;
        Complex prev_s = branch_at(spec.alpha, circle_value(spec.rho, 0.0), spec.rho);
        const Complex s0 = prev_s;
        Complex prev_w = spec.alpha - circle_value(spec.rho, 0.0) * circle_value(spec.rho, 0.0);
        double winding = 0.0;
        bool resolved = true;
        for (std::size_t k = 1; k <= steps; ++k) {
            const double theta = static_cast<double>(k) / static_cast<double>(steps);
            const Complex y = circle_value(spec.rho, theta);
            const Complex w = spec.alpha - y * y;
            winding += std::arg(w / prev_w);
            prev_w = w;
            Complex s = std::sqrt(w);
            if (std::abs(-s - prev_s) < std::abs(s - prev_s)) s = -s;
            if (std::abs(s - prev_s) > 0.25 * std::min(std::abs(s), std::abs(prev_s))) {
                resolved = false;
                break;
            }
            const Complex closed = branch_at(spec.alpha, y, spec.rho);
            report.max_mismatch = std::max(report.max_mismatch, std::abs(s - closed) / std::abs(closed));
            prev_s = s;
        }
        if (!resolved) continue;
        report.closure_error = std::abs(prev_s - s0);
        report.winding_number = static_cast<int>(std::lround(winding / kTwoPi));
        if (report.closure_error > 1e-8) {
            throw BranchFailure("square-root branch does not close (error " +
                                std::to_string(report.closure_error) + ")");
        }
        if (report.max_mismatch > 1e-8) {
            throw BranchFailure("tracked square-root branch disagrees with the closed form");
        }
        return report;
    }
    throw BranchFailure("square-root branch unresolved at 2^22 steps; rho too close to 1");
}

NormalizedProduct iterate(const CocycleSpec& spec, double theta, std::size_t n) {
    NormalizedProduct r;
    r.product = Mat2::identity() / Complex(std::sqrt(2.0));
    r.log_norm_sum = std::log(std::sqrt(2.0));
    for (std::size_t k = 0; k < n; ++k) {
        const Mat2 a = evaluate_generator(spec, theta);
        check_generator_norm(a);
        r.product = a * r.product;
        const double f = frobenius_norm(r.product);
        r.product /= Complex(f);
        r.log_norm_sum += std::log(f);
        theta = frac(theta + spec.freq);
    }
    return r;
}

NormalizedProduct inverse_iterate(const CocycleSpec& spec, double theta, std::size_t n) {
    NormalizedProduct r;
    r.product = Mat2::identity() / Complex(std::sqrt(2.0));
    r.log_norm_sum = std::log(std::sqrt(2.0));
    for (std::size_t k = 1; k <= n; ++k) {
        theta = frac(theta - spec.freq);
        const Mat2 a = evaluate_generator(spec, theta);
        check_generator_norm(a);
        const double scale = frobenius_norm(a);
        if (std::abs(a.det()) <= 1e-15 * scale * scale) throw SingularFactor(k);
        r.product = a.inverse() * r.product;
        const double f = frobenius_norm(r.product);
        r.product /= Complex(f);
        r.log_norm_sum += std::log(f);
    }
    return r;
}

std::vector<double> phase_samples(std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const double offset = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    std::vector<double> out(samples);
    for (std::size_t j = 0; j < samples; ++j) {
        out[j] = frac(offset + static_cast<double>(j) * kGolden);
    }
    return out;
}

LyapunovEstimate lyapunov(const CocycleSpec& spec, std::size_t n, std::size_t samples,
                          std::uint64_t seed, const LyapunovOptions& options) {
    if (n < 2) throw InvalidSpec("lyapunov requires n >= 2");
    if (samples < 1) throw InvalidSpec("lyapunov requires at least one phase sample");
    validate(spec);
    if (spec.kind == CocycleKind::BTilde) verify_sqrt_branch(spec);

    const std::vector<double> phases = phase_samples(samples, seed);
    std::vector<SampleResult> results(samples);

    const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(samples)));
    if (threads == 1) {
        for (std::size_t j = 0; j < samples; ++j) results[j] = run_sample(spec, phases[j], n, options.norm);
    } else {
        std::vector<std::exception_ptr> errors(threads);
        {
            std::vector<std::jthread> pool;
            pool.reserve(threads);
            for (unsigned t = 0; t < threads; ++t) {
                pool.emplace_back([&, t] {
                    try {
                        for (std::size_t j = t; j < samples; j += threads) {
                            results[j] = run_sample(spec, phases[j], n, options.norm);
                        }
                    } catch (...) {
                        errors[t] = std::current_exception();
                    }
                });
            }
        }
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }

    std::vector<double> full(samples);
    std::vector<double> half(samples);
    for (std::size_t j = 0; j < samples; ++j) {
        full[j] = results[j].full;
        half[j] = results[j].half;
    }
    const double m = static_cast<double>(samples);
    LyapunovEstimate est;
    est.n = n;
    est.samples = samples;
    est.value = pairwise_sum(full.begin(), full.end()) / m;
    est.half_n_value = pairwise_sum(half.begin(), half.end()) / m;
    if (samples > 1) {
        std::vector<double> sq(samples);
        for (std::size_t j = 0; j < samples; ++j) sq[j] = (full[j] - est.value) * (full[j] - est.value);
        const double var = pairwise_sum(sq.begin(), sq.end()) / (m - 1.0);
        est.std_error = std::sqrt(var / m);
    }
    return est;
}

Mat2 two_step_limit_matrix(Complex alpha, double freq) {
    const Complex g = unit_phase(freq);
    return Mat2{g * g, alpha + g * g, 0.0, 1.0} * (-1.0 / g);
}

TwoStepCheck two_step_limit_check(Complex alpha, double freq, double rho, std::size_t theta_samples) {
    if (rho < 10.0) throw InvalidSpec("two-step limit check requires rho >= 10");
    if (theta_samples == 0) throw InvalidSpec("two-step limit check needs theta samples");
    const CocycleSpec spec = CocycleSpec::b_tilde(alpha, rho, freq);
    validate(spec);
    TwoStepCheck out;
    out.limit = two_step_limit_matrix(alpha, freq);
    out.max_deviation = 0.0;
    Mat2 sum{0.0, 0.0, 0.0, 0.0};
    for (std::size_t j = 0; j < theta_samples; ++j) {
        const double theta = static_cast<double>(j) / static_cast<double>(theta_samples);
        const Mat2 two = evaluate_generator(spec, frac(theta + freq)) * evaluate_generator(spec, theta);
        out.max_deviation = std::max(out.max_deviation, max_abs_diff(two, out.limit));
        sum = sum + two;
    }
    out.average = sum / Complex(static_cast<double>(theta_samples));
    return out;
}

}  // namespace jonq
