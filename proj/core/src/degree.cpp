#include "jonq/degree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "jonq/errors.hpp"

namespace jonq {

namespace {

constexpr std::size_t kMaxDigits = 1000000;
constexpr int kMaxIterates = 12;
constexpr int kMaxAttempts = 3;

Poly3 mono(const mpz_class& c, int i, int j, int k) { return Poly3::monomial(c, i, j, k); }

double ls_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double m = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double den = m * sxx - sx * sx;
    return den == 0.0 ? 0.0 : (m * sxy - sx * sy) / den;
}

}  // namespace

void check_invariants(const HomogeneousMap& F) {
    for (const auto& c : F.components) {
        if (c.is_zero()) throw std::logic_error("map has a zero component");
        if (!c.is_homogeneous() || c.degree() != F.degree) {
            throw std::logic_error("map components are not homogeneous of degree " + std::to_string(F.degree));
        }
    }
    const Poly3 g = gcd_homogeneous({F.components[0], F.components[1], F.components[2]});
    if (g.degree() != 0) throw std::logic_error("map components share the factor " + g.to_string());
}

HomogeneousMap reduce(std::array<Poly3, 3> components) {
    for (const auto& c : components) {
        if (c.is_zero()) throw ZeroComponent("a component vanishes identically");
    }
    const Poly3 g = gcd_homogeneous({components[0], components[1], components[2]});
    if (g.degree() > 0) {
        for (auto& c : components) c = divexact(c, g);
    }
    mpz_class content = 0;
    for (const auto& c : components) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.content().get_mpz_t());
    if (components[0].terms().begin()->second < 0) content = -content;
    HomogeneousMap out;
    for (std::size_t i = 0; i < 3; ++i) out.components[i] = components[i].div_scalar_exact(content);
    out.degree = out.components[0].degree();
    return out;
}

HomogeneousMap specialize_f(const mpq_class& alpha, const mpq_class& beta) {
    if (alpha == 0 || beta == 0) throw DomainError("degenerate specialization: alpha and beta must be nonzero");
    const mpz_class p = alpha.get_num();
    const mpz_class q = alpha.get_den();
    const mpz_class r = beta.get_num();
    const mpz_class s = beta.get_den();
    // Multiply through by q s: ((p x + q y) z s : r q y (x + z) : q s z (x + z)).
    const Poly3 x = Poly3::x();
    const Poly3 y = Poly3::y();
    const Poly3 z = Poly3::z();
    std::array<Poly3, 3> c{
        (x * p + y * q) * z * s,
        y * (x + z) * (r * q),
        z * (x + z) * (q * s),
    };
    HomogeneousMap F = reduce(std::move(c));
    F.specialization = std::make_pair(alpha, beta);
    return F;
}

HomogeneousMap identity_map() { return reduce({Poly3::x(), Poly3::y(), Poly3::z()}); }

HomogeneousMap linear_map() { return reduce({Poly3::x() + Poly3::y(), Poly3::y(), Poly3::z()}); }

HomogeneousMap standard_involution() { return reduce({mono(1, 0, 1, 1), mono(1, 1, 0, 1), mono(1, 1, 1, 0)}); }

HomogeneousMap henon_map(const mpq_class& alpha) {
    const mpz_class p = alpha.get_num();
    const mpz_class q = alpha.get_den();
    HomogeneousMap F = reduce({mono(q, 0, 1, 1), mono(q, 0, 2, 0) + mono(p, 1, 0, 1), mono(q, 0, 0, 2)});
    F.specialization = std::make_pair(alpha, mpq_class(1));
    return F;
}

HomogeneousMap compose(const HomogeneousMap& F, const HomogeneousMap& G) {
    std::array<Poly3, 3> raw;
    for (std::size_t i = 0; i < 3; ++i) {
        raw[i] = F.components[i].substitute(G.components);
        if (raw[i].is_zero()) throw ZeroComponent("component " + std::to_string(i) + " vanishes after composition");
    }
    HomogeneousMap out = reduce(std::move(raw));
    for (const auto& c : out.components) {
        if (c.max_digits() > kMaxDigits) throw Overflow("coefficient size exceeds 10^6 digits");
    }
    out.specialization = F.specialization ? F.specialization : G.specialization;
    return out;
}

std::vector<int> degree_sequence(const HomogeneousMap& F, int N) {
    if (N < 1 || N > kMaxIterates) throw InvalidSpec("degree sequence length must lie in [1, 12]");
    std::vector<int> degrees{F.degree};
    HomogeneousMap it = F;
    for (int n = 2; n <= N; ++n) {
        it = compose(F, it);
        degrees.push_back(it.degree);
    }
    return degrees;
}

MapFamily named_family(std::string_view name) {
    if (name == "jonquieres") return [](const mpq_class& a, const mpq_class& b) { return specialize_f(a, b); };
    if (name == "linear") return [](const mpq_class&, const mpq_class&) { return linear_map(); };
    if (name == "identity") return [](const mpq_class&, const mpq_class&) { return identity_map(); };
    if (name == "involution") return [](const mpq_class&, const mpq_class&) { return standard_involution(); };
    if (name == "henon") return [](const mpq_class& a, const mpq_class&) { return henon_map(a); };
    throw InvalidSpec("unknown map family '" + std::string(name) + "'");
}

DegreeSequence family_degree_sequence(const MapFamily& family, int N, std::uint64_t seed,
                                      const std::optional<std::pair<mpq_class, mpq_class>>& forced) {
    if (N < 1 || N > kMaxIterates) throw InvalidSpec("degree sequence length must lie in [1, 12]");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> draw(2, 10000);
    auto random_pair = [&] { return std::make_pair(mpq_class(draw(rng)), mpq_class(draw(rng))); };

    DegreeSequence out;
    std::string last_problem;
    for (int attempt = 1; attempt <= kMaxAttempts; ++attempt) {
        out.attempts = attempt;
        out.specializations[0] = forced ? *forced : random_pair();
        out.specializations[1] = random_pair();
        std::array<std::vector<int>, 2> seqs;
        try {
            for (std::size_t k = 0; k < 2; ++k) {
                const auto& [a, b] = out.specializations[k];
                seqs[k] = degree_sequence(family(a, b), N);
            }
        } catch (const ZeroComponent& e) {
            last_problem = e.what();
            continue;
        }
        if (seqs[0] == seqs[1]) {
            out.degrees = seqs[0];
            return out;
        }
        last_problem = "degree sequences differ between specializations";
    }
    throw SpecializationMismatch(last_problem + " (after " + std::to_string(kMaxAttempts) + " attempts)");
}

std::string_view to_string(GrowthClass g) {
    switch (g) {
        case GrowthClass::Bounded: return "Bounded";
        case GrowthClass::Linear: return "Linear";
        case GrowthClass::Quadratic: return "Quadratic";
        case GrowthClass::Exponential: return "Exponential";
    }
    return "Linear";
}

GrowthReport growth_classify(const std::vector<int>& degrees) {
    if (degrees.size() < 6) throw InvalidSpec("growth classification needs at least six degrees");
    for (int d : degrees) {
        if (d < 1) throw InvalidSpec("degrees must be positive");
    }
    const std::size_t N = degrees.size();
    const std::size_t half = N / 2;

    GrowthReport r;
    r.degrees = degrees;
    r.lambda_estimate = std::pow(static_cast<double>(degrees[N - 1]), 1.0 / static_cast<double>(N));
    r.lambda_half = std::pow(static_cast<double>(degrees[half - 1]), 1.0 / static_cast<double>(half));
    r.entropy_bound = std::log(r.lambda_estimate);

    std::vector<double> ns, ds, dn, diffs;
    for (std::size_t i = half; i < N; ++i) {
        ns.push_back(static_cast<double>(i + 1));
        ds.push_back(static_cast<double>(degrees[i]));
    }
    for (std::size_t i = half; i + 1 < N; ++i) {
        dn.push_back(static_cast<double>(i + 1));
        diffs.push_back(static_cast<double>(degrees[i + 1] - degrees[i]));
    }
    r.linear_slope = ls_slope(ns, ds);

    const int bottom_max = *std::max_element(degrees.begin(), degrees.begin() + static_cast<std::ptrdiff_t>(half));
    const int top_max = *std::max_element(degrees.begin() + static_cast<std::ptrdiff_t>(half), degrees.end());
    double min_ratio = std::numeric_limits<double>::infinity();
    std::vector<double> log_ratios;
    for (std::size_t i = half; i + 1 < N; ++i) {
        const double q = static_cast<double>(degrees[i + 1]) / static_cast<double>(degrees[i]);
        min_ratio = std::min(min_ratio, q);
        log_ratios.push_back(std::log(q));
    }
    const bool ratios_persist = log_ratios.back() >= 0.8 * log_ratios.front();
    const double diff_slope = ls_slope(dn, diffs);

    if (top_max <= bottom_max) {
        r.growth_class = GrowthClass::Bounded;
    } else if (min_ratio > 1.25 && ratios_persist) {
        r.growth_class = GrowthClass::Exponential;
        r.low_confidence = min_ratio < 1.5;
    } else if (diff_slope > 0.25) {
        r.growth_class = GrowthClass::Quadratic;
        r.low_confidence = diff_slope < 0.5;
    } else {
        r.growth_class = GrowthClass::Linear;
        r.low_confidence = r.linear_slope < 0.1;
    }
    return r;
}

std::vector<bool> base_point_check(const HomogeneousMap& F, const std::vector<std::array<mpq_class, 3>>& points) {
    std::vector<bool> out;
    out.reserve(points.size());
    for (const auto& p : points) {
        if (p[0] == 0 && p[1] == 0 && p[2] == 0) throw InvalidSpec("(0:0:0) is not a point of P^2");
        bool all = true;
        for (const auto& c : F.components) all = all && c.evaluate(p[0], p[1], p[2]) == 0;
        out.push_back(all);
    }
    return out;
}

std::vector<std::array<mpq_class, 3>> jonquieres_base_points(const mpq_class& alpha) {
    return {{mpq_class(1), mpq_class(0), mpq_class(0)},
            {mpq_class(0), mpq_class(1), mpq_class(0)},
            {mpq_class(-1), alpha, mpq_class(1)}};
}

std::string growth_report_json(const GrowthReport& report) {
    nlohmann::ordered_json j;
    j["degrees"] = report.degrees;
    j["growth_class"] = std::string(to_string(report.growth_class));
    j["lambda_estimate"] = report.lambda_estimate;
    j["lambda_half"] = report.lambda_half;
    j["linear_slope"] = report.linear_slope;
    j["entropy_bound"] = report.entropy_bound;
    j["low_confidence"] = report.low_confidence;
    return j.dump();
}

std::string growth_report_csv(const GrowthReport& report) {
    std::string out = "n,degree\n";
    for (std::size_t i = 0; i < report.degrees.size(); ++i) {
        out += std::to_string(i + 1) + "," + std::to_string(report.degrees[i]) + "\n";
    }
    return out;
}

}  // namespace jonq
