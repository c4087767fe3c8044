#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "jonq/polynomial.hpp"

namespace jonq {

/// Rational self-map (P0 : P1 : P2) of P^2 with integer coefficients, the
/// components homogeneous of one degree and without common factor.
struct HomogeneousMap {
    std::array<Poly3, 3> components;
    int degree = 0;
    /// (alpha, beta) substituted into a parametrized family, when any.
    std::optional<std::pair<mpq_class, mpq_class>> specialization;
};

/// Throws std::logic_error unless the components are nonzero, homogeneous of
/// one degree and coprime.
void check_invariants(const HomogeneousMap& F);

/// ((alpha x + y) z : beta y (x + z) : z (x + z)) with rational alpha, beta,
/// denominators cleared. Throws DomainError for alpha = 0 or beta = 0.
HomogeneousMap specialize_f(const mpq_class& alpha, const mpq_class& beta);

HomogeneousMap identity_map();
/// (x + y : y : z)
HomogeneousMap linear_map();
/// (y z : x z : x y)
HomogeneousMap standard_involution();
/// (y z : y^2 + alpha x z : z^2); a Henon-type map of exponential growth.
HomogeneousMap henon_map(const mpq_class& alpha);

/// Components divided by their gcd, content removed, leading coefficient of
/// the first nonzero component made positive.
HomogeneousMap reduce(std::array<Poly3, 3> components);

/// F o G with common factor removal. Throws ZeroComponent when a component
/// vanishes identically, Overflow when a coefficient exceeds 10^6 digits.
HomogeneousMap compose(const HomogeneousMap& F, const HomogeneousMap& G);

/// deg F, deg F^2, ..., deg F^N for a single map.
std::vector<int> degree_sequence(const HomogeneousMap& F, int N);

/// A family parametrized by (alpha, beta); maps without parameters ignore them.
using MapFamily = std::function<HomogeneousMap(const mpq_class&, const mpq_class&)>;

/// "jonquieres", "linear", "involution", "identity", "henon". Throws InvalidSpec otherwise.
MapFamily named_family(std::string_view name);

struct DegreeSequence {
    std::vector<int> degrees;
    std::array<std::pair<mpq_class, mpq_class>, 2> specializations;
    int attempts = 0;
};

/// Degrees of F^n for n = 1..N (N <= 12) computed at two specializations of
/// (alpha, beta), integers drawn from {2..10^4}. When forced is set it
/// replaces the first specialization. On disagreement the random ones are
/// redrawn; after three mismatches SpecializationMismatch is thrown.
DegreeSequence family_degree_sequence(const MapFamily& family, int N, std::uint64_t seed,
                                      const std::optional<std::pair<mpq_class, mpq_class>>& forced = std::nullopt);

enum class GrowthClass { Bounded, Linear, Quadratic, Exponential };
std::string_view to_string(GrowthClass g);

struct GrowthReport {
    std::vector<int> degrees;
    GrowthClass growth_class = GrowthClass::Bounded;
    double lambda_estimate = 1.0;  ///< deg(F^N)^{1/N}
    double lambda_half = 1.0;      ///< deg(F^{N/2})^{2/N}
    double linear_slope = 0.0;     ///< least-squares slope of deg vs n over the top half
    double entropy_bound = 0.0;    ///< log(lambda_estimate), an upper bound for h_top
    bool low_confidence = false;
};

/// Requires at least six degrees.
///   Bounded      the top half never exceeds the maximum of the bottom half
///   Exponential  every ratio deg(n+1)/deg(n) over the top half is above 1.25
///                and the last log-ratio keeps at least 80% of the first
///   Quadratic    the first differences grow, with least-squares slope > 0.25 over the top half
///   Linear       otherwise
GrowthReport growth_classify(const std::vector<int>& degrees);

/// True iff every component vanishes at the homogeneous point, exactly.
std::vector<bool> base_point_check(const HomogeneousMap& F, const std::vector<std::array<mpq_class, 3>>& points);

/// (1:0:0), (0:1:0), (-1:alpha:1) for the specialized alpha of F.
std::vector<std::array<mpq_class, 3>> jonquieres_base_points(const mpq_class& alpha);

std::string growth_report_json(const GrowthReport& report);
/// Header "n,degree" then one row per n.
std::string growth_report_csv(const GrowthReport& report);

}  // namespace jonq
