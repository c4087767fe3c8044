#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <string>

#include "jonq/jonquieres.hpp"
#include "jonq/power_series.hpp"

namespace jonq {

__extension__ typedef __float128 quad;

/// Truncated coefficients of psi(x, y) = ((a(y) x + b(y))/(c(y) x + 1), y),
/// the map with G o psi = psi o (x/beta, y/beta^2).
template <class T>
struct BasicConjugacyCoeffs {
    using series = BasicPowerSeries<std::complex<T>>;

    series a;
    series b;
    series c;
    MapParams params;
    double divisor_floor_hit = 0.0;  ///< smallest |divisor| met by the solve

    std::size_t order() const { return a.order(); }
};

using ConjugacyCoeffs = BasicConjugacyCoeffs<double>;
using QuadConjugacyCoeffs = BasicConjugacyCoeffs<quad>;

/// Order nu of each equation is linear in one unknown: b_nu in the third,
/// a_nu in the second, c_nu in the first. The unknown's coefficient is read
/// off by substituting the truncated series (working truncation 2N) with the
/// unknown set to 0 and to 1, and cross-checked against
///   b_nu: 1 - beta^{1-2nu}
///   a_nu: beta^{1-2nu} - beta,      coupling to b_nu: (alpha+beta) a0 (1 + beta^{1-2nu}) + c0 (beta^{2-2nu} - 1)
///   c_nu: a0 (beta - beta^{-2nu}),  coupling to a_nu: (alpha+beta) a0 (1 + beta^{-2nu}) + c0 (beta^{1-2nu} - 1)
/// A disagreement above 1e-9 throws DomainError; a divisor below
/// divisor_floor throws SmallDivisor.
template <class T>
BasicConjugacyCoeffs<T> solve_coefficients_as(const MapParams& p, std::size_t N, double divisor_floor = 1e-8);

ConjugacyCoeffs solve_coefficients(const MapParams& p, std::size_t N, double divisor_floor = 1e-8);
QuadConjugacyCoeffs solve_coefficients_quad(const MapParams& p, std::size_t N, double divisor_floor = 1e-8);

struct ResidualNorms {
    double r1 = 0.0;
    double r2 = 0.0;
    double r3 = 0.0;

    double max() const { return std::max(r1, std::max(r2, r3)); }
};

/// Max coefficient modulus over orders 0..N of each of the three equations
/// after substituting the series, evaluated at truncation 2N.
template <class T>
ResidualNorms residual_norms(const BasicConjugacyCoeffs<T>& coeffs);

/// The three equations as series (truncation of the input), for inspection.
template <class T>
std::array<typename BasicConjugacyCoeffs<T>::series, 3> equation_series(const BasicConjugacyCoeffs<T>& coeffs);

/// psi evaluated through the truncated series at a finite point.
template <class T>
std::complex<T> psi_x(const BasicConjugacyCoeffs<T>& coeffs, std::complex<T> x, std::complex<T> y);

/// Max chordal distance between the x-parts of G(psi(x, y)) and
/// psi(x/beta, y/beta^2) over sample_count points with |y| = y_radius and
/// |x| = x_radius (deterministic angles).
template <class T>
double verify_conjugacy_numeric(const BasicConjugacyCoeffs<T>& coeffs, std::size_t sample_count, double y_radius,
                                double x_radius);

/// Same check restricted to the fiber y = 0.
template <class T>
double verify_zero_fiber(const BasicConjugacyCoeffs<T>& coeffs, std::size_t sample_count, double x_radius);

/// exp(-slope) of the least-squares line through (nu, ln m_nu) over the top
/// half of orders, m_nu = max(|a_nu|, |b_nu|, |c_nu|). Requires N >= 8.
double estimate_radius(const ConjugacyCoeffs& coeffs);
double estimate_radius(std::span<const double> magnitudes);

/// {"alpha":[re,im], "beta":[re,im], "N":int, "a":[[re,im],...], "b":..., "c":..., "divisor_floor_hit":real}
std::string coefficients_json(const ConjugacyCoeffs& coeffs);

}  // namespace jonq
