#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "jonq/cocycle.hpp"

namespace jonq {

/// Estimator settings shared by every radius sweep so that points are
/// comparable (same n, same phases).
struct EstimatorParams {
    std::size_t n = 20000;
    std::size_t samples = 64;
    std::uint64_t seed = 1;
    LyapunovOptions lyapunov{};
};

/// Smallest exponent distinguishable from zero for an estimate: three times
/// its error plus 1/n, the size of ln||A_n||/n for bounded products.
double resolution(const LyapunovEstimate& est);

struct ProfilePoint {
    double s = 0.0;  ///< ln rho
    LyapunovEstimate estimate;
};

/// rho -> L sampled on a grid of s = ln rho.
struct LyapunovProfile {
    std::vector<ProfilePoint> points;
    CocycleSpec spec_template;
    EstimatorParams params;
};

/// `points` equally spaced values from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, std::size_t points);

/// One lyapunov call per grid point with rho = e^s. The grid must be strictly
/// increasing; BTilde grids must avoid s = 0.
LyapunovProfile lyapunov_profile(const CocycleSpec& spec, std::span<const double> s_grid,
                                 const EstimatorParams& params);

/// omega = -(L(s) - L(s - h))/h at s = ln rho. With y = e^{2 pi i z}, the
/// shift z -> z + i eps multiplies the radius by e^{-2 pi eps}, so this
/// one-sided quotient is the eps -> 0+ acceleration.
struct AccelerationEstimate {
    double omega = 0.0;
    long nearest_integer = 0;
    double distance = 0.0;
    double h = 0.0;           ///< finite-difference step actually used
    double left_slope = 0.0;  ///< raw dL/ds from the left (= -omega)
};

/// Richardson refinement (h, h/2) is applied when the two quotients differ
/// by more than 0.02. Throws SideCrossing when [s - h, s] straddles s = 0 for
/// a family with a possible kink on the unit circle.
AccelerationEstimate acceleration_at(const CocycleSpec& spec, double rho, double h,
                                     const EstimatorParams& params);

struct QuantizationReport {
    bool pass = true;
    double tol = 0.0;
    std::vector<std::size_t> failures;  ///< indices into the input
};

QuantizationReport quantization_check(std::span<const AccelerationEstimate> estimates, double tol);

/// Segmented least-squares fit with grid-restricted breakpoints.
struct AffineFit {
    std::vector<double> breakpoints;           ///< s-values where segments meet
    std::vector<double> slopes;                ///< one per segment
    std::vector<double> intercepts;            ///< one per segment
    std::vector<std::size_t> segment_bounds;   ///< grid indices, size = segments + 1
    double max_residual = 0.0;
    double penalty = 0.0;
};

/// Minimizes sum of squared residuals + penalty * (segment count) by dynamic
/// programming. Adjacent segments share their boundary grid point, every
/// segment covers at least three points, and each reported breakpoint is the
/// intersection of the adjacent lines when it falls between the neighbouring
/// grid points (the shared grid point otherwise). Requires >= 5 points.
AffineFit piecewise_affine_fit(std::span<const double> s, std::span<const double> values, double penalty);

/// 2 * max(resolution)^2 * ln(#points).
double default_fit_penalty(const LyapunovProfile& profile);

AffineFit piecewise_affine_fit(const LyapunovProfile& profile,
                               std::optional<double> penalty = std::nullopt);

enum class Regularity { Regular, NotRegular };
std::string_view to_string(Regularity r);

struct RegularityReport {
    Regularity verdict = Regularity::Regular;
    double left_slope = 0.0;
    double right_slope = 0.0;
    double tolerance = 0.0;  ///< 2 x the combined slope error
    LyapunovEstimate center;
};

/// Compares the one-sided s-slopes of L at s = ln rho.
RegularityReport regularity_check(const CocycleSpec& spec, double rho, double h,
                                  const EstimatorParams& params);

enum class UhVerdict { UH, NotUH, Undetermined };
std::string_view to_string(UhVerdict v);

struct UhReport {
    UhVerdict verdict = UhVerdict::Undetermined;
    LyapunovEstimate estimate;
    RegularityReport regularity;
};

/// For positive exponents regularity is equivalent to uniform hyperbolicity;
/// a vanishing exponent rules it out. Throws NotUnimodular unless det A = 1.
UhReport uh_classify(const CocycleSpec& spec, double rho, double h, const EstimatorParams& params);

enum class Regime { Supercritical, SubcriticalLike, Unresolved };
std::string_view to_string(Regime r);

struct RegimeReport {
    Regime regime = Regime::Unresolved;
    LyapunovEstimate on_circle;
    double max_band_value = 0.0;  ///< largest L over the band radii
};

/// Supercritical when L > resolution on the unit circle; SubcriticalLike when
/// L stays within resolution on every radius e^s, |s| <= band_eps. The
/// critical regime is never reported.
RegimeReport regime_classify(const CocycleSpec& schrodinger, double energy, double band_eps,
                             const EstimatorParams& params, std::size_t band_points = 5);

}  // namespace jonq
