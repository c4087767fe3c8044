#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "jonq/algebra.hpp"

namespace jonq {

/// Generator families y -> A(y) on the circle of radius rho.
///
///   JonquieresA    [[alpha, y], [1, 1]]
///   JonquieresB    [[alpha, y^2], [1, 1]]
///   BTilde         B(y) / sqrt(alpha - y^2), an SL(2,C) cocycle for rho != 1
///   Schrodinger    [[E - v(y), -1], [1, 0]]
///   DiagonalPower  [[y, 0], [0, 1/y]]
///   Constant       a fixed matrix
///
/// In every case the base dynamics is theta -> theta + freq, i.e.
/// y -> e^{2 pi i freq} y.
enum class CocycleKind { JonquieresA, JonquieresB, BTilde, Schrodinger, DiagonalPower, Constant };

std::string_view to_string(CocycleKind kind);
/// Throws InvalidSpec on an unknown name.
CocycleKind parse_cocycle_kind(std::string_view name);

/// Real trigonometric polynomial
///   v(theta) = c + sum_k a_k cos(2 pi k theta) + b_k sin(2 pi k theta),
/// evaluated off the unit circle through its holomorphic extension in y.
struct TrigPotential {
    double constant = 0.0;
    std::vector<double> cos_coeffs;  ///< a_1, a_2, ...
    std::vector<double> sin_coeffs;  ///< b_1, b_2, ...

    Complex operator()(Complex y) const;
};

struct CocycleSpec {
    CocycleKind kind = CocycleKind::Constant;
    Complex alpha{1.0, 0.0};
    double rho = 1.0;
    double freq = 0.0;
    double energy = 0.0;
    TrigPotential potential;
    Mat2 constant = Mat2::identity();

    static CocycleSpec jonquieres_a(Complex alpha, double rho, double freq);
    static CocycleSpec jonquieres_b(Complex alpha, double rho, double freq);
    static CocycleSpec b_tilde(Complex alpha, double rho, double freq);
    static CocycleSpec schrodinger(double energy, TrigPotential v, double freq, double rho = 1.0);
    static CocycleSpec diagonal_power(double rho, double freq);
    static CocycleSpec constant_matrix(const Mat2& m, double freq);

    CocycleSpec with_rho(double r) const {
        CocycleSpec s = *this;
        s.rho = r;
        return s;
    }

    Complex multiplier() const { return unit_phase(freq); }

    /// True for kinds whose generator has determinant identically 1.
    bool unimodular() const;
};

/// Reproducible generic parameters: alpha = e^{2 pi i (sqrt2 - 1)},
/// freq = (sqrt5 - 1)/2.
inline constexpr double kGenericAlphaAngle = 0.41421356237309503;  // sqrt(2) - 1
inline constexpr double kGenericFreq = 0.6180339887498949;         // (sqrt(5) - 1)/2
inline Complex generic_alpha() { return unit_phase(kGenericAlphaAngle); }

/// Throws InvalidSpec (or RadiusOne) when the CocycleSpec violates its invariants:
/// |alpha| = 1 where used, rho > 0, freq in (0,1) and not within 1e-9 of a
/// rational with denominator <= 64.
void validate(const CocycleSpec& spec);

/// A(y) at y = rho e^{2 pi i theta}. No validation on this hot path.
Mat2 evaluate_generator(const CocycleSpec& spec, double theta);

/// Continuous square root of alpha - y^2 along the circle (rho != 1).
/// Inside the unit circle this is sqrt(alpha) sqrt(1 - y^2/alpha), outside it
/// is i y sqrt(1 - alpha/y^2), both with principal roots of a quantity with
/// positive real part; verify_sqrt_branch checks the branch independently.
Complex sqrt_branch(const CocycleSpec& spec, double theta);

struct BranchReport {
    int winding_number = 0;       ///< winding of alpha - y^2 about 0
    std::size_t steps = 0;        ///< theta resolution that resolved the branch
    double closure_error = 0.0;   ///< |s(1^-) - s(0)| of the tracked branch
    double max_mismatch = 0.0;    ///< sup |tracked - sqrt_branch| / |sqrt_branch|
};

/// Tracks a square root of alpha - y^2 by continuation over a uniform theta
/// grid (4096 steps, doubled until every step moves the root by less than a
/// quarter of its modulus) and checks that it closes up and agrees with
/// sqrt_branch. Throws BranchFailure otherwise, RadiusOne for rho = 1.
BranchReport verify_sqrt_branch(const CocycleSpec& spec, std::size_t min_steps = 4096);

/// Renormalized product: the exact product equals e^{log_norm_sum} * product,
/// with frobenius_norm(product) = 1.
struct NormalizedProduct {
    Mat2 product = Mat2::identity();
    double log_norm_sum = 0.0;

    /// The unnormalized matrix; only meaningful while it is representable.
    Mat2 reconstruct() const { return product * Complex(std::exp(log_norm_sum)); }
};

/// A_n(y) = A(beta^{n-1} y) ... A(y), renormalized after every factor.
/// Throws Overflow when a single generator norm leaves [1e-150, 1e150].
NormalizedProduct iterate(const CocycleSpec& spec, double theta, std::size_t n);

/// A_{-n}(y) = A_n(beta^{-n} y)^{-1}. Throws SingularFactor(k) when the k-th
/// factor A(beta^{-k} y) is not invertible.
NormalizedProduct inverse_iterate(const CocycleSpec& spec, double theta, std::size_t n);

enum class NormKind { Frobenius, Operator };

struct LyapunovEstimate {
    double value = 0.0;
    std::size_t n = 0;
    std::size_t samples = 0;
    double half_n_value = 0.0;
    double std_error = 0.0;

    /// Statistical plus structural error: stderr + |L(n) - L(n/2)|.
    double error() const { return std_error + std::abs(value - half_n_value); }
};

struct LyapunovOptions {
    NormKind norm = NormKind::Frobenius;
    /// Phase samples are split across this many threads; the result does not
    /// depend on it.
    unsigned threads = 1;
};

/// Phases theta_j = frac(offset + j * golden), offset drawn from the seed.
std::vector<double> phase_samples(std::size_t samples, std::uint64_t seed);

/// Phase-averaged, n-normalized Lyapunov exponent
///   mean_j (1/n) ln ||A_n(theta_j)||.
/// Raw estimate; it is not clamped at zero.
LyapunovEstimate lyapunov(const CocycleSpec& spec, std::size_t n, std::size_t samples,
                          std::uint64_t seed, const LyapunovOptions& options = {});

/// Limit of the two-step normalized product as rho -> infinity:
/// -g^{-1} [[g^2, alpha + g^2], [0, 1]] where g = e^{2 pi i freq} is the
/// rotation multiplier of the B cocycle (g^2 is the f-multiplier beta).
Mat2 two_step_limit_matrix(Complex alpha, double freq);

struct TwoStepCheck {
    Mat2 average;          ///< theta-average of B~(g y) B~(y)
    Mat2 limit;            ///< two_step_limit_matrix(alpha, freq)
    double max_deviation;  ///< sup over the theta grid of the entrywise deviation
};

/// Requires rho >= 10.
TwoStepCheck two_step_limit_check(Complex alpha, double freq, double rho,
                                  std::size_t theta_samples = 256);

}  // namespace jonq
