#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>

namespace jonq {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// e^{2 pi i t}
inline Complex unit_phase(double t) { return std::polar(1.0, kTwoPi * t); }

/// 2x2 complex matrix, row-major.
struct Mat2 {
    Complex m00{}, m01{}, m10{}, m11{};

    static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static constexpr Mat2 diagonal(Complex a, Complex d) { return {a, 0.0, 0.0, d}; }

    Complex det() const { return m00 * m11 - m01 * m10; }
    Complex trace() const { return m00 + m11; }

    /// Inverse via the adjugate; the caller is responsible for det != 0.
    Mat2 inverse() const {
        const Complex d = det();
        return {m11 / d, -m01 / d, -m10 / d, m00 / d};
    }

    Mat2& operator*=(Complex s) {
        m00 *= s;
        m01 *= s;
        m10 *= s;
        m11 *= s;
        return *this;
    }
    Mat2& operator/=(Complex s) { return *this *= (1.0 / s); }

    friend Mat2 operator*(Mat2 m, Complex s) { return m *= s; }
    friend Mat2 operator*(Complex s, Mat2 m) { return m *= s; }
    friend Mat2 operator/(Mat2 m, Complex s) { return m /= s; }
    friend Mat2 operator+(const Mat2& a, const Mat2& b) {
        return {a.m00 + b.m00, a.m01 + b.m01, a.m10 + b.m10, a.m11 + b.m11};
    }
    friend Mat2 operator-(const Mat2& a, const Mat2& b) {
        return {a.m00 - b.m00, a.m01 - b.m01, a.m10 - b.m10, a.m11 - b.m11};
    }
    friend bool operator==(const Mat2&, const Mat2&) = default;
};

Mat2 mat_mul(const Mat2& a, const Mat2& b);
inline Mat2 operator*(const Mat2& a, const Mat2& b) { return mat_mul(a, b); }

/// sqrt of the sum of squared entry moduli; the canonical norm of the library.
double frobenius_norm(const Mat2& m);

/// Largest singular value. Used to check norm independence of exponents.
double operator_norm(const Mat2& m);

/// Largest entrywise modulus difference.
double max_abs_diff(const Mat2& a, const Mat2& b);

/// Roots of the characteristic polynomial.
std::array<Complex, 2> eigenvalues(const Mat2& m);

/// A point of the Riemann sphere: either a finite complex number or infinity.
class ExtComplex {
public:
    constexpr ExtComplex() = default;
    constexpr ExtComplex(Complex z) : value_(z) {}  // NOLINT: implicit by intent
    constexpr ExtComplex(double x) : value_(x) {}   // NOLINT

    static constexpr ExtComplex infinity() {
        ExtComplex e;
        e.infinite_ = true;
        return e;
    }

    constexpr bool is_infinite() const { return infinite_; }
    constexpr bool is_finite() const { return !infinite_; }
    /// The finite value; meaningless for infinity.
    constexpr Complex value() const { return value_; }

    friend constexpr bool operator==(const ExtComplex& a, const ExtComplex& b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
        return a.value_ == b.value_;
    }

private:
    Complex value_{};
    bool infinite_ = false;
};

/// Moebius action x -> (m00 x + m01)/(m10 x + m11) on P^1.
/// Throws IndeterminateAction when numerator and denominator both vanish.
ExtComplex projective_action(const Mat2& m, const ExtComplex& x);

/// Chordal metric on P^1, bounded by 1; infinity is an ordinary point.
double chordal_distance(const ExtComplex& a, const ExtComplex& b);

/// Point rho * e^{2 pi i theta} of the circle of radius rho.
struct CirclePoint {
    double theta = 0.0;
    double rho = 1.0;

    Complex value() const { return std::polar(rho, kTwoPi * theta); }
};

/// Reduces t into [0, 1).
inline double frac(double t) {
    double r = t - std::floor(t);
    return r >= 1.0 ? 0.0 : r;
}

/// True when t lies within tol of some p/q with q <= max_denominator.
/// This is the resonance guard applied to frequencies and multipliers.
bool near_rational(double t, int max_denominator = 64, double tol = 1e-9);

/// Rotation number t in [0, 1) of a unit complex number u = e^{2 pi i t}.
inline double angle_of(Complex u) { return frac(std::arg(u) / kTwoPi); }

/// Pairwise (tree) summation; the order of additions depends only on size.
template <class It>
double pairwise_sum(It first, It last) {
    const auto n = last - first;
    if (n <= 0) return 0.0;
    if (n == 1) return static_cast<double>(*first);
    if (n == 2) return static_cast<double>(first[0]) + static_cast<double>(first[1]);
    const auto half = n / 2;
    return pairwise_sum(first, first + half) + pairwise_sum(first + half, last);
}

}  // namespace jonq
