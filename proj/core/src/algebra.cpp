#include "jonq/algebra.hpp"

#include <algorithm>

#include "jonq/errors.hpp"

namespace jonq {

Mat2 mat_mul(const Mat2& a, const Mat2& b) {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

double frobenius_norm(const Mat2& m) {
    return std::sqrt(std::norm(m.m00) + std::norm(m.m01) + std::norm(m.m10) + std::norm(m.m11));
}

double operator_norm(const Mat2& m) {
    // sigma_max^2 = (F^2 + sqrt(F^4 - 4|det|^2)) / 2
    const double f2 = std::norm(m.m00) + std::norm(m.m01) + std::norm(m.m10) + std::norm(m.m11);
    const double d = std::abs(m.det());
    const double disc = std::max(0.0, (f2 - 2.0 * d) * (f2 + 2.0 * d));
    return std::sqrt(0.5 * (f2 + std::sqrt(disc)));
}

double max_abs_diff(const Mat2& a, const Mat2& b) {
    return std::max({std::abs(a.m00 - b.m00), std::abs(a.m01 - b.m01), std::abs(a.m10 - b.m10),
                     std::abs(a.m11 - b.m11)});
}

std::array<Complex, 2> eigenvalues(const Mat2& m) {
    const Complex t = m.trace();
    const Complex root = std::sqrt(t * t - 4.0 * m.det());
    // Pick the sign that avoids cancellation, recover the other root from det.
    const Complex big = std::abs(t + root) >= std::abs(t - root) ? 0.5 * (t + root) : 0.5 * (t - root);
    if (big == Complex{}) return {Complex{}, Complex{}};
    return {big, m.det() / big};
}

ExtComplex projective_action(const Mat2& m, const ExtComplex& x) {
    if (m.m00 == Complex{} && m.m01 == Complex{} && m.m10 == Complex{} && m.m11 == Complex{}) {
        throw IndeterminateAction();
    }
    Complex num;
    Complex den;
    if (x.is_infinite()) {
        num = m.m00;
        den = m.m10;
    } else {
        num = m.m00 * x.value() + m.m01;
        den = m.m10 * x.value() + m.m11;
    }
    if (den == Complex{}) {
        if (num == Complex{}) throw IndeterminateAction();
        return ExtComplex::infinity();
    }
    const Complex q = num / den;
    if (!std::isfinite(q.real()) || !std::isfinite(q.imag())) return ExtComplex::infinity();
    return q;
}

double chordal_distance(const ExtComplex& a, const ExtComplex& b) {
    if (a.is_infinite() && b.is_infinite()) return 0.0;
    if (a.is_infinite()) return 1.0 / std::sqrt(1.0 + std::norm(b.value()));
    if (b.is_infinite()) return 1.0 / std::sqrt(1.0 + std::norm(a.value()));
    const Complex z = a.value();
    const Complex w = b.value();
    return std::abs(z - w) / (std::sqrt(1.0 + std::norm(z)) * std::sqrt(1.0 + std::norm(w)));
}

bool near_rational(double t, int max_denominator, double tol) {
    for (int q = 1; q <= max_denominator; ++q) {
        const double qt = q * t;
        if (std::abs(qt - std::round(qt)) < tol) return true;
    }
    return false;
}

}  // namespace jonq
