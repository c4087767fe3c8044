#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "jonq/errors.hpp"

namespace jonq {

/// |z|^2 for any std::complex<T>, without relying on the library's abs/norm
/// (which are not all provided for extended floating types).
template <class T>
T norm_sq(const std::complex<T>& z) {
    return z.real() * z.real() + z.imag() * z.imag();
}

/// |z| evaluated in double precision.
template <class T>
double modulus(const std::complex<T>& z) {
    return std::sqrt(static_cast<double>(norm_sq(z)));
}

/// Truncated univariate power series sum_{k=0}^{N} c_k y^k over a complex
/// scalar C. Coefficient k of every result depends only on coefficients
/// 0..k of the operands, so arithmetic is exact through the truncation order.
template <class C>
class BasicPowerSeries {
public:
    using value_type = C;

    BasicPowerSeries() : coeffs_(1) {}
    explicit BasicPowerSeries(std::size_t order) : coeffs_(order + 1) {}
    explicit BasicPowerSeries(std::vector<C> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) coeffs_.resize(1);
    }

    static BasicPowerSeries constant(std::size_t order, C c) {
        BasicPowerSeries s(order);
        s.coeffs_[0] = c;
        return s;
    }
    /// The series y.
    static BasicPowerSeries variable(std::size_t order) {
        BasicPowerSeries s(order);
        if (order >= 1) s.coeffs_[1] = C(1);
        return s;
    }

    std::size_t order() const { return coeffs_.size() - 1; }
    const C& operator[](std::size_t k) const { return coeffs_[k]; }
    C& operator[](std::size_t k) { return coeffs_[k]; }
    const std::vector<C>& coeffs() const { return coeffs_; }

    BasicPowerSeries& operator+=(const BasicPowerSeries& o) {
        check_same(o);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
        return *this;
    }
    BasicPowerSeries& operator-=(const BasicPowerSeries& o) {
        check_same(o);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
        return *this;
    }
    BasicPowerSeries& operator*=(C s) {
        for (auto& c : coeffs_) c *= s;
        return *this;
    }

    friend BasicPowerSeries operator+(BasicPowerSeries a, const BasicPowerSeries& b) { return a += b; }
    friend BasicPowerSeries operator-(BasicPowerSeries a, const BasicPowerSeries& b) { return a -= b; }
    friend BasicPowerSeries operator*(BasicPowerSeries a, C s) { return a *= s; }
    friend BasicPowerSeries operator*(C s, BasicPowerSeries a) { return a *= s; }
    friend BasicPowerSeries operator-(BasicPowerSeries a) { return a *= C(-1); }

    /// Cauchy product truncated at the common order.
    friend BasicPowerSeries operator*(const BasicPowerSeries& a, const BasicPowerSeries& b) {
        a.check_same(b);
        const std::size_t n = a.coeffs_.size();
        BasicPowerSeries r(n - 1);
        for (std::size_t i = 0; i < n; ++i) {
            if (a.coeffs_[i] == C{}) continue;
            for (std::size_t j = 0; i + j < n; ++j) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return r;
    }

    /// Multiplication by y (coefficient N is dropped).
    BasicPowerSeries shifted() const {
        BasicPowerSeries r(order());
        for (std::size_t k = 1; k < coeffs_.size(); ++k) r.coeffs_[k] = coeffs_[k - 1];
        return r;
    }

    /// 1/s; requires |s_0| > 1e-300.
    BasicPowerSeries reciprocal() const {
        if (!(modulus(coeffs_[0]) > 1e-300)) {
            throw DomainError("power series reciprocal: constant term vanishes");
        }
        const std::size_t n = coeffs_.size();
        BasicPowerSeries r(n - 1);
        const C inv0 = C(1) / coeffs_[0];
        r.coeffs_[0] = inv0;
        for (std::size_t k = 1; k < n; ++k) {
            C acc{};
            for (std::size_t j = 1; j <= k; ++j) acc += coeffs_[j] * r.coeffs_[k - j];
            r.coeffs_[k] = -acc * inv0;
        }
        return r;
    }

    /// Horner evaluation of the truncated polynomial.
    C operator()(C y) const {
        C acc{};
        for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * y + coeffs_[k];
        return acc;
    }

    friend bool operator==(const BasicPowerSeries&, const BasicPowerSeries&) = default;

private:
    void check_same(const BasicPowerSeries& o) const {
        if (o.coeffs_.size() != coeffs_.size()) {
            throw std::invalid_argument("power series truncation orders differ");
        }
    }

    std::vector<C> coeffs_;
};

/// s(c y): coefficient k is multiplied by c^k.
template <class C>
BasicPowerSeries<C> series_scale_argument(const BasicPowerSeries<C>& s, C c) {
    BasicPowerSeries<C> r = s;
    C p(1);
    for (std::size_t k = 0; k <= s.order(); ++k) {
        r[k] = s[k] * p;
        p *= c;
    }
    return r;
}

using PowerSeries = BasicPowerSeries<std::complex<double>>;

}  // namespace jonq
