#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace jonq {

/// Dense univariate polynomial over Z, coefficient k of y^k. The zero
/// polynomial has no coefficients; otherwise the leading one is nonzero.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<mpz_class> coeffs);
    static UPoly constant(const mpz_class& c);

    int degree() const { return static_cast<int>(c_.size()) - 1; }  ///< -1 for zero
    bool is_zero() const { return c_.empty(); }
    const mpz_class& lc() const { return c_.back(); }
    const std::vector<mpz_class>& coeffs() const { return c_; }
    mpz_class coeff(int k) const;

    UPoly& operator+=(const UPoly& o);
    UPoly& operator-=(const UPoly& o);
    friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
    friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    friend UPoly operator*(UPoly a, const mpz_class& s);
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

    /// Positive gcd of the coefficients (0 for the zero polynomial).
    mpz_class content() const;
    UPoly div_scalar_exact(const mpz_class& s) const;
    /// Primitive part with positive leading coefficient.
    UPoly primitive_part() const;

private:
    void trim();
    std::vector<mpz_class> c_;
};

/// Quotient of an exact division; throws std::logic_error otherwise.
UPoly divexact(const UPoly& a, const UPoly& b);
/// Primitive gcd over Z times the gcd of contents; positive leading coefficient.
UPoly gcd(const UPoly& a, const UPoly& b);

/// Polynomial in x with coefficients in Z[y], coefficient k of x^k.
class BPoly {
public:
    BPoly() = default;
    explicit BPoly(std::vector<UPoly> coeffs);

    int degree_x() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const UPoly& lc() const { return c_.back(); }
    const std::vector<UPoly>& coeffs() const { return c_; }
    /// Largest i + j over the monomials x^i y^j.
    int total_degree() const;

    BPoly& operator-=(const BPoly& o);
    friend BPoly operator*(const BPoly& a, const UPoly& s);
    /// Multiplication by x^k.
    BPoly shifted_x(int k) const;
    friend bool operator==(const BPoly& a, const BPoly& b) { return a.c_ == b.c_; }

    /// gcd in Z[y] of the x-coefficients.
    UPoly content() const;
    BPoly primitive_part() const;

private:
    void trim();
    std::vector<UPoly> c_;
};

/// Pseudo-remainder in x.
BPoly prem(const BPoly& a, const BPoly& b);
/// gcd in Z[x, y] by content and primitive remainder sequences, normalized
/// so that the leading coefficient (in x, then y) is positive.
BPoly gcd(const BPoly& a, const BPoly& b);

/// Polynomial in x, y, z over Z.
class Poly3 {
public:
    using Exponent = std::array<int, 3>;
    /// Lex-descending so the first term is the leading one.
    using Terms = std::map<Exponent, mpz_class, std::greater<Exponent>>;

    Poly3() = default;
    static Poly3 constant(const mpz_class& c);
    static Poly3 monomial(const mpz_class& c, int i, int j, int k);
    static Poly3 x() { return monomial(1, 1, 0, 0); }
    static Poly3 y() { return monomial(1, 0, 1, 0); }
    static Poly3 z() { return monomial(1, 0, 0, 1); }

    bool is_zero() const { return t_.empty(); }
    const Terms& terms() const { return t_; }
    std::size_t term_count() const { return t_.size(); }
    /// Total degree (-1 for zero).
    int degree() const;
    bool is_homogeneous() const;
    /// Smallest exponent of z over the terms.
    int z_valuation() const;
    /// Coefficient of x^i y^j z^k.
    mpz_class coeff(int i, int j, int k) const;
    /// Largest number of decimal digits of a coefficient.
    std::size_t max_digits() const;

    Poly3& operator+=(const Poly3& o);
    Poly3& operator-=(const Poly3& o);
    friend Poly3 operator+(Poly3 a, const Poly3& b) { return a += b; }
    friend Poly3 operator-(Poly3 a, const Poly3& b) { return a -= b; }
    friend Poly3 operator*(const Poly3& a, const Poly3& b);
    friend Poly3 operator*(Poly3 a, const mpz_class& s);
    friend bool operator==(const Poly3& a, const Poly3& b) { return a.t_ == b.t_; }

    /// P(F0, F1, F2).
    Poly3 substitute(const std::array<Poly3, 3>& f) const;
    mpq_class evaluate(const mpq_class& x, const mpq_class& y, const mpq_class& z) const;

    /// P(x, y, 1) as an element of Z[y][x].
    BPoly dehomogenize() const;
    /// z^d g(x/z, y/z), d the total degree of g.
    static Poly3 homogenize(const BPoly& g);

    mpz_class content() const;
    Poly3 div_scalar_exact(const mpz_class& s) const;

    std::string to_string() const;

private:
    void add_term(const Exponent& e, const mpz_class& c);
    Terms t_;
};

/// Exact multivariate division; throws std::logic_error on a remainder.
Poly3 divexact(const Poly3& a, const Poly3& b);

/// gcd of homogeneous polynomials, z^v times the homogenized gcd of the
/// z = 1 dehomogenizations; positive leading coefficient.
Poly3 gcd_homogeneous(const std::vector<Poly3>& polys);

}  // namespace jonq
