#include "jonq/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace jonq {

// ---- UPoly -------------------------------------------------------------

UPoly::UPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly UPoly::constant(const mpz_class& c) { return UPoly(std::vector<mpz_class>{c}); }

void UPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

mpz_class UPoly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return 0;
    return c_[static_cast<std::size_t>(k)];
}

UPoly& UPoly::operator+=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<mpz_class> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(r));
}

UPoly operator*(UPoly a, const mpz_class& s) {
    for (auto& c : a.c_) c *= s;
    a.trim();
    return a;
}

mpz_class UPoly::content() const {
    mpz_class g = 0;
    for (const auto& c : c_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

UPoly UPoly::div_scalar_exact(const mpz_class& s) const {
    std::vector<mpz_class> r = c_;
    for (auto& c : r) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), s.get_mpz_t());
    return UPoly(std::move(r));
}

UPoly UPoly::primitive_part() const {
    if (is_zero()) return {};
    mpz_class g = content();
    if (lc() < 0) g = -g;
    return div_scalar_exact(g);
}

UPoly divexact(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw std::logic_error("UPoly division by zero");
    std::vector<mpz_class> rem = a.coeffs();
    const int db = b.degree();
    const int da = a.degree();
    if (da < db) {
        if (a.is_zero()) return {};
        throw std::logic_error("UPoly division is not exact");
    }
    std::vector<mpz_class> q(static_cast<std::size_t>(da - db + 1));
    for (int k = da - db; k >= 0; --k) {
        mpz_class& top = rem[static_cast<std::size_t>(k + db)];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), b.lc().get_mpz_t())) {
            throw std::logic_error("UPoly division is not exact");
        }
        mpz_class t;
        mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), b.lc().get_mpz_t());
        for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= t * b.coeffs()[static_cast<std::size_t>(j)];
        q[static_cast<std::size_t>(k)] = t;
    }
    if (!UPoly(rem).is_zero()) throw std::logic_error("UPoly division is not exact");
    return UPoly(std::move(q));
}

namespace {

UPoly prem_u(UPoly a, const UPoly& b) {
    const int db = b.degree();
    while (!a.is_zero() && a.degree() >= db) {
        const int shift = a.degree() - db;
        std::vector<mpz_class> s(static_cast<std::size_t>(shift) + 1);
        s.back() = a.lc();
        a = a * b.lc() - b * UPoly(std::move(s));
    }
    return a;
}

}  // namespace

UPoly gcd(const UPoly& a, const UPoly& b) {
    if (a.is_zero()) return b.primitive_part() * b.content();
    if (b.is_zero()) return a.primitive_part() * a.content();
    mpz_class cont;
    mpz_gcd(cont.get_mpz_t(), a.content().get_mpz_t(), b.content().get_mpz_t());
    UPoly p = a.primitive_part();
    UPoly q = b.primitive_part();
    if (p.degree() < q.degree()) std::swap(p, q);
    while (!q.is_zero()) {
        UPoly r = prem_u(p, q);
        p = std::move(q);
        q = r.primitive_part();
    }
    return p.primitive_part() * cont;
}

// ---- BPoly -------------------------------------------------------------

BPoly::BPoly(std::vector<UPoly> coeffs) : c_(std::move(coeffs)) { trim(); }

void BPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

int BPoly::total_degree() const {
    int d = -1;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i].is_zero()) d = std::max(d, static_cast<int>(i) + c_[i].degree());
    }
    return d;
}

BPoly& BPoly::operator-=(const BPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
}

BPoly operator*(const BPoly& a, const UPoly& s) {
    std::vector<UPoly> r;
    r.reserve(a.c_.size());
    for (const auto& c : a.c_) r.push_back(c * s);
    return BPoly(std::move(r));
}

BPoly BPoly::shifted_x(int k) const {
    if (is_zero()) return {};
    std::vector<UPoly> r(static_cast<std::size_t>(k));
    r.insert(r.end(), c_.begin(), c_.end());
    return BPoly(std::move(r));
}

UPoly BPoly::content() const {
    UPoly g;
    for (const auto& c : c_) {
        g = gcd(g, c);
        if (g.degree() == 0 && g.lc() == 1) break;
    }
    return g;
}

BPoly BPoly::primitive_part() const {
    if (is_zero()) return {};
    UPoly g = content();
    // Sign: make the leading coefficient's leading coefficient positive.
    if (lc().lc() < 0) g = g * mpz_class(-1);
    std::vector<UPoly> r;
    r.reserve(c_.size());
    for (const auto& c : c_) r.push_back(divexact(c, g));
    return BPoly(std::move(r));
}

BPoly prem(const BPoly& a, const BPoly& b) {
    if (b.is_zero()) throw std::logic_error("pseudo-remainder by zero");
    BPoly r = a;
    const int db = b.degree_x();
    while (!r.is_zero() && r.degree_x() >= db) {
        const UPoly top = r.lc();
        BPoly t = b.shifted_x(r.degree_x() - db) * top;
        r = r * b.lc();
        r -= t;
    }
    return r;
}

BPoly gcd(const BPoly& a, const BPoly& b) {
    if (a.is_zero()) return b.is_zero() ? BPoly{} : b.primitive_part() * b.content();
    if (b.is_zero()) return a.primitive_part() * a.content();
    const UPoly cont = gcd(a.content(), b.content());
    BPoly p = a.primitive_part();
    BPoly q = b.primitive_part();
    if (p.degree_x() < q.degree_x()) std::swap(p, q);
    while (!q.is_zero()) {
        if (q.degree_x() == 0) {
            p = BPoly({UPoly::constant(1)});
            break;
        }
        BPoly r = prem(p, q);
        p = std::move(q);
        q = r.primitive_part();
    }
    BPoly g = p.primitive_part() * cont;
    if (g.lc().lc() < 0) g = g * UPoly::constant(-1);
    return g;
}

// ---- Poly3 -------------------------------------------------------------

Poly3 Poly3::constant(const mpz_class& c) { return monomial(c, 0, 0, 0); }

Poly3 Poly3::monomial(const mpz_class& c, int i, int j, int k) {
    Poly3 p;
    p.add_term({i, j, k}, c);
    return p;
}

void Poly3::add_term(const Exponent& e, const mpz_class& c) {
    if (c == 0) return;
    auto [it, inserted] = t_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) t_.erase(it);
    }
}

int Poly3::degree() const {
    int d = -1;
    for (const auto& [e, c] : t_) d = std::max(d, e[0] + e[1] + e[2]);
    return d;
}

bool Poly3::is_homogeneous() const {
    const int d = degree();
    return std::all_of(t_.begin(), t_.end(), [d](const auto& t) { return t.first[0] + t.first[1] + t.first[2] == d; });
}

int Poly3::z_valuation() const {
    int v = -1;
    for (const auto& [e, c] : t_) v = v < 0 ? e[2] : std::min(v, e[2]);
    return v;
}

mpz_class Poly3::coeff(int i, int j, int k) const {
    const auto it = t_.find({i, j, k});
    return it == t_.end() ? mpz_class(0) : it->second;
}

std::size_t Poly3::max_digits() const {
    std::size_t d = 0;
    for (const auto& [e, c] : t_) d = std::max(d, mpz_sizeinbase(c.get_mpz_t(), 10));
    return d;
}

Poly3& Poly3::operator+=(const Poly3& o) {
    for (const auto& [e, c] : o.t_) add_term(e, c);
    return *this;
}

Poly3& Poly3::operator-=(const Poly3& o) {
    for (const auto& [e, c] : o.t_) add_term(e, -c);
    return *this;
}

Poly3 operator*(const Poly3& a, const Poly3& b) {
    Poly3 r;
    for (const auto& [ea, ca] : a.t_) {
        for (const auto& [eb, cb] : b.t_) r.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    }
    return r;
}

Poly3 operator*(Poly3 a, const mpz_class& s) {
    if (s == 0) return {};
    for (auto& [e, c] : a.t_) c *= s;
    return a;
}

Poly3 Poly3::substitute(const std::array<Poly3, 3>& f) const {
    std::array<std::vector<Poly3>, 3> powers;
    for (int v = 0; v < 3; ++v) powers[v].push_back(constant(1));
    auto power = [&](int v, int k) -> const Poly3& {
        auto& list = powers[static_cast<std::size_t>(v)];
        while (static_cast<int>(list.size()) <= k) list.push_back(list.back() * f[static_cast<std::size_t>(v)]);
        return list[static_cast<std::size_t>(k)];
    };
    Poly3 r;
    for (const auto& [e, c] : t_) r += power(0, e[0]) * power(1, e[1]) * power(2, e[2]) * c;
    return r;
}

mpq_class Poly3::evaluate(const mpq_class& x, const mpq_class& y, const mpq_class& z) const {
    std::array<mpq_class, 3> pt{x, y, z};
    for (auto& v : pt) v.canonicalize();
    mpq_class acc = 0;
    auto pw = [](const mpq_class& b, int k) {
        mpq_class r = 1;
        for (int i = 0; i < k; ++i) r *= b;
        return r;
    };
    for (const auto& [e, c] : t_) acc += mpq_class(c) * pw(pt[0], e[0]) * pw(pt[1], e[1]) * pw(pt[2], e[2]);
    acc.canonicalize();
    return acc;
}

BPoly Poly3::dehomogenize() const {
    std::vector<std::vector<mpz_class>> grid;
    for (const auto& [e, c] : t_) {
        const auto i = static_cast<std::size_t>(e[0]);
        const auto j = static_cast<std::size_t>(e[1]);
        if (grid.size() <= i) grid.resize(i + 1);
        if (grid[i].size() <= j) grid[i].resize(j + 1);
        grid[i][j] += c;
    }
    std::vector<UPoly> coeffs;
    coeffs.reserve(grid.size());
    for (auto& row : grid) coeffs.emplace_back(std::move(row));
    return BPoly(std::move(coeffs));
}

Poly3 Poly3::homogenize(const BPoly& g) {
    const int d = g.total_degree();
    Poly3 r;
    for (std::size_t i = 0; i < g.coeffs().size(); ++i) {
        const auto& u = g.coeffs()[i];
        for (std::size_t j = 0; j < u.coeffs().size(); ++j) {
            const int ii = static_cast<int>(i);
            const int jj = static_cast<int>(j);
            r.add_term({ii, jj, d - ii - jj}, u.coeffs()[j]);
        }
    }
    return r;
}

mpz_class Poly3::content() const {
    mpz_class g = 0;
    for (const auto& [e, c] : t_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

Poly3 Poly3::div_scalar_exact(const mpz_class& s) const {
    Poly3 r = *this;
    for (auto& [e, c] : r.t_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), s.get_mpz_t());
    return r;
}

std::string Poly3::to_string() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    const char* names = "xyz";
    for (const auto& [e, c] : t_) {
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        const mpz_class m = abs(c);
        const bool unit = e[0] + e[1] + e[2] > 0 && m == 1;
        if (!unit) os << m.get_str();
        bool need_star = !unit;
        for (int v = 0; v < 3; ++v) {
            if (e[v] == 0) continue;
            if (need_star) os << "*";
            os << names[v];
            if (e[v] > 1) os << "^" << e[v];
            need_star = true;
        }
    }
    return os.str();
}

Poly3 divexact(const Poly3& a, const Poly3& b) {
    if (b.is_zero()) throw std::logic_error("Poly3 division by zero");
    const auto& [eb, cb] = *b.terms().begin();
    Poly3 rem = a;
    Poly3 q;
    while (!rem.is_zero()) {
        const auto& [er, cr] = *rem.terms().begin();
        const Poly3::Exponent e{er[0] - eb[0], er[1] - eb[1], er[2] - eb[2]};
        if (e[0] < 0 || e[1] < 0 || e[2] < 0 || !mpz_divisible_p(cr.get_mpz_t(), cb.get_mpz_t())) {
            throw std::logic_error("Poly3 division is not exact");
        }
        mpz_class t;
        mpz_divexact(t.get_mpz_t(), cr.get_mpz_t(), cb.get_mpz_t());
        const Poly3 m = Poly3::monomial(t, e[0], e[1], e[2]);
        q += m;
        rem -= m * b;
    }
    return q;
}

Poly3 gcd_homogeneous(const std::vector<Poly3>& polys) {
    int v = -1;
    BPoly g;
    for (const auto& p : polys) {
        if (p.is_zero()) continue;
        v = v < 0 ? p.z_valuation() : std::min(v, p.z_valuation());
        g = gcd(g, p.dehomogenize());
    }
    if (v < 0) return {};
    return Poly3::homogenize(g) * Poly3::monomial(1, 0, 0, v);
}

}  // namespace jonq
