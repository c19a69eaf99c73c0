#include "kn/ratfunc.hpp"

#include <sstream>
#include <stdexcept>

namespace kn {

RiemannPoint RiemannPoint::parse(const std::string& s) {
    if (s == "inf" || s == "infinity" || s == "oo") return infinity();
    return at(Rat::parse(s));
}

const Rat& RiemannPoint::value() const {
    if (is_infinity()) throw std::domain_error("RiemannPoint: infinity has no finite value");
    return *finite;
}

RatFunc::RatFunc(const Poly& num, const Poly& den) : num_(num), den_(den) {
    if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
    if (num_.is_zero()) {
        den_ = Poly(Rat(1));
        return;
    }
    Poly g = Poly::gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = Poly::div_exact(num_, g);
        den_ = Poly::div_exact(den_, g);
    }
    const Rat lead = den_.leading();
    if (!lead.is_one()) {
        const Rat inv = lead.inverse();
        num_ = inv * num_;
        den_ = inv * den_;
    }
}

RatFunc RatFunc::operator-() const {
    RatFunc r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw std::domain_error("RatFunc: division by the zero function");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc operator*(const Rat& s, const RatFunc& f) {
    RatFunc r;
    if (s.is_zero()) return r;
    r.num_ = s * f.num_;
    r.den_ = f.den_;
    return r;
}

RatFunc rat_func_arith(const RatFunc& a, const RatFunc& b, ArithKind kind) {
    switch (kind) {
        case ArithKind::add: return a + b;
        case ArithKind::sub: return a - b;
        case ArithKind::mul: return a * b;
        case ArithKind::div: return a / b;
    }
    throw std::invalid_argument("rat_func_arith: bad kind");
}

RatFunc RatFunc::derivative() const {
    // (n/d)' = (n'd - nd')/d^2; canonicalization removes the common factor.
    return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RatFunc RatFunc::pow(int e) const {
    if (e >= 0) return RatFunc(num_.pow(e), den_.pow(e));
    if (is_zero()) throw std::domain_error("RatFunc::pow: negative power of zero");
    return RatFunc(den_.pow(-e), num_.pow(-e));
}

RatFunc RatFunc::reciprocal_substitute() const {
    if (is_zero()) return RatFunc();
    const int dn = num_.degree();
    const int dd = den_.degree();
    // f(1/w) = w^{dd-dn} * rev(num) / rev(den).
    Poly rn = num_.reversed();
    Poly rd = den_.reversed();
    if (dd >= dn)
        return RatFunc(rn * Poly::monomial(Rat(1), dd - dn), rd);
    return RatFunc(rn, rd * Poly::monomial(Rat(1), dn - dd));
}

int order_at(const RatFunc& f, const RiemannPoint& p) {
    if (f.is_zero()) return order_infinite;
    if (p.is_infinity()) return f.den().degree() - f.num().degree();
    const Rat& a = p.value();
    return f.num().root_multiplicity(a) - f.den().root_multiplicity(a);
}

namespace {

// Coefficients u_0..u_{count-1} of the power series n/d where d(0) != 0.
std::vector<Rat> series_divide(const Poly& n, const Poly& d, int count) {
    std::vector<Rat> u(static_cast<size_t>(count));
    const Rat d0 = d.coeff(0);
    for (int k = 0; k < count; ++k) {
        Rat acc = n.coeff(k);
        for (int j = 1; j <= k; ++j) acc -= d.coeff(j) * u[static_cast<size_t>(k - j)];
        u[static_cast<size_t>(k)] = acc / d0;
    }
    return u;
}

}  // namespace

LaurentSlice laurent_coeffs(const RatFunc& f, const RiemannPoint& p, int first, int count) {
    if (count <= 0) throw std::invalid_argument("laurent_coeffs: count must be positive");
    LaurentSlice slice{p, first, {}};
    if (f.is_zero()) {
        slice.coefficients.assign(static_cast<size_t>(count), Rat());
        return slice;
    }
    RatFunc local = p.is_infinity() ? f.reciprocal_substitute() : f;
    Poly n = local.num();
    Poly d = local.den();
    if (!p.is_infinity() && !p.value().is_zero()) {
        const Rat& a = p.value();
        n = n.taylor_shift(a);
        d = d.taylor_shift(a);
    }
    // Now expanding n/d around 0 in the local coordinate.
    Poly n_unit, d_unit;
    const int vn = n.root_multiplicity(Rat(0), &n_unit);
    const int vd = d.root_multiplicity(Rat(0), &d_unit);
    const int ord = vn - vd;
    // Need series terms for exponents first..first+count-1, i.e. unit-series
    // indices (first - ord)..(first - ord + count - 1).
    const int hi = first - ord + count;  // exclusive
    if (hi <= 0) {
        slice.coefficients.assign(static_cast<size_t>(count), Rat());
        return slice;
    }
    std::vector<Rat> u = series_divide(n_unit, d_unit, hi);
    slice.coefficients.reserve(static_cast<size_t>(count));
    for (int k = first; k < first + count; ++k) {
        const int idx = k - ord;
        slice.coefficients.push_back(idx < 0 ? Rat() : u[static_cast<size_t>(idx)]);
    }
    return slice;
}

Rat residue_1form(const RatFunc& f, const RiemannPoint& p) {
    if (f.is_zero()) return Rat();
    if (p.is_infinity()) {
        // res_inf(f dz) = res_{w=0}(-f(1/w) w^{-2} dw): after the w^{-2}
        // shift this is the coefficient of w^1 in -f(1/w).
        RatFunc g = -f.reciprocal_substitute();
        if (order_at(g, RiemannPoint::at(Rat(0))) > 1) return Rat();
        return laurent_coeffs(g, RiemannPoint::at(Rat(0)), 1, 1).coefficients[0];
    }
    if (order_at(f, p) >= 0) return Rat();
    return laurent_coeffs(f, p, -1, 1).coefficients[0];
}

RiemannPoint Mobius::apply(const RiemannPoint& p) const {
    if (p.is_infinity()) {
        if (c.is_zero()) return RiemannPoint::infinity();
        return RiemannPoint::at(a / c);
    }
    const Rat& z = p.value();
    const Rat lower = c * z + d;
    if (lower.is_zero()) return RiemannPoint::infinity();
    return RiemannPoint::at((a * z + b) / lower);
}

RatFunc Mobius::derivative() const {
    // d/dz (az+b)/(cz+d) = (ad - bc)/(cz+d)^2
    const Rat det = a * d - b * c;
    Poly lower;
    lower.set(1, c);
    lower.set(0, d);
    return RatFunc(Poly(det), lower * lower);
}

bool Mobius::is_identity() const {
    return b.is_zero() && c.is_zero() && a == d && !a.is_zero();
}

RatFunc substitute(const RatFunc& f, const Mobius& m) {
    if (f.is_zero()) return RatFunc();
    // p((az+b)/(cz+d)) = sum_k p_k (az+b)^k (cz+d)^{deg-k} / (cz+d)^deg
    Poly upper;
    upper.set(1, m.a);
    upper.set(0, m.b);
    Poly lower;
    lower.set(1, m.c);
    lower.set(0, m.d);
    auto lift = [&](const Poly& p) {
        const int d = p.degree();
        Poly out;
        for (const auto& [k, v] : p.coeffs())
            out += v * (upper.pow(k) * lower.pow(d - k));
        return out;
    };
    const int dn = f.num().degree();
    const int dd = f.den().degree();
    Poly n = lift(f.num());
    Poly d = lift(f.den());
    if (dd >= dn)
        n = n * lower.pow(dd - dn);
    else
        d = d * lower.pow(dn - dd);
    return RatFunc(n, d);
}

std::string RatFunc::str(const std::string& var) const {
    if (den_.is_one()) return num_.str(var);
    std::ostringstream os;
    const bool n_simple = num_.coeffs().size() <= 1;
    const bool d_simple = den_.coeffs().size() <= 1;
    os << (n_simple ? num_.str(var) : "(" + num_.str(var) + ")");
    os << "/";
    os << (d_simple ? den_.str(var) : "(" + den_.str(var) + ")");
    return os.str();
}

}  // namespace kn
