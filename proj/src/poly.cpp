#include "kn/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace kn {

Poly Poly::from_coeffs(const std::vector<Rat>& ascending) {
    Poly p;
    for (size_t k = 0; k < ascending.size(); ++k) p.set(static_cast<int>(k), ascending[k]);
    return p;
}

Poly Poly::monomial(const Rat& c, int k) {
    Poly p;
    p.set(k, c);
    return p;
}

Poly Poly::linear_power(const Rat& a, int e) {
    if (e < 0) throw std::invalid_argument("Poly::linear_power: negative exponent");
    Poly base;
    base.set(1, Rat(1));
    base.set(0, -a);
    return base.pow(e);
}

void Poly::set(int k, const Rat& v) {
    if (k < 0) throw std::invalid_argument("Poly::set: negative exponent");
    if (v.is_zero())
        c_.erase(k);
    else
        c_[k] = v;
}

Poly Poly::operator-() const {
    Poly r;
    for (const auto& [k, v] : c_) r.c_.emplace(k, -v);
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [k, v] : o.c_) {
        auto it = c_.find(k);
        if (it == c_.end()) {
            c_.emplace(k, v);
        } else {
            it->second += v;
            if (it->second.is_zero()) c_.erase(it);
        }
    }
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [k, v] : o.c_) {
        auto it = c_.find(k);
        if (it == c_.end()) {
            c_.emplace(k, -v);
        } else {
            it->second -= v;
            if (it->second.is_zero()) c_.erase(it);
        }
    }
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [i, u] : a.c_)
        for (const auto& [j, v] : b.c_) {
            auto it = r.c_.find(i + j);
            if (it == r.c_.end()) {
                r.c_.emplace(i + j, u * v);
            } else {
                it->second += u * v;
            }
        }
    for (auto it = r.c_.begin(); it != r.c_.end();)
        it = it->second.is_zero() ? r.c_.erase(it) : std::next(it);
    return r;
}

Poly operator*(const Rat& s, const Poly& p) {
    Poly r;
    if (s.is_zero()) return r;
    for (const auto& [k, v] : p.c_) r.c_.emplace(k, s * v);
    return r;
}

Poly Poly::derivative() const {
    Poly r;
    for (const auto& [k, v] : c_)
        if (k > 0) r.c_.emplace(k - 1, Rat(k) * v);
    return r;
}

Rat Poly::eval(const Rat& x) const {
    // Horner over the dense range, skipping gaps by powers.
    Rat acc;
    int prev = -1;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        if (prev >= 0) acc = acc * x.pow(prev - it->first);
        acc += it->second;
        prev = it->first;
    }
    if (prev > 0) acc = acc * x.pow(prev);
    return acc;
}

Poly Poly::pow(int e) const {
    if (e < 0) throw std::invalid_argument("Poly::pow: negative exponent");
    Poly r(Rat(1));
    Poly base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        base = (e >>= 1) ? base * base : base;
    }
    return r;
}

std::pair<Poly, Poly> Poly::divrem(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("Poly::divrem: division by zero polynomial");
    Poly q, r = a;
    const int db = b.degree();
    const Rat lb = b.leading();
    while (!r.is_zero() && r.degree() >= db) {
        const int k = r.degree() - db;
        const Rat c = r.leading() / lb;
        Poly t = monomial(c, k);
        q += t;
        r -= t * b;
    }
    return {q, r};
}

Poly Poly::div_exact(const Poly& a, const Poly& b) {
    auto [q, r] = divrem(a, b);
    if (!r.is_zero()) throw std::domain_error("Poly::div_exact: inexact division");
    return q;
}

Poly Poly::gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = divrem(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return leading().inverse() * *this;
}

Poly Poly::taylor_shift(const Rat& a) const {
    // p(z + a) via Horner on the shifted variable.
    Poly shifted_var;
    shifted_var.set(1, Rat(1));
    shifted_var.set(0, a);
    Poly acc;
    int prev = -1;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        if (prev >= 0) acc = acc * shifted_var.pow(prev - it->first);
        acc += Poly(it->second);
        prev = it->first;
    }
    if (prev > 0) acc = acc * shifted_var.pow(prev);
    return acc;
}

Poly Poly::reversed() const {
    Poly r;
    const int d = degree();
    for (const auto& [k, v] : c_) r.c_.emplace(d - k, v);
    return r;
}

int Poly::root_multiplicity(const Rat& a, Poly* quotient) const {
    if (is_zero()) throw std::domain_error("Poly::root_multiplicity: zero polynomial");
    Poly cur = *this;
    int mult = 0;
    if (a.is_zero()) {
        mult = cur.low_exponent();
        if (mult > 0) {
            Poly shifted;
            for (const auto& [k, v] : cur.c_) shifted.c_.emplace(k - mult, v);
            cur = std::move(shifted);
        }
    } else {
        Poly factor;
        factor.set(1, Rat(1));
        factor.set(0, -a);
        while (cur.eval(a).is_zero()) {
            cur = div_exact(cur, factor);
            ++mult;
        }
    }
    if (quotient) *quotient = std::move(cur);
    return mult;
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        const auto& [k, v] = *it;
        const Rat a = abs(v);
        if (first) {
            if (v.sign() < 0) os << "-";
            first = false;
        } else {
            os << (v.sign() < 0 ? " - " : " + ");
        }
        if (k == 0 || !a.is_one()) os << a.str();
        if (k > 0) {
            if (!a.is_one()) os << "*";
            os << var;
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

}  // namespace kn
