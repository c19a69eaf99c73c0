#pragma once

/// Univariate polynomials with exact rational coefficients.
///
/// Coefficients are stored sparsely by exponent; zero coefficients are never
/// kept, so the zero polynomial is the empty map and equality is structural.

#include "kn/rat.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace kn {

class Poly {
public:
    Poly() = default;
    Poly(const Rat& c) { set(0, c); }
    Poly(long c) { set(0, Rat(c)); }

    /// Coefficients in ascending exponent order, index = exponent.
    static Poly from_coeffs(const std::vector<Rat>& ascending);
    /// The monomial c * z^k.
    static Poly monomial(const Rat& c, int k);
    /// (z - a)^e for e >= 0.
    static Poly linear_power(const Rat& a, int e);

    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_.begin()->first == 0 && c_.begin()->second.is_one(); }
    /// Degree; -1 for the zero polynomial.
    int degree() const { return c_.empty() ? -1 : c_.rbegin()->first; }
    /// Lowest stored exponent (order of vanishing at 0); -1 for zero.
    int low_exponent() const { return c_.empty() ? -1 : c_.begin()->first; }

    Rat coeff(int k) const {
        auto it = c_.find(k);
        return it == c_.end() ? Rat() : it->second;
    }
    Rat leading() const { return c_.empty() ? Rat() : c_.rbegin()->second; }
    void set(int k, const Rat& v);

    const std::map<int, Rat>& coeffs() const { return c_; }

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    friend Poly operator*(const Rat& s, const Poly& p);

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly derivative() const;
    Rat eval(const Rat& x) const;
    Poly pow(int e) const;

    /// Quotient and remainder with deg(rem) < deg(divisor).
    static std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b);
    /// Exact quotient; throws if the division leaves a remainder.
    static Poly div_exact(const Poly& a, const Poly& b);
    /// Monic gcd; gcd(0,0) = 0.
    static Poly gcd(Poly a, Poly b);

    Poly monic() const;
    /// p(z + a), as a polynomial in z.
    Poly taylor_shift(const Rat& a) const;
    /// z^degree * p(1/z): the coefficient-reversed polynomial.
    Poly reversed() const;
    /// Multiplicity of the root a (0 if p(a) != 0); also divides it out when
    /// `quotient` is non-null.
    int root_multiplicity(const Rat& a, Poly* quotient = nullptr) const;

    std::string str(const std::string& var = "z") const;

private:
    std::map<int, Rat> c_;
};

}  // namespace kn
