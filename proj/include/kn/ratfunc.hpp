#pragma once

/// Rational functions on the Riemann sphere and their local expansions.
///
/// A RatFunc is kept in canonical form: num/den coprime (monic gcd) and den
/// monic.  Points of P^1 are exact rationals or the point at infinity; the
/// chart at infinity is w = 1/z, and residue_1form applies the Jacobian
/// dz = -w^{-2} dw explicitly so callers never see a second chart.

#include "kn/poly.hpp"
#include "kn/rat.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kn {

struct RiemannPoint {
    std::optional<Rat> finite;  // nullopt = infinity

    static RiemannPoint at(const Rat& v) { return RiemannPoint{v}; }
    static RiemannPoint infinity() { return RiemannPoint{std::nullopt}; }
    static RiemannPoint parse(const std::string& s);

    bool is_infinity() const { return !finite.has_value(); }
    const Rat& value() const;
    std::string str() const { return is_infinity() ? "inf" : finite->str(); }

    friend bool operator==(const RiemannPoint& a, const RiemannPoint& b) {
        return a.finite == b.finite;
    }
    friend bool operator!=(const RiemannPoint& a, const RiemannPoint& b) { return !(a == b); }
};

enum class ArithKind { add, sub, mul, div };

/// Order sentinel for the zero function (order +infinity everywhere).
inline constexpr int order_infinite = INT32_MAX;

class RatFunc {
public:
    RatFunc() : num_(), den_(Rat(1)) {}
    RatFunc(const Rat& c) : num_(c), den_(Rat(1)) {}
    RatFunc(long c) : num_(Rat(c)), den_(Rat(1)) {}
    explicit RatFunc(const Poly& num) : num_(num), den_(Rat(1)) {}
    RatFunc(const Poly& num, const Poly& den);

    static RatFunc variable() { return RatFunc(Poly::monomial(Rat(1), 1)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RatFunc operator-() const;
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const Rat& s, const RatFunc& f);
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    RatFunc derivative() const;
    RatFunc pow(int e) const;

    /// f(1/w), canonicalized as a rational function of w.
    RatFunc reciprocal_substitute() const;

    std::string str(const std::string& var = "z") const;

private:
    Poly num_;
    Poly den_;  // monic, nonzero, coprime to num_
};

RatFunc rat_func_arith(const RatFunc& a, const RatFunc& b, ArithKind kind);

/// Order of vanishing at p (negative for a pole); at infinity the order of f
/// as a function is deg(den) - deg(num).  Returns order_infinite for f = 0.
int order_at(const RatFunc& f, const RiemannPoint& p);

struct LaurentSlice {
    RiemannPoint at;
    int first_exponent = 0;
    std::vector<Rat> coefficients;  // of (z-a)^k, k = first_exponent, ...; w = 1/z at infinity
};

/// Exact Laurent coefficients of f at p for exponents first..first+count-1.
LaurentSlice laurent_coeffs(const RatFunc& f, const RiemannPoint& p, int first, int count);

/// Residue at p of the 1-form f(z) dz.
Rat residue_1form(const RatFunc& f, const RiemannPoint& p);

/// A Moebius map z -> (a z + b) / (c z + d), ad - bc != 0.
struct Mobius {
    Rat a, b, c, d;

    static Mobius identity() { return {Rat(1), Rat(0), Rat(0), Rat(1)}; }
    /// z -> 1/(z - pivot).
    static Mobius reciprocal_shift(const Rat& pivot) { return {Rat(0), Rat(1), Rat(1), -pivot}; }

    Mobius inverse() const { return {d, -b, -c, a}; }
    RiemannPoint apply(const RiemannPoint& p) const;
    /// Derivative dz'/dz as a rational function of z.
    RatFunc derivative() const;
    bool is_identity() const;
};

/// f composed with m: returns f(m(z)) as a rational function of z.
RatFunc substitute(const RatFunc& f, const Mobius& m);

}  // namespace kn
