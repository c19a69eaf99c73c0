#pragma once

/// The algebra operations on forms: function multiplication, Lie derivative,
/// vector-field bracket and the degree-<=1 differential operator bracket,
/// plus exact structure-constant tables over a degree window.

#include "kn/forms.hpp"

#include <map>
#include <string>
#include <vector>

namespace kn {

/// A differential operator of degree <= 1: function part plus vector field.
struct D1Element {
    Form fun{0, RatFunc()};
    Form vf{-1, RatFunc()};

    static D1Element function(Form g);
    static D1Element vector_field(Form e);
    bool is_zero() const { return fun.is_zero() && vf.is_zero(); }
};

Form multiply_forms(const Form& f, const Form& g);
/// Lie derivative of a weight-lambda form g along the vector field e.
Form lie_derivative(const Form& e, const Form& g);
Form vf_bracket(const Form& e, const Form& f);
D1Element d1_bracket(const D1Element& a, const D1Element& b);

enum class OpKind { fun_mul, vf_bracket, lie_derivative, d1_bracket };

std::string op_kind_name(OpKind op);

/// Basis label inside D^1: a function (weight 0) or vector field (weight -1)
/// basis element.  Plain algebras use part = fun or vf uniformly.
struct D1BasisKey {
    int part = 0;  // 0 = function, 1 = vector field
    int degree = 0;
    int point = 1;

    friend auto operator<=>(const D1BasisKey&, const D1BasisKey&) = default;
};

struct DegreeWindow {
    int lo = 0;
    int hi = 0;  // inclusive

    bool contains(int n) const { return lo <= n && n <= hi; }
};

/// Exact expansion coefficients of one bilinear operation over a window,
/// with the observed almost-grading shifts.
struct StructureTable {
    OpKind op_kind = OpKind::fun_mul;
    int lambda = 0;  // module weight for lie_derivative; ignored otherwise
    DegreeWindow window;
    // ((n,p),(m,r)) -> (h,t) -> coefficient
    std::map<std::pair<D1BasisKey, D1BasisKey>, std::map<D1BasisKey, Rat>> entries;
    int lower_shift = 0;
    int upper_shift = 0;
};

StructureTable structure_table(const MarkedConfig& cfg, OpKind op, int lambda,
                               const DegreeWindow& window);

struct BoundaryCheckReport {
    struct Violation {
        D1BasisKey left, right;
        Rat expected, actual;
    };
    int pairs_checked = 0;
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
};

/// Checks that the degree-(n+m) coefficient of every pair in the table equals
/// the exact boundary value: delta_p^r for products, delta_p^r (m-n) for the
/// vector bracket, delta_p^r (m + lambda n) for the Lie derivative.
BoundaryCheckReport boundary_coefficient_check(const MarkedConfig& cfg, const StructureTable& table);

}  // namespace kn
