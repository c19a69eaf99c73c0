#pragma once

/// Current algebras g (x) A over a marked configuration and their central
/// extensions by function cocycles.  Finite-dimensional Lie algebras are
/// given by explicit structure-constant tables over Q with an invariant
/// symmetric bilinear form.

#include "kn/cocycle.hpp"

#include <string>
#include <vector>

namespace kn {

class FinDimLie {
public:
    /// brackets[i][j] lists (k, c) with [x_i, x_j] = sum c * x_k.
    FinDimLie(int dimension, std::vector<std::vector<std::vector<std::pair<int, Rat>>>> brackets,
              std::vector<std::vector<Rat>> form, std::vector<std::string> labels,
              bool check_axioms = true);

    static FinDimLie sl2();
    static FinDimLie gl(int n);

    int dimension() const { return dim_; }
    const std::string& label(int i) const { return labels_[static_cast<size_t>(i)]; }

    /// Bracket of basis elements as a coefficient vector.
    std::vector<Rat> bracket_basis(int i, int j) const;
    Rat form(int i, int j) const { return form_[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
    Rat trace(int i) const { return trace_[static_cast<size_t>(i)]; }

    /// Axiom violations (antisymmetry, Jacobi, form symmetry/invariance).
    std::vector<std::string> check() const;

private:
    int dim_;
    std::vector<std::vector<std::vector<std::pair<int, Rat>>>> brackets_;
    std::vector<std::vector<Rat>> form_;
    std::vector<std::string> labels_;
    std::vector<Rat> trace_;  // trace of the defining representation, 0 unless gl(n)

    void set_traces(std::vector<Rat> t) { trace_ = std::move(t); }
};

/// Finite sum of tensors x_i (x) f_i with weight-0 forms.
struct CurrentElement {
    std::vector<std::pair<int, Form>> terms;  // (lie basis index, function)

    static CurrentElement tensor(int lie_index, Form f);
    bool is_zero() const;
    CurrentElement& operator+=(const CurrentElement& o);
    friend CurrentElement operator+(CurrentElement a, const CurrentElement& b) { return a += b; }
    /// Combine terms with equal lie index.
    void normalize();
};

struct ExtendedElement {
    CurrentElement current;
    Rat central;

    static ExtendedElement t() { return ExtendedElement{{}, Rat(1)}; }
};

CurrentElement current_bracket(const FinDimLie& lie, const CurrentElement& x,
                               const CurrentElement& y);

/// [x^ (x) f, y^ (x) g] = [x,y] (x) fg + (x,y) gamma(f,g) t.
ExtendedElement extended_bracket(const FinDimLie& lie, const ExtendedElement& a,
                                 const ExtendedElement& b, const Cocycle& gamma);

struct JacobiReport {
    int checked = 0;
    struct Failure {
        std::string triple;
        std::string witness;
    };
    std::vector<Failure> failures;

    bool ok() const { return failures.empty(); }
};

/// Jacobi identity of the extended bracket on all homogeneous triples
/// x (x) A_{n,p} with degrees in the window.
JacobiReport jacobi_check(const MarkedConfig& cfg, const FinDimLie& lie, const Cocycle& gamma,
                          const DegreeWindow& window);

/// The gl(n) cocycle tr(x)tr(y) psi(f,g) built from an arbitrary
/// antisymmetric form psi on A; evaluates on pairs of current elements.
class ReductiveCocycle {
public:
    ReductiveCocycle(FinDimLie lie, Cocycle psi);

    Rat operator()(const CurrentElement& x, const CurrentElement& y) const;
    const Cocycle& psi() const { return psi_; }
    const FinDimLie& lie() const { return lie_; }

private:
    FinDimLie lie_;
    Cocycle psi_;
};

ReductiveCocycle reductive_counterexample(const MarkedConfig& cfg, int n,
                                          const Cocycle& psi);

/// Cocycle condition of a current-algebra 2-form on homogeneous triples.
JacobiReport current_cocycle_condition_check(const MarkedConfig& cfg, const ReductiveCocycle& gamma,
                                             const DegreeWindow& window);

}  // namespace kn
