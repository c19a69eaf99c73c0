#pragma once

/// Geometric 2-cocycles on the function / vector-field / differential
/// operator algebras of a marked configuration, their coboundaries, and the
/// machinery around them: property checkers, locality scans, level-zero
/// parameter extraction and the constructive decomposition of
/// bounded-above cocycles into point cocycles plus a finite coboundary.
///
/// Cycles are formal integer combinations of small circles around marked
/// points; all integrals reduce to residue sums.  The vector cocycle carries
/// the prefactor 1/12 relative to the plain residue sum so that the classical
/// configuration reproduces (n^3 - n)/12.

#include "kn/algebra.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace kn {

/// Formal integer combination of circles around marked points.
struct CycleSpec {
    // ('P', i) for in-point circles, ('Q', j) for out-point circles; 1-based.
    std::map<std::pair<char, int>, int> weights;

    static CycleSpec separating(const MarkedConfig& cfg);
    static CycleSpec in_circle(int i);
    static CycleSpec out_circle(int j);
    /// Syntax: "sep" | "P:i" | "Q:j" | signed combinations "2*P:1-1*Q:2".
    static CycleSpec parse(const std::string& text, const MarkedConfig& cfg);

    std::vector<std::pair<RiemannPoint, int>> resolve(const MarkedConfig& cfg) const;
    std::string str() const;
};

/// Projective connection R = R0 + extra with R0 = 0 in the global chart.
struct ProjConn {
    Form extra{2, RatFunc()};
};

/// Affine connection T = T0 + extra; T0 is the reference connection with a
/// single simple pole at the first out-point.
struct AffConn {
    Form extra{1, RatFunc()};
};

/// The reference affine connection T0 in the global chart: 0 when infinity is
/// an out-point (the w-chart expression 2/w carries the pole), otherwise
/// 2/(z - q1).
RatFunc affine_connection_default(const MarkedConfig& cfg);

enum class ConnectionKind { affine, projective };

/// Schwarzian derivative h'''/h' - (3/2)(h''/h')^2.
RatFunc schwarzian(const RatFunc& h);

struct ConnTransformReport {
    RatFunc w_chart;           // the connection expressed in the chart w = 1/z
    int pole_order_at_infinity = 0;  // pole order of w_chart at w = 0 (0 if holomorphic)
    bool round_trip_ok = false;      // transforming back recovers the input
};

ConnTransformReport connection_transform_check(const RatFunc& conn, ConnectionKind kind);

/// Direct cocycle values by residue calculus.
Rat gamma_function(const MarkedConfig& cfg, const CycleSpec& cycle, const Form& g, const Form& h);
Rat gamma_vector(const MarkedConfig& cfg, const CycleSpec& cycle, const ProjConn& R, const Form& e,
                 const Form& f);
Rat gamma_mixing(const MarkedConfig& cfg, const CycleSpec& cycle, const AffConn& T, const Form& e,
                 const Form& g);

enum class CocycleKind { function, vector, mixing, d1 };

std::string cocycle_kind_name(CocycleKind k);

/// Finite dual sum defining a coboundary: V lives in weight-1 duals (mixing
/// coboundary E_V), W in weight-2 duals (vector coboundary D_W).
struct CoboundaryData {
    enum class Kind { V, W } kind = Kind::W;
    std::map<std::pair<int, int>, Rat> terms;  // (n,r) -> coefficient

    /// The dual sum as an actual meromorphic form (weight 1 for V, 2 for W).
    Form as_form(const MarkedConfig& cfg) const;
    bool empty() const;
};

/// Value of the coboundary on its natural arguments: D_W(e,f) = <W,[e,f]> for
/// W-kind (two vector fields), E_V(e,g) = <V, e.g> for V-kind.
Rat coboundary(const MarkedConfig& cfg, const CoboundaryData& data, const Form& x, const Form& y);

/// An immutable exact bilinear evaluator on pairs of homogeneous elements,
/// extended canonically to pairs in D^1.
class Cocycle {
public:
    using FormPairFn = std::function<Rat(const Form&, const Form&)>;
    using D1PairFn = std::function<Rat(const D1Element&, const D1Element&)>;

    Cocycle() = default;

    static Cocycle function_kind(FormPairFn eval, std::string provenance);
    static Cocycle vector_kind(FormPairFn eval, std::string provenance);
    /// core evaluates ordered (vector field, function) pairs; the evaluator
    /// extends antisymmetrically.
    static Cocycle mixing_kind(FormPairFn core, std::string provenance);
    static Cocycle d1_kind(D1PairFn eval, std::string provenance);

    /// Geometric cocycles.
    static Cocycle geometric_function(const MarkedConfig& cfg, const CycleSpec& cycle);
    static Cocycle geometric_vector(const MarkedConfig& cfg, const CycleSpec& cycle,
                                    const ProjConn& R);
    static Cocycle geometric_mixing(const MarkedConfig& cfg, const CycleSpec& cycle,
                                    const AffConn& T);
    /// Coboundary evaluators: W -> vector kind, V -> mixing kind.
    static Cocycle from_coboundary(const MarkedConfig& cfg, const CoboundaryData& data);
    /// Function-kind cocycle from a finite antisymmetric table on basis pairs
    /// ((n,p),(m,r)) -> value; the transposed entries are implied.
    static Cocycle from_table(const MarkedConfig& cfg,
                              const std::map<std::pair<std::pair<int, int>, std::pair<int, int>>, Rat>& table,
                              std::string provenance = "table");
    static Cocycle linear_combination(const std::vector<std::pair<Rat, Cocycle>>& parts);

    Cocycle scaled(const Rat& s) const;
    /// The canonical extension to pairs of differential operators as a
    /// d1-kind evaluator (vector: pullback along the projection, function:
    /// evaluation on the function parts, mixing: antisymmetric extension).
    Cocycle as_d1() const;

    CocycleKind kind() const { return kind_; }
    const std::string& provenance() const { return provenance_; }

    /// Evaluate on pure forms; the weights must match the kind (mixing
    /// accepts both orders and function/vector arguments of its own algebra).
    Rat operator()(const Form& x, const Form& y) const;
    /// Evaluate on differential operators via the canonical extension.
    Rat operator()(const D1Element& x, const D1Element& y) const;

private:
    CocycleKind kind_ = CocycleKind::function;
    std::string provenance_;
    FormPairFn form_eval_;  // function/vector: plain; mixing: ordered core
    D1PairFn d1_eval_;      // d1 kind only
};

enum class CocycleProperty { antisymmetry, cocycle_condition, multiplicative, l_invariant };

struct SampleTriple {
    D1Element a, b, c;
    std::string label;
};

struct PropertyReport {
    CocycleProperty property{};
    int checked = 0;
    struct Failure {
        std::string sample;
        Rat residual;
    };
    std::vector<Failure> failures;

    bool ok() const { return failures.empty(); }
};

/// Deterministic pseudo-random basis triples for property checks.  Parts are
/// chosen per property: functions for multiplicative, (e,g,h) for
/// l_invariant, mixed D1 elements otherwise.
std::vector<SampleTriple> sample_triples(const MarkedConfig& cfg, CocycleProperty property,
                                         const DegreeWindow& window, int count, uint64_t seed);

PropertyReport check_cocycle_properties(const MarkedConfig& cfg, const Cocycle& gamma,
                                        CocycleProperty property,
                                        const std::vector<SampleTriple>& samples);

struct ScanWindow {
    int level_lo = -8, level_hi = 8;
    int deg_lo = -8, deg_hi = 8;
};

struct LocalityReport {
    ScanWindow window;
    std::set<int> nonzero_levels;
    std::optional<int> upper_bound;  // established only when strictly inside the window
    std::optional<int> lower_bound;
    enum class Verdict { local_in_window, bounded_above_only, unbounded_in_window } verdict =
        Verdict::local_in_window;
    /// One witness pair per nonzero level (labels only).
    std::map<int, std::string> witnesses;
};

std::string verdict_name(LocalityReport::Verdict v);

LocalityReport locality_scan(const MarkedConfig& cfg, const Cocycle& gamma,
                             const ScanWindow& window);

struct LevelZeroParams {
    std::vector<Rat> alpha;  // per in-point index r = 1..K
    std::vector<Rat> b;      // empty for function kind
};

LevelZeroParams extract_level_zero(const MarkedConfig& cfg, const Cocycle& gamma);

struct FormulaCheckReport {
    int checked = 0;
    struct Failure {
        int n, r, s;
        Rat expected, actual;
    };
    std::vector<Failure> failures;

    bool ok() const { return failures.empty(); }
};

/// Verifies the closed-form level-zero values against direct evaluation for
/// 0 <= n <= n_max and all in-point indices.
FormulaCheckReport level_zero_formula_check(const MarkedConfig& cfg, const Cocycle& gamma,
                                            int n_max);

struct Decomposition {
    std::vector<Rat> alpha;  // coefficients of the point cocycles, r = 1..K
    CoboundaryData cob;      // empty for function kind
};

/// Reconstructs a bounded-above cocycle as sum of point cocycles plus a
/// finite coboundary by the descending-level recursion, then verifies the
/// reconstruction on every pair in the window.  Function-kind inputs must
/// pass the multiplicative or L-invariance check first.
Decomposition decompose_bounded(const MarkedConfig& cfg, const Cocycle& gamma,
                                const ScanWindow& window);

/// Rebuild the cocycle described by a decomposition (for round-trips).
Cocycle cocycle_from_decomposition(const MarkedConfig& cfg, CocycleKind kind,
                                   const Decomposition& dec);

struct D1Split {
    Cocycle function_part;
    Cocycle mixing_part;
    Cocycle vector_part;
};

D1Split split_d1_cocycle(const Cocycle& gamma);

/// Thrown when a function cocycle fails the L-invariance required for the
/// extension to D^1; carries the violating triple.
struct LInvarianceError : std::domain_error {
    explicit LInvarianceError(const std::string& witness)
        : std::domain_error("extend_function_cocycle_to_d1: not L-invariant at " + witness) {}
};

Cocycle extend_function_cocycle_to_d1(const MarkedConfig& cfg, const Cocycle& gamma,
                                      const std::vector<SampleTriple>& samples);

}  // namespace kn
