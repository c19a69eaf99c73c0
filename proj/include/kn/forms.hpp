#pragma once

/// Marked-point configurations on P^1 and the graded basis of meromorphic
/// weight-lambda forms attached to them.
///
/// A configuration splits the marked points into in-points I (all finite)
/// and out-points O (possibly containing infinity once).  For each weight
/// lambda, degree n and in-point index p there is a unique basis form with
/// prescribed orders at the marked points, normalized to leading coefficient
/// one at P_p.  The Krichever-Novikov pairing couples weights lambda and
/// 1-lambda by residues over the in-points and is the tool for expanding
/// arbitrary forms in the basis.

#include "kn/ratfunc.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

namespace kn {

/// A meromorphic section f(z) dz^lambda in the global chart.
struct Form {
    int weight = 0;
    RatFunc func;

    bool is_zero() const { return func.is_zero(); }
    std::string str(const std::string& var = "z") const;

    friend bool operator==(const Form& a, const Form& b) {
        return a.weight == b.weight && a.func == b.func;
    }
    friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }
};

struct BasisIndex {
    int weight = 0;
    int degree = 0;
    int point = 1;  // 1..K
};

struct OrderPrescription {
    std::vector<int> in_orders;
    std::vector<int> out_orders;

    int total() const;
};

/// Finite expansion of a form in the graded basis of its weight.
struct Expansion {
    int weight = 0;
    std::map<std::pair<int, int>, Rat> coeff;  // (degree, point) -> coefficient

    bool empty() const { return coeff.empty(); }
    int degree_min() const;
    int degree_max() const;
    Rat at(int n, int p) const;
};

class MarkedConfig {
public:
    MarkedConfig() = default;
    MarkedConfig(std::vector<Rat> in_points, std::vector<RiemannPoint> out_points);

    const std::vector<Rat>& in_points() const { return in_; }
    const std::vector<RiemannPoint>& out_points() const { return out_; }
    int num_in() const { return static_cast<int>(in_.size()); }
    int num_out() const { return static_cast<int>(out_.size()); }

    RiemannPoint in_point(int p) const;   // 1-based
    RiemannPoint out_point(int j) const;  // 1-based
    bool has_infinite_out() const;
    bool is_marked(const RiemannPoint& pt) const;
    /// All marked points, in-points first.
    std::vector<RiemannPoint> all_points() const;

    /// Violations of the configuration invariants; empty means valid.
    std::vector<std::string> validate() const;
    void require_valid() const;

private:
    std::vector<Rat> in_;
    std::vector<RiemannPoint> out_;

    struct Cache {
        std::mutex mu;
        std::map<std::tuple<int, int, int>, Form> basis;
        std::map<std::tuple<int, std::string, std::string>, Expansion> expansions;
    };
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();

    friend Form basis_element(const MarkedConfig&, const BasisIndex&);
    friend Expansion expand_in_basis(const MarkedConfig&, const Form&);
};

inline std::vector<std::string> validate_config(const MarkedConfig& cfg) { return cfg.validate(); }

/// Prescribed orders of the weight-lambda basis form of degree n at in-point
/// index p: (n+1-lambda) - delta_i^p at P_i, and at the out-points a recipe
/// that sums the divisor degree to -2*lambda.
OrderPrescription order_prescription(const MarkedConfig& cfg, int lambda, int n, int p);

/// The unique normalized basis form for the given index.
Form basis_element(const MarkedConfig& cfg, const BasisIndex& idx);
inline Form basis_element(const MarkedConfig& cfg, int lambda, int n, int p) {
    return basis_element(cfg, BasisIndex{lambda, n, p});
}

/// Order of the form at a point of P^1 (at infinity the chart factor
/// dz^lambda contributes -2*lambda to the order of the function part).
int form_order_at(const Form& f, const RiemannPoint& p);

/// True when the form is holomorphic outside the marked points.
bool poles_only_at_marked(const MarkedConfig& cfg, const Form& f);

/// Residue pairing between weights lambda and 1-lambda, evaluated over the
/// in-points and cross-checked against minus the out-point sum.
Rat kn_pairing(const MarkedConfig& cfg, const Form& f, const Form& g);

Expansion expand_in_basis(const MarkedConfig& cfg, const Form& f);

/// Rebuild the form from expansion coefficients.
Form form_from_expansion(const MarkedConfig& cfg, const Expansion& ex);

/// The configuration with the roles of I and O interchanged.  When O contains
/// infinity the whole configuration is first moved by z -> 1/(z - c) (with c
/// the smallest non-negative integer avoiding the out-points) so the new
/// in-points stay finite; `map` records the substitution used.
struct InvertedConfig {
    MarkedConfig config;
    Mobius map;

    /// Transport of a form to the new coordinate (Jacobian included).
    Form transport(const Form& f) const;
};

InvertedConfig inverted_config(const MarkedConfig& cfg);

}  // namespace kn
