#include "kn/cocycle.hpp"

#include "kn/parallel.hpp"
#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace kn {

// ---------------------------------------------------------------------------
// cycles

CycleSpec CycleSpec::separating(const MarkedConfig& cfg) {
    CycleSpec c;
    for (int i = 1; i <= cfg.num_in(); ++i) c.weights[{'P', i}] = 1;
    return c;
}

CycleSpec CycleSpec::in_circle(int i) {
    CycleSpec c;
    c.weights[{'P', i}] = 1;
    return c;
}

CycleSpec CycleSpec::out_circle(int j) {
    CycleSpec c;
    c.weights[{'Q', j}] = 1;
    return c;
}

CycleSpec CycleSpec::parse(const std::string& text, const MarkedConfig& cfg) {
    if (text == "sep") return separating(cfg);
    CycleSpec c;
    std::string t;
    for (char ch : text)
        if (!isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
    size_t pos = 0;
    int sign = 1;
    while (pos < t.size()) {
        if (t[pos] == '+') {
            sign = 1;
            ++pos;
            continue;
        }
        if (t[pos] == '-') {
            sign = -1;
            ++pos;
            continue;
        }
        int mult = 1;
        size_t digits = pos;
        while (digits < t.size() && isdigit(static_cast<unsigned char>(t[digits]))) ++digits;
        if (digits > pos && digits < t.size() && t[digits] == '*') {
            mult = std::stoi(t.substr(pos, digits - pos));
            pos = digits + 1;
        }
        if (pos >= t.size() || (t[pos] != 'P' && t[pos] != 'Q'))
            throw std::invalid_argument("CycleSpec: expected P:i or Q:j in '" + text + "'");
        const char side = t[pos];
        if (pos + 1 >= t.size() || t[pos + 1] != ':')
            throw std::invalid_argument("CycleSpec: expected ':' in '" + text + "'");
        pos += 2;
        size_t end = pos;
        while (end < t.size() && isdigit(static_cast<unsigned char>(t[end]))) ++end;
        if (end == pos) throw std::invalid_argument("CycleSpec: missing index in '" + text + "'");
        const int idx = std::stoi(t.substr(pos, end - pos));
        pos = end;
        c.weights[{side, idx}] += sign * mult;
        sign = 1;
    }
    c.resolve(cfg);  // validates indices
    return c;
}

std::vector<std::pair<RiemannPoint, int>> CycleSpec::resolve(const MarkedConfig& cfg) const {
    std::vector<std::pair<RiemannPoint, int>> out;
    bool any = false;
    for (const auto& [key, w] : weights) {
        if (w == 0) continue;
        any = true;
        const auto& [side, idx] = key;
        out.emplace_back(side == 'P' ? cfg.in_point(idx) : cfg.out_point(idx), w);
    }
    if (!any) throw std::invalid_argument("CycleSpec: no nonzero weight");
    return out;
}

std::string CycleSpec::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, w] : weights) {
        if (w == 0) continue;
        if (!first) os << (w > 0 ? "+" : "");
        first = false;
        if (w != 1) os << w << "*";
        os << key.first << ":" << key.second;
    }
    return first ? "0" : os.str();
}

// ---------------------------------------------------------------------------
// connections

RatFunc affine_connection_default(const MarkedConfig& cfg) {
    cfg.require_valid();
    if (cfg.has_infinite_out()) return RatFunc();
    const RiemannPoint q1 = cfg.out_point(1);
    Poly den;
    den.set(1, Rat(1));
    den.set(0, -q1.value());
    return RatFunc(Poly(Rat(2)), den);
}

RatFunc schwarzian(const RatFunc& h) {
    const RatFunc h1 = h.derivative();
    const RatFunc h2 = h1.derivative();
    const RatFunc h3 = h2.derivative();
    return h3 / h1 - Rat(3, 2) * ((h2 / h1) * (h2 / h1));
}

ConnTransformReport connection_transform_check(const RatFunc& conn, ConnectionKind kind) {
    // Transition w = f(z) = 1/z.  The law reads C_w(f(z)) * f'(z)^k =
    // C_z(z) + corr(f), with k = 1, corr = f''/f' for affine connections and
    // k = 2, corr = S(f) for projective ones.
    const Mobius flip{Rat(0), Rat(1), Rat(1), Rat(0)};  // z -> 1/z, self-inverse
    const RatFunc z = RatFunc::variable();
    const RatFunc f = RatFunc(Poly(Rat(1)), Poly::monomial(Rat(1), 1));  // 1/z
    const RatFunc f1 = f.derivative();
    const int k = kind == ConnectionKind::affine ? 1 : 2;
    const RatFunc corr =
        kind == ConnectionKind::affine ? f.derivative().derivative() / f1 : schwarzian(f);

    // g(z) := (C_z + corr) / f'^k; then C_w(w) = g(1/w).
    const RatFunc g = (conn + corr) / f1.pow(k);
    ConnTransformReport report;
    report.w_chart = substitute(g, flip);

    const int ord = order_at(report.w_chart, RiemannPoint::at(Rat(0)));
    report.pole_order_at_infinity = (ord == order_infinite || ord >= 0) ? 0 : -ord;

    // Round trip back with the inverse transition (also 1/.); the correction
    // terms must cancel exactly.
    const RatFunc back = (report.w_chart + corr) / f1.pow(k);
    report.round_trip_ok = substitute(back, flip) == conn;
    return report;
}

// ---------------------------------------------------------------------------
// geometric cocycle values

namespace {

Rat cycle_residue_sum(const MarkedConfig& cfg, const CycleSpec& cycle, const RatFunc& integrand) {
    Rat acc;
    for (const auto& [pt, w] : cycle.resolve(cfg))
        acc += Rat(w) * residue_1form(integrand, pt);
    return acc;
}

void require_weight(const Form& f, int w, const char* who) {
    if (f.weight != w)
        throw std::invalid_argument(std::string(who) + ": argument has wrong weight");
}

}  // namespace

Rat gamma_function(const MarkedConfig& cfg, const CycleSpec& cycle, const Form& g, const Form& h) {
    require_weight(g, 0, "gamma_function");
    require_weight(h, 0, "gamma_function");
    return cycle_residue_sum(cfg, cycle, g.func * h.func.derivative());
}

Rat gamma_vector(const MarkedConfig& cfg, const CycleSpec& cycle, const ProjConn& R, const Form& e,
                 const Form& f) {
    require_weight(e, -1, "gamma_vector");
    require_weight(f, -1, "gamma_vector");
    const RatFunc& a = e.func;
    const RatFunc& b = f.func;
    const RatFunc a1 = a.derivative();
    const RatFunc b1 = b.derivative();
    const RatFunc a3 = a1.derivative().derivative();
    const RatFunc b3 = b1.derivative().derivative();
    RatFunc integrand = Rat(1, 2) * (a3 * b - a * b3);
    if (!R.extra.is_zero()) integrand -= R.extra.func * (a1 * b - a * b1);
    return Rat(1, 12) * cycle_residue_sum(cfg, cycle, integrand);
}

Rat gamma_mixing(const MarkedConfig& cfg, const CycleSpec& cycle, const AffConn& T, const Form& e,
                 const Form& g) {
    require_weight(e, -1, "gamma_mixing");
    require_weight(g, 0, "gamma_mixing");
    const RatFunc t = affine_connection_default(cfg) + T.extra.func;
    const RatFunc g1 = g.func.derivative();
    const RatFunc integrand = e.func * g1.derivative() + t * (e.func * g1);
    return cycle_residue_sum(cfg, cycle, integrand);
}

// ---------------------------------------------------------------------------
// coboundaries

Form CoboundaryData::as_form(const MarkedConfig& cfg) const {
    const int weight = kind == Kind::V ? 1 : 2;
    Form sum{weight, RatFunc()};
    for (const auto& [key, c] : terms) {
        if (c.is_zero()) continue;
        // omega^{n,r} resp. Omega^{n,r} is the weight-lambda basis element of
        // degree -n (the dual of degree n).
        sum.func += c * basis_element(cfg, weight, -key.first, key.second).func;
    }
    return sum;
}

bool CoboundaryData::empty() const {
    for (const auto& [key, c] : terms)
        if (!c.is_zero()) return false;
    return true;
}

Rat coboundary(const MarkedConfig& cfg, const CoboundaryData& data, const Form& x, const Form& y) {
    if (data.kind == CoboundaryData::Kind::W) {
        require_weight(x, -1, "coboundary(W)");
        require_weight(y, -1, "coboundary(W)");
        if (data.empty()) return Rat();
        return kn_pairing(cfg, data.as_form(cfg), vf_bracket(x, y));
    }
    require_weight(x, -1, "coboundary(V)");
    require_weight(y, 0, "coboundary(V)");
    if (data.empty()) return Rat();
    return kn_pairing(cfg, data.as_form(cfg), lie_derivative(x, y));
}

// ---------------------------------------------------------------------------
// the evaluator

std::string cocycle_kind_name(CocycleKind k) {
    switch (k) {
        case CocycleKind::function: return "function";
        case CocycleKind::vector: return "vector";
        case CocycleKind::mixing: return "mixing";
        case CocycleKind::d1: return "d1";
    }
    return "?";
}

Cocycle Cocycle::function_kind(FormPairFn eval, std::string provenance) {
    Cocycle c;
    c.kind_ = CocycleKind::function;
    c.form_eval_ = std::move(eval);
    c.provenance_ = std::move(provenance);
    return c;
}

Cocycle Cocycle::vector_kind(FormPairFn eval, std::string provenance) {
    Cocycle c;
    c.kind_ = CocycleKind::vector;
    c.form_eval_ = std::move(eval);
    c.provenance_ = std::move(provenance);
    return c;
}

Cocycle Cocycle::mixing_kind(FormPairFn core, std::string provenance) {
    Cocycle c;
    c.kind_ = CocycleKind::mixing;
    c.form_eval_ = std::move(core);
    c.provenance_ = std::move(provenance);
    return c;
}

Cocycle Cocycle::d1_kind(D1PairFn eval, std::string provenance) {
    Cocycle c;
    c.kind_ = CocycleKind::d1;
    c.d1_eval_ = std::move(eval);
    c.provenance_ = std::move(provenance);
    return c;
}

Cocycle Cocycle::geometric_function(const MarkedConfig& cfg, const CycleSpec& cycle) {
    return function_kind(
        [cfg, cycle](const Form& g, const Form& h) { return gamma_function(cfg, cycle, g, h); },
        "geometric(function, " + cycle.str() + ")");
}

Cocycle Cocycle::geometric_vector(const MarkedConfig& cfg, const CycleSpec& cycle,
                                  const ProjConn& R) {
    return vector_kind(
        [cfg, cycle, R](const Form& e, const Form& f) { return gamma_vector(cfg, cycle, R, e, f); },
        "geometric(vector, " + cycle.str() + ")");
}

Cocycle Cocycle::geometric_mixing(const MarkedConfig& cfg, const CycleSpec& cycle,
                                  const AffConn& T) {
    return mixing_kind(
        [cfg, cycle, T](const Form& e, const Form& g) { return gamma_mixing(cfg, cycle, T, e, g); },
        "geometric(mixing, " + cycle.str() + ")");
}

Cocycle Cocycle::from_coboundary(const MarkedConfig& cfg, const CoboundaryData& data) {
    if (data.kind == CoboundaryData::Kind::W)
        return vector_kind(
            [cfg, data](const Form& e, const Form& f) { return coboundary(cfg, data, e, f); },
            "coboundary(W)");
    return mixing_kind(
        [cfg, data](const Form& e, const Form& g) { return coboundary(cfg, data, e, g); },
        "coboundary(V)");
}

Cocycle Cocycle::from_table(
    const MarkedConfig& cfg,
    const std::map<std::pair<std::pair<int, int>, std::pair<int, int>>, Rat>& table,
    std::string provenance) {
    auto lookup = [table](const std::pair<int, int>& a, const std::pair<int, int>& b) {
        auto it = table.find({a, b});
        if (it != table.end()) return it->second;
        it = table.find({b, a});
        if (it != table.end()) return -it->second;
        return Rat();
    };
    return function_kind(
        [cfg, lookup](const Form& g, const Form& h) {
            Rat acc;
            const Expansion eg = expand_in_basis(cfg, g);
            const Expansion eh = expand_in_basis(cfg, h);
            for (const auto& [ka, ca] : eg.coeff)
                for (const auto& [kb, cb] : eh.coeff) acc += ca * cb * lookup(ka, kb);
            return acc;
        },
        std::move(provenance));
}

Cocycle Cocycle::linear_combination(const std::vector<std::pair<Rat, Cocycle>>& parts) {
    if (parts.empty()) throw std::invalid_argument("linear_combination: empty");
    bool uniform = true;
    for (const auto& [s, c] : parts)
        if (c.kind() != parts.front().second.kind()) uniform = false;
    if (uniform && parts.front().second.kind() != CocycleKind::d1) {
        const CocycleKind kind = parts.front().second.kind();
        auto eval = [parts](const Form& x, const Form& y) {
            Rat acc;
            for (const auto& [s, c] : parts) acc += s * c.form_eval_(x, y);
            return acc;
        };
        Cocycle c;
        c.kind_ = kind;
        c.form_eval_ = eval;
        c.provenance_ = "linear-combination";
        return c;
    }
    return d1_kind(
        [parts](const D1Element& x, const D1Element& y) {
            Rat acc;
            for (const auto& [s, c] : parts) acc += s * c(x, y);
            return acc;
        },
        "linear-combination");
}

Cocycle Cocycle::scaled(const Rat& s) const {
    return linear_combination({{s, *this}});
}

Cocycle Cocycle::as_d1() const {
    if (kind_ == CocycleKind::d1) return *this;
    const Cocycle self = *this;
    return d1_kind([self](const D1Element& x, const D1Element& y) { return self(x, y); },
                   "d1-extension of " + provenance_);
}

Rat Cocycle::operator()(const Form& x, const Form& y) const {
    switch (kind_) {
        case CocycleKind::function:
            require_weight(x, 0, "cocycle(function)");
            require_weight(y, 0, "cocycle(function)");
            return form_eval_(x, y);
        case CocycleKind::vector:
            require_weight(x, -1, "cocycle(vector)");
            require_weight(y, -1, "cocycle(vector)");
            return form_eval_(x, y);
        case CocycleKind::mixing:
            if (x.weight == -1 && y.weight == 0) return form_eval_(x, y);
            if (x.weight == 0 && y.weight == -1) return -form_eval_(y, x);
            if (x.weight == y.weight && (x.weight == 0 || x.weight == -1)) return Rat();
            throw std::invalid_argument("cocycle(mixing): bad weights");
        case CocycleKind::d1: {
            auto lift = [](const Form& f) {
                return f.weight == 0 ? D1Element::function(f) : D1Element::vector_field(f);
            };
            return d1_eval_(lift(x), lift(y));
        }
    }
    throw std::logic_error("cocycle: bad kind");
}

Rat Cocycle::operator()(const D1Element& x, const D1Element& y) const {
    switch (kind_) {
        case CocycleKind::function: return form_eval_(x.fun, y.fun);
        case CocycleKind::vector: return form_eval_(x.vf, y.vf);
        case CocycleKind::mixing: {
            Rat acc;
            if (!x.vf.is_zero() && !y.fun.is_zero()) acc += form_eval_(x.vf, y.fun);
            if (!y.vf.is_zero() && !x.fun.is_zero()) acc -= form_eval_(y.vf, x.fun);
            return acc;
        }
        case CocycleKind::d1: return d1_eval_(x, y);
    }
    throw std::logic_error("cocycle: bad kind");
}

// ---------------------------------------------------------------------------
// property checks

namespace {

class SplitMix {
public:
    explicit SplitMix(uint64_t seed) : state_(seed) {}
    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    int in_range(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(next() % static_cast<uint64_t>(hi - lo + 1));
    }

private:
    uint64_t state_;
};

std::string d1_label(const D1Element& x) {
    std::ostringstream os;
    if (!x.fun.is_zero() && !x.vf.is_zero())
        os << "(" << x.fun.str() << ", " << x.vf.str() << ")";
    else if (!x.vf.is_zero())
        os << x.vf.str();
    else
        os << x.fun.str();
    return os.str();
}

}  // namespace

std::vector<SampleTriple> sample_triples(const MarkedConfig& cfg, CocycleProperty property,
                                         const DegreeWindow& window, int count, uint64_t seed) {
    cfg.require_valid();
    SplitMix rng(seed);
    const int K = cfg.num_in();
    std::vector<SampleTriple> out;
    out.reserve(static_cast<size_t>(count));
    auto draw = [&](int part) {
        const int n = rng.in_range(window.lo, window.hi);
        const int p = rng.in_range(1, K);
        if (part == 0) return D1Element::function(basis_element(cfg, 0, n, p));
        return D1Element::vector_field(basis_element(cfg, -1, n, p));
    };
    for (int i = 0; i < count; ++i) {
        SampleTriple t;
        switch (property) {
            case CocycleProperty::multiplicative:
                t.a = draw(0);
                t.b = draw(0);
                t.c = draw(0);
                break;
            case CocycleProperty::l_invariant:
                t.a = draw(1);
                t.b = draw(0);
                t.c = draw(0);
                break;
            default:
                t.a = draw(rng.in_range(0, 1));
                t.b = draw(rng.in_range(0, 1));
                t.c = draw(rng.in_range(0, 1));
                break;
        }
        t.label = d1_label(t.a) + " ; " + d1_label(t.b) + " ; " + d1_label(t.c);
        out.push_back(std::move(t));
    }
    return out;
}

PropertyReport check_cocycle_properties(const MarkedConfig& cfg, const Cocycle& gamma,
                                        CocycleProperty property,
                                        const std::vector<SampleTriple>& samples) {
    cfg.require_valid();
    PropertyReport report;
    report.property = property;
    for (const auto& s : samples) {
        Rat residual;
        switch (property) {
            case CocycleProperty::antisymmetry:
                residual = gamma(s.a, s.b) + gamma(s.b, s.a);
                break;
            case CocycleProperty::cocycle_condition: {
                residual = gamma(d1_bracket(s.a, s.b), s.c) + gamma(d1_bracket(s.b, s.c), s.a) +
                           gamma(d1_bracket(s.c, s.a), s.b);
                break;
            }
            case CocycleProperty::multiplicative: {
                const Form &f = s.a.fun, &g = s.b.fun, &h = s.c.fun;
                residual = gamma(multiply_forms(f, g), h) + gamma(multiply_forms(g, h), f) +
                           gamma(multiply_forms(h, f), g);
                break;
            }
            case CocycleProperty::l_invariant: {
                const Form &e = s.a.vf, &g = s.b.fun, &h = s.c.fun;
                residual = gamma(lie_derivative(e, g), h) - gamma(lie_derivative(e, h), g);
                break;
            }
        }
        ++report.checked;
        if (!residual.is_zero()) report.failures.push_back({s.label, residual});
    }
    return report;
}

// ---------------------------------------------------------------------------
// locality

std::string verdict_name(LocalityReport::Verdict v) {
    switch (v) {
        case LocalityReport::Verdict::local_in_window: return "local-in-window";
        case LocalityReport::Verdict::bounded_above_only: return "bounded-above-only";
        case LocalityReport::Verdict::unbounded_in_window: return "unbounded-in-window";
    }
    return "?";
}

namespace {

// Homogeneous pair part tags scanned per kind.
std::vector<std::pair<int, int>> scan_part_pairs(CocycleKind kind) {
    switch (kind) {
        case CocycleKind::function: return {{0, 0}};
        case CocycleKind::vector: return {{1, 1}};
        case CocycleKind::mixing: return {{1, 0}};
        case CocycleKind::d1: return {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    }
    return {};
}

D1Element lift_basis(const MarkedConfig& cfg, int part, int n, int p) {
    if (part == 0) return D1Element::function(basis_element(cfg, 0, n, p));
    return D1Element::vector_field(basis_element(cfg, -1, n, p));
}

std::string pair_label(int part_x, int n, int p, int part_y, int m, int r) {
    std::ostringstream os;
    os << (part_x == 0 ? "A" : "e") << "[" << n << "," << p << "] ; "
       << (part_y == 0 ? "A" : "e") << "[" << m << "," << r << "]";
    return os.str();
}

}  // namespace

LocalityReport locality_scan(const MarkedConfig& cfg, const Cocycle& gamma,
                             const ScanWindow& window) {
    cfg.require_valid();
    LocalityReport report;
    report.window = window;
    const int K = cfg.num_in();
    const auto parts = scan_part_pairs(gamma.kind());
    const size_t levels = static_cast<size_t>(window.level_hi - window.level_lo + 1);
    std::vector<std::string> found(levels);  // witness per level, empty = all zero
    parallel_for(levels, [&](size_t li) {
        const int l = window.level_lo + static_cast<int>(li);
        const int n_lo = std::max(window.deg_lo, l - window.deg_hi);
        const int n_hi = std::min(window.deg_hi, l - window.deg_lo);
        for (int n = n_lo; n <= n_hi; ++n)
            for (const auto& [px, py] : parts)
                for (int p = 1; p <= K; ++p)
                    for (int r = 1; r <= K; ++r) {
                        const Rat v =
                            gamma(lift_basis(cfg, px, n, p), lift_basis(cfg, py, l - n, r));
                        if (!v.is_zero()) {
                            found[li] = pair_label(px, n, p, py, l - n, r) + " -> " + v.str();
                            return;
                        }
                    }
    });
    for (size_t li = 0; li < levels; ++li)
        if (!found[li].empty()) {
            const int l = window.level_lo + static_cast<int>(li);
            report.nonzero_levels.insert(l);
            report.witnesses[l] = found[li];
        }
    if (report.nonzero_levels.empty()) {
        report.verdict = LocalityReport::Verdict::local_in_window;
        return report;
    }
    const int max_level = *report.nonzero_levels.rbegin();
    const int min_level = *report.nonzero_levels.begin();
    const bool upper_ok = max_level < window.level_hi;
    const bool lower_ok = min_level > window.level_lo;
    if (upper_ok) report.upper_bound = max_level;
    if (lower_ok) report.lower_bound = min_level;
    report.verdict = !upper_ok ? LocalityReport::Verdict::unbounded_in_window
                     : (lower_ok ? LocalityReport::Verdict::local_in_window
                                 : LocalityReport::Verdict::bounded_above_only);
    return report;
}

// ---------------------------------------------------------------------------
// level zero

LevelZeroParams extract_level_zero(const MarkedConfig& cfg, const Cocycle& gamma) {
    cfg.require_valid();
    const int K = cfg.num_in();
    LevelZeroParams params;
    auto A = [&](int n, int r) { return basis_element(cfg, 0, n, r); };
    auto e = [&](int n, int r) { return basis_element(cfg, -1, n, r); };
    switch (gamma.kind()) {
        case CocycleKind::function:
            for (int r = 1; r <= K; ++r) params.alpha.push_back(gamma(A(-1, r), A(1, r)));
            break;
        case CocycleKind::vector:
            for (int r = 1; r <= K; ++r) {
                params.alpha.push_back(Rat(2) * gamma(e(2, r), e(-2, r)) -
                                       Rat(4) * gamma(e(1, r), e(-1, r)));
                params.b.push_back(gamma(e(1, r), e(-1, r)));
            }
            break;
        case CocycleKind::mixing:
            for (int r = 1; r <= K; ++r) {
                params.alpha.push_back(Rat(1, 2) *
                                       (gamma(e(1, r), A(-1, r)) + gamma(e(-1, r), A(1, r))));
                params.b.push_back(gamma(e(-1, r), A(1, r)));
            }
            break;
        case CocycleKind::d1:
            throw std::invalid_argument("extract_level_zero: split the d1 cocycle first");
    }
    return params;
}

FormulaCheckReport level_zero_formula_check(const MarkedConfig& cfg, const Cocycle& gamma,
                                            int n_max) {
    const LevelZeroParams params = extract_level_zero(cfg, gamma);
    const int K = cfg.num_in();
    FormulaCheckReport report;
    auto A = [&](int n, int r) { return basis_element(cfg, 0, n, r); };
    auto e = [&](int n, int r) { return basis_element(cfg, -1, n, r); };
    for (int n = 0; n <= n_max; ++n)
        for (int r = 1; r <= K; ++r)
            for (int s = 1; s <= K; ++s) {
                Rat expected, actual;
                const Rat alpha = params.alpha[static_cast<size_t>(r - 1)];
                switch (gamma.kind()) {
                    case CocycleKind::function:
                        actual = gamma(A(-n, r), A(n, s));
                        if (r == s) expected = alpha * Rat(n);
                        break;
                    case CocycleKind::vector:
                        actual = gamma(e(n, r), e(-n, s));
                        if (r == s)
                            expected = Rat((n + 1) * n * (n - 1), 12) * alpha +
                                       Rat(n) * params.b[static_cast<size_t>(r - 1)];
                        break;
                    case CocycleKind::mixing:
                        actual = gamma(e(-n, r), A(n, s));
                        if (r == s)
                            expected = Rat(n * (n - 1)) * alpha +
                                       Rat(n) * params.b[static_cast<size_t>(r - 1)];
                        break;
                    case CocycleKind::d1:
                        throw std::invalid_argument("level_zero_formula_check: d1 kind");
                }
                ++report.checked;
                if (actual != expected) report.failures.push_back({n, r, s, expected, actual});
            }
    return report;
}

// ---------------------------------------------------------------------------
// decomposition

namespace {

Cocycle point_cocycle(const MarkedConfig& cfg, CocycleKind kind, int r) {
    switch (kind) {
        case CocycleKind::function: return Cocycle::geometric_function(cfg, CycleSpec::in_circle(r));
        case CocycleKind::vector:
            return Cocycle::geometric_vector(cfg, CycleSpec::in_circle(r), ProjConn{});
        case CocycleKind::mixing:
            return Cocycle::geometric_mixing(cfg, CycleSpec::in_circle(r), AffConn{});
        default: throw std::invalid_argument("point_cocycle: bad kind");
    }
}

}  // namespace

Cocycle cocycle_from_decomposition(const MarkedConfig& cfg, CocycleKind kind,
                                   const Decomposition& dec) {
    std::vector<std::pair<Rat, Cocycle>> parts;
    for (size_t r = 0; r < dec.alpha.size(); ++r)
        parts.emplace_back(dec.alpha[r], point_cocycle(cfg, kind, static_cast<int>(r) + 1));
    if (!dec.cob.empty()) parts.emplace_back(Rat(1), Cocycle::from_coboundary(cfg, dec.cob));
    return Cocycle::linear_combination(parts);
}

Decomposition decompose_bounded(const MarkedConfig& cfg, const Cocycle& gamma,
                                const ScanWindow& window) {
    cfg.require_valid();
    const CocycleKind kind = gamma.kind();
    if (kind == CocycleKind::d1)
        throw std::invalid_argument("decompose_bounded: split the d1 cocycle first");
    const int K = cfg.num_in();

    const LocalityReport scan = locality_scan(cfg, gamma, window);
    if (!scan.nonzero_levels.empty() && !scan.upper_bound.has_value())
        throw std::runtime_error("decompose_bounded: cocycle not bounded above in the window");

    Decomposition dec;
    dec.alpha.assign(static_cast<size_t>(K), Rat());
    dec.cob.kind = kind == CocycleKind::mixing ? CoboundaryData::Kind::V : CoboundaryData::Kind::W;

    std::vector<Cocycle> points;
    for (int r = 1; r <= K; ++r) points.push_back(point_cocycle(cfg, kind, r));

    // Running dual sum of the coboundary part, kept as an actual form so the
    // residual can be evaluated by one pairing.
    Form cob_form{kind == CocycleKind::mixing ? 1 : 2, RatFunc()};
    auto add_cob_term = [&](int l, int r, const Rat& beta) {
        if (beta.is_zero()) return;
        dec.cob.terms[{l, r}] += beta;
        cob_form.func += beta * basis_element(cfg, cob_form.weight, -l, r).func;
    };

    auto A = [&](int n, int r) { return basis_element(cfg, 0, n, r); };
    auto e = [&](int n, int r) { return basis_element(cfg, -1, n, r); };
    auto residual = [&](const Form& x, const Form& y) {
        Rat acc = gamma(x, y);
        for (int r = 1; r <= K; ++r) {
            const Rat& a = dec.alpha[static_cast<size_t>(r - 1)];
            if (!a.is_zero()) acc -= a * points[static_cast<size_t>(r - 1)](x, y);
        }
        if (!cob_form.is_zero()) {
            const Form arg = kind == CocycleKind::mixing ? lie_derivative(x, y) : vf_bracket(x, y);
            acc -= kn_pairing(cfg, cob_form, arg);
        }
        return acc;
    };

    if (kind == CocycleKind::function) {
        // Bounded function cocycles carry no coboundary; they must be
        // multiplicative (equivalently L-invariant) to decompose.
        auto mult_samples =
            sample_triples(cfg, CocycleProperty::multiplicative,
                           DegreeWindow{window.deg_lo, window.deg_hi}, 40, 0x5eedf001ULL);
        auto li_samples = sample_triples(cfg, CocycleProperty::l_invariant,
                                         DegreeWindow{window.deg_lo, window.deg_hi}, 40,
                                         0x5eedf002ULL);
        const bool mult_ok =
            check_cocycle_properties(cfg, gamma, CocycleProperty::multiplicative, mult_samples).ok();
        const bool li_ok =
            check_cocycle_properties(cfg, gamma, CocycleProperty::l_invariant, li_samples).ok();
        if (!mult_ok && !li_ok)
            throw std::runtime_error(
                "decompose_bounded: function cocycle is neither multiplicative nor L-invariant");
        for (int r = 1; r <= K; ++r)
            dec.alpha[static_cast<size_t>(r - 1)] = gamma(A(-1, r), A(1, r));
    } else {
        const int top = scan.nonzero_levels.empty() ? window.level_lo - 1 : *scan.upper_bound;
        for (int l = top; l >= window.level_lo; --l) {
            if (l != 0) {
                // E_{beta w^{l,r}}(e_0, A_l) = beta*l and D_{beta W^{l,r}}(e_l, e_0) = -beta*l;
                // zero the determining value of the level.
                for (int r = 1; r <= K; ++r) {
                    if (kind == CocycleKind::mixing)
                        add_cob_term(l, r, residual(e(0, r), A(l, r)) / Rat(l));
                    else
                        add_cob_term(l, r, residual(e(l, r), e(0, r)) / Rat(-l));
                }
            } else {
                // Level zero: the alpha extraction is blind to the remaining
                // degree-zero dual term, which is fixed afterwards.
                for (int r = 1; r <= K; ++r) {
                    Rat a;
                    if (kind == CocycleKind::mixing)
                        a = Rat(1, 2) * (residual(e(1, r), A(-1, r)) + residual(e(-1, r), A(1, r)));
                    else
                        a = Rat(2) * residual(e(2, r), e(-2, r)) -
                            Rat(4) * residual(e(1, r), e(-1, r));
                    dec.alpha[static_cast<size_t>(r - 1)] = a;
                }
                for (int r = 1; r <= K; ++r) {
                    if (kind == CocycleKind::mixing)
                        add_cob_term(0, r, residual(e(-1, r), A(1, r)));
                    else
                        add_cob_term(0, r, Rat(-1, 2) * residual(e(1, r), e(-1, r)));
                }
            }
        }
    }

    // Exact verification over the whole window.
    const auto parts = scan_part_pairs(kind);
    for (int l = window.level_hi; l >= window.level_lo; --l) {
        const int n_lo = std::max(window.deg_lo, l - window.deg_hi);
        const int n_hi = std::min(window.deg_hi, l - window.deg_lo);
        for (int n = n_lo; n <= n_hi; ++n)
            for (const auto& [px, py] : parts)
                for (int p = 1; p <= K; ++p)
                    for (int r = 1; r <= K; ++r) {
                        const Form x = px == 0 ? A(n, p) : e(n, p);
                        const Form y = py == 0 ? A(l - n, r) : e(l - n, r);
                        const Rat v = residual(x, y);
                        if (!v.is_zero())
                            throw std::runtime_error(
                                "decompose_bounded: reconstruction residual nonzero at " +
                                pair_label(px, n, p, py, l - n, r) + " -> " + v.str());
                    }
    }
    return dec;
}

D1Split split_d1_cocycle(const Cocycle& gamma) {
    if (gamma.kind() != CocycleKind::d1)
        throw std::invalid_argument("split_d1_cocycle: expected a d1-kind cocycle");
    D1Split split;
    split.function_part = Cocycle::function_kind(
        [gamma](const Form& g, const Form& h) {
            return gamma(D1Element::function(g), D1Element::function(h));
        },
        "restriction(function) of " + gamma.provenance());
    split.vector_part = Cocycle::vector_kind(
        [gamma](const Form& e, const Form& f) {
            return gamma(D1Element::vector_field(e), D1Element::vector_field(f));
        },
        "restriction(vector) of " + gamma.provenance());
    split.mixing_part = Cocycle::mixing_kind(
        [gamma](const Form& e, const Form& g) {
            return gamma(D1Element::vector_field(e), D1Element::function(g));
        },
        "restriction(mixing) of " + gamma.provenance());
    return split;
}

Cocycle extend_function_cocycle_to_d1(const MarkedConfig& cfg, const Cocycle& gamma,
                                      const std::vector<SampleTriple>& samples) {
    if (gamma.kind() != CocycleKind::function)
        throw std::invalid_argument("extend_function_cocycle_to_d1: expected function kind");
    const PropertyReport report =
        check_cocycle_properties(cfg, gamma, CocycleProperty::l_invariant, samples);
    if (!report.ok()) throw LInvarianceError(report.failures.front().sample);
    return Cocycle::d1_kind(
        [gamma](const D1Element& x, const D1Element& y) { return gamma(x.fun, y.fun); },
        "d1-extension of " + gamma.provenance());
}

}  // namespace kn
