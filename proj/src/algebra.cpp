#include "kn/algebra.hpp"

#include "kn/parallel.hpp"

#include <stdexcept>

namespace kn {

D1Element D1Element::function(Form g) {
    if (g.weight != 0) throw std::invalid_argument("D1Element: function part must have weight 0");
    return D1Element{std::move(g), Form{-1, RatFunc()}};
}

D1Element D1Element::vector_field(Form e) {
    if (e.weight != -1) throw std::invalid_argument("D1Element: vector part must have weight -1");
    return D1Element{Form{0, RatFunc()}, std::move(e)};
}

Form multiply_forms(const Form& f, const Form& g) {
    return Form{f.weight + g.weight, f.func * g.func};
}

Form lie_derivative(const Form& e, const Form& g) {
    if (e.weight != -1) throw std::invalid_argument("lie_derivative: e must have weight -1");
    const Rat lambda(g.weight);
    return Form{g.weight, e.func * g.func.derivative() + lambda * (g.func * e.func.derivative())};
}

Form vf_bracket(const Form& e, const Form& f) {
    if (e.weight != -1 || f.weight != -1)
        throw std::invalid_argument("vf_bracket: both arguments must have weight -1");
    return Form{-1, e.func * f.func.derivative() - f.func * e.func.derivative()};
}

D1Element d1_bracket(const D1Element& a, const D1Element& b) {
    // [(g,e),(h,f)] = (e.h - f.g, [e,f])
    Form fun = lie_derivative(a.vf, b.fun);
    fun.func -= lie_derivative(b.vf, a.fun).func;
    return D1Element{fun, vf_bracket(a.vf, b.vf)};
}

std::string op_kind_name(OpKind op) {
    switch (op) {
        case OpKind::fun_mul: return "fun_mul";
        case OpKind::vf_bracket: return "vf_bracket";
        case OpKind::lie_derivative: return "lie_derivative";
        case OpKind::d1_bracket: return "d1_bracket";
    }
    return "?";
}

namespace {

// Key conventions inside tables: part 0 = function (weight 0), part 1 =
// vector field (weight -1).  For lie_derivative tables the right-hand and
// output elements live in the weight-lambda module and use part 0.
struct PairJob {
    D1BasisKey left, right;
};

}  // namespace

StructureTable structure_table(const MarkedConfig& cfg, OpKind op, int lambda,
                               const DegreeWindow& window) {
    if (window.lo > window.hi) throw std::invalid_argument("structure_table: empty window");
    cfg.require_valid();
    StructureTable table;
    table.op_kind = op;
    table.lambda = (op == OpKind::lie_derivative) ? lambda : 0;
    table.window = window;
    const int K = cfg.num_in();

    std::vector<int> lparts, rparts;
    switch (op) {
        case OpKind::fun_mul: lparts = {0}; rparts = {0}; break;
        case OpKind::vf_bracket: lparts = {1}; rparts = {1}; break;
        case OpKind::lie_derivative: lparts = {1}; rparts = {0}; break;
        case OpKind::d1_bracket: lparts = {0, 1}; rparts = {0, 1}; break;
    }

    std::vector<PairJob> jobs;
    for (int lp : lparts)
        for (int rp : rparts)
            for (int n = window.lo; n <= window.hi; ++n)
                for (int p = 1; p <= K; ++p)
                    for (int m = window.lo; m <= window.hi; ++m)
                        for (int r = 1; r <= K; ++r)
                            jobs.push_back({D1BasisKey{lp, n, p}, D1BasisKey{rp, m, r}});

    // Each job's expansions land in its own slot; the table is assembled
    // sequentially afterwards, so the fill may run on several threads.
    std::vector<std::vector<std::pair<int, Expansion>>> slots(jobs.size());
    parallel_for(jobs.size(), [&](size_t j) {
        const auto& [lk, rk] = jobs[j];
        switch (op) {
            case OpKind::fun_mul: {
                Form prod = multiply_forms(basis_element(cfg, 0, lk.degree, lk.point),
                                           basis_element(cfg, 0, rk.degree, rk.point));
                slots[j].emplace_back(0, expand_in_basis(cfg, prod));
                break;
            }
            case OpKind::vf_bracket: {
                Form br = vf_bracket(basis_element(cfg, -1, lk.degree, lk.point),
                                     basis_element(cfg, -1, rk.degree, rk.point));
                slots[j].emplace_back(1, expand_in_basis(cfg, br));
                break;
            }
            case OpKind::lie_derivative: {
                Form out = lie_derivative(basis_element(cfg, -1, lk.degree, lk.point),
                                          basis_element(cfg, lambda, rk.degree, rk.point));
                slots[j].emplace_back(0, expand_in_basis(cfg, out));
                break;
            }
            case OpKind::d1_bracket: {
                auto lift = [&](const D1BasisKey& k) {
                    return k.part == 0 ? D1Element::function(
                                             basis_element(cfg, 0, k.degree, k.point))
                                       : D1Element::vector_field(
                                             basis_element(cfg, -1, k.degree, k.point));
                };
                D1Element out = d1_bracket(lift(lk), lift(rk));
                if (!out.fun.is_zero()) slots[j].emplace_back(0, expand_in_basis(cfg, out.fun));
                if (!out.vf.is_zero()) slots[j].emplace_back(1, expand_in_basis(cfg, out.vf));
                break;
            }
        }
    });

    bool first_shift = true;
    auto note_shift = [&](int shift) {
        if (first_shift) {
            table.lower_shift = table.upper_shift = shift;
            first_shift = false;
        } else {
            table.lower_shift = std::min(table.lower_shift, shift);
            table.upper_shift = std::max(table.upper_shift, shift);
        }
    };
    for (size_t j = 0; j < jobs.size(); ++j) {
        const auto& [lk, rk] = jobs[j];
        for (const auto& [out_part, ex] : slots[j]) {
            if (ex.coeff.empty()) continue;
            auto& cell = table.entries[{lk, rk}];
            for (const auto& [key, c] : ex.coeff) {
                cell[D1BasisKey{out_part, key.first, key.second}] = c;
                note_shift(key.first - (lk.degree + rk.degree));
            }
        }
    }
    if (first_shift) table.lower_shift = table.upper_shift = 0;
    return table;
}

BoundaryCheckReport boundary_coefficient_check(const MarkedConfig& cfg,
                                               const StructureTable& table) {
    cfg.require_valid();
    BoundaryCheckReport report;
    for (const auto& [pair_key, cell] : table.entries) {
        const auto& [lk, rk] = pair_key;
        const int n = lk.degree, m = rk.degree;
        const bool same = lk.point == rk.point;

        // Expected leading term at degree n+m: value and output part.
        Rat expected;
        int out_part = 0;
        switch (table.op_kind) {
            case OpKind::fun_mul:
                expected = same ? Rat(1) : Rat(0);
                out_part = 0;
                break;
            case OpKind::vf_bracket:
                expected = same ? Rat(m - n) : Rat(0);
                out_part = 1;
                break;
            case OpKind::lie_derivative:
                expected = same ? Rat(m + table.lambda * n) : Rat(0);
                out_part = 0;
                break;
            case OpKind::d1_bracket:
                if (lk.part == 0 && rk.part == 0) {
                    expected = Rat(0);
                } else if (lk.part == 1 && rk.part == 1) {
                    expected = same ? Rat(m - n) : Rat(0);
                    out_part = 1;
                } else if (lk.part == 1 && rk.part == 0) {
                    expected = same ? Rat(m) : Rat(0);  // e_{n,p}.A_{m,r} at lambda = 0
                } else {
                    expected = same ? Rat(-n) : Rat(0);  // -(f.g) component
                }
                break;
        }

        ++report.pairs_checked;
        Rat actual;
        auto it = cell.find(D1BasisKey{out_part, n + m, rk.point});
        if (it != cell.end()) actual = it->second;
        if (actual != expected) {
            report.violations.push_back({lk, rk, expected, actual});
            continue;
        }
        if (!same) {
            // the delta_p^r pattern: the whole degree-(n+m) layer must vanish
            for (const auto& [hk, c] : cell)
                if (hk.degree == n + m && !c.is_zero()) {
                    report.violations.push_back({lk, rk, Rat(0), c});
                    break;
                }
        }
    }
    return report;
}

}  // namespace kn
