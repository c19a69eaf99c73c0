#include "kn/current.hpp"

#include <sstream>
#include <stdexcept>

namespace kn {

FinDimLie::FinDimLie(int dimension,
                     std::vector<std::vector<std::vector<std::pair<int, Rat>>>> brackets,
                     std::vector<std::vector<Rat>> form, std::vector<std::string> labels,
                     bool check_axioms)
    : dim_(dimension),
      brackets_(std::move(brackets)),
      form_(std::move(form)),
      labels_(std::move(labels)),
      trace_(static_cast<size_t>(dimension), Rat()) {
    if (static_cast<int>(brackets_.size()) != dim_ || static_cast<int>(form_.size()) != dim_)
        throw std::invalid_argument("FinDimLie: table sizes do not match the dimension");
    if (labels_.empty())
        for (int i = 0; i < dim_; ++i) labels_.push_back("x" + std::to_string(i));
    if (check_axioms) {
        auto errors = check();
        if (!errors.empty()) throw std::invalid_argument("FinDimLie: " + errors.front());
    }
}

std::vector<Rat> FinDimLie::bracket_basis(int i, int j) const {
    std::vector<Rat> out(static_cast<size_t>(dim_), Rat());
    for (const auto& [k, c] : brackets_[static_cast<size_t>(i)][static_cast<size_t>(j)])
        out[static_cast<size_t>(k)] += c;
    return out;
}

std::vector<std::string> FinDimLie::check() const {
    std::vector<std::string> errors;
    auto ad = [&](int i, int j) { return bracket_basis(i, j); };
    // antisymmetry
    for (int i = 0; i < dim_ && errors.size() < 4; ++i)
        for (int j = 0; j < dim_; ++j) {
            auto a = ad(i, j), b = ad(j, i);
            for (int k = 0; k < dim_; ++k)
                if (a[static_cast<size_t>(k)] + b[static_cast<size_t>(k)] != Rat())
                    errors.push_back("bracket not antisymmetric at (" + std::to_string(i) + "," +
                                     std::to_string(j) + ")");
        }
    // Jacobi
    for (int i = 0; i < dim_ && errors.empty(); ++i)
        for (int j = 0; j < dim_; ++j)
            for (int k = 0; k < dim_; ++k) {
                std::vector<Rat> acc(static_cast<size_t>(dim_), Rat());
                auto add_term = [&](int a, int b, int c) {
                    auto inner = ad(b, c);
                    for (int u = 0; u < dim_; ++u) {
                        if (inner[static_cast<size_t>(u)].is_zero()) continue;
                        auto outer = ad(a, u);
                        for (int v = 0; v < dim_; ++v)
                            acc[static_cast<size_t>(v)] +=
                                inner[static_cast<size_t>(u)] * outer[static_cast<size_t>(v)];
                    }
                };
                add_term(i, j, k);
                add_term(j, k, i);
                add_term(k, i, j);
                for (int v = 0; v < dim_; ++v)
                    if (!acc[static_cast<size_t>(v)].is_zero()) {
                        errors.push_back("Jacobi fails at (" + std::to_string(i) + "," +
                                         std::to_string(j) + "," + std::to_string(k) + ")");
                        break;
                    }
            }
    // form symmetry and invariance B([x,y],z) = B(x,[y,z])
    for (int i = 0; i < dim_ && errors.empty(); ++i)
        for (int j = 0; j < dim_; ++j) {
            if (form(i, j) != form(j, i)) errors.push_back("form not symmetric");
            for (int k = 0; k < dim_; ++k) {
                Rat lhs, rhs;
                auto bij = ad(i, j), bjk = ad(j, k);
                for (int u = 0; u < dim_; ++u) {
                    lhs += bij[static_cast<size_t>(u)] * form(u, k);
                    rhs += bjk[static_cast<size_t>(u)] * form(i, u);
                }
                if (lhs != rhs) {
                    errors.push_back("form not invariant at (" + std::to_string(i) + "," +
                                     std::to_string(j) + "," + std::to_string(k) + ")");
                    break;
                }
            }
        }
    return errors;
}

FinDimLie FinDimLie::sl2() {
    // basis e, f, h with [e,f] = h, [h,e] = 2e, [h,f] = -2f; trace form of
    // the defining representation: (e,f) = 1, (h,h) = 2.
    const int E = 0, F = 1, H = 2;
    std::vector<std::vector<std::vector<std::pair<int, Rat>>>> br(
        3, std::vector<std::vector<std::pair<int, Rat>>>(3));
    br[E][F] = {{H, Rat(1)}};
    br[F][E] = {{H, Rat(-1)}};
    br[H][E] = {{E, Rat(2)}};
    br[E][H] = {{E, Rat(-2)}};
    br[H][F] = {{F, Rat(-2)}};
    br[F][H] = {{F, Rat(2)}};
    std::vector<std::vector<Rat>> form(3, std::vector<Rat>(3, Rat()));
    form[E][F] = form[F][E] = Rat(1);
    form[H][H] = Rat(2);
    return FinDimLie(3, std::move(br), std::move(form), {"e", "f", "h"});
}

FinDimLie FinDimLie::gl(int n) {
    // basis E_{ab} listed row-major; [E_ab, E_cd] = d_bc E_ad - d_da E_cb,
    // trace form tr(E_ab E_cd) = d_bc d_ad.
    const int dim = n * n;
    auto id = [n](int a, int b) { return a * n + b; };
    std::vector<std::vector<std::vector<std::pair<int, Rat>>>> br(
        static_cast<size_t>(dim), std::vector<std::vector<std::pair<int, Rat>>>(static_cast<size_t>(dim)));
    std::vector<std::vector<Rat>> form(static_cast<size_t>(dim),
                                       std::vector<Rat>(static_cast<size_t>(dim), Rat()));
    std::vector<std::string> labels;
    std::vector<Rat> traces(static_cast<size_t>(dim), Rat());
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            labels.push_back("E" + std::to_string(a + 1) + std::to_string(b + 1));
            if (a == b) traces[static_cast<size_t>(id(a, b))] = Rat(1);
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    auto& cell = br[static_cast<size_t>(id(a, b))][static_cast<size_t>(id(c, d))];
                    if (b == c) cell.push_back({id(a, d), Rat(1)});
                    if (d == a) cell.push_back({id(c, b), Rat(-1)});
                    if (b == c && a == d) form[static_cast<size_t>(id(a, b))][static_cast<size_t>(id(c, d))] = Rat(1);
                }
        }
    FinDimLie lie(dim, std::move(br), std::move(form), std::move(labels));
    lie.set_traces(std::move(traces));
    return lie;
}

CurrentElement CurrentElement::tensor(int lie_index, Form f) {
    if (f.weight != 0) throw std::invalid_argument("CurrentElement: forms must have weight 0");
    CurrentElement x;
    if (!f.is_zero()) x.terms.emplace_back(lie_index, std::move(f));
    return x;
}

bool CurrentElement::is_zero() const {
    for (const auto& [i, f] : terms)
        if (!f.is_zero()) return false;
    return true;
}

CurrentElement& CurrentElement::operator+=(const CurrentElement& o) {
    for (const auto& t : o.terms) terms.push_back(t);
    normalize();
    return *this;
}

void CurrentElement::normalize() {
    std::map<int, RatFunc> by_index;
    for (const auto& [i, f] : terms) {
        auto it = by_index.find(i);
        if (it == by_index.end())
            by_index.emplace(i, f.func);
        else
            it->second += f.func;
    }
    terms.clear();
    for (auto& [i, func] : by_index)
        if (!func.is_zero()) terms.emplace_back(i, Form{0, func});
}

CurrentElement current_bracket(const FinDimLie& lie, const CurrentElement& x,
                               const CurrentElement& y) {
    CurrentElement out;
    for (const auto& [i, f] : x.terms)
        for (const auto& [j, g] : y.terms) {
            const auto coeffs = lie.bracket_basis(i, j);
            const RatFunc fg = f.func * g.func;
            for (int k = 0; k < lie.dimension(); ++k)
                if (!coeffs[static_cast<size_t>(k)].is_zero())
                    out.terms.emplace_back(k, Form{0, coeffs[static_cast<size_t>(k)] * fg});
        }
    out.normalize();
    return out;
}

ExtendedElement extended_bracket(const FinDimLie& lie, const ExtendedElement& a,
                                 const ExtendedElement& b, const Cocycle& gamma) {
    if (gamma.kind() != CocycleKind::function)
        throw std::invalid_argument("extended_bracket: needs a function-kind cocycle");
    ExtendedElement out;
    out.current = current_bracket(lie, a.current, b.current);
    for (const auto& [i, f] : a.current.terms)
        for (const auto& [j, g] : b.current.terms) {
            const Rat pairing = lie.form(i, j);
            if (!pairing.is_zero()) out.central += pairing * gamma(f, g);
        }
    return out;
}

JacobiReport jacobi_check(const MarkedConfig& cfg, const FinDimLie& lie, const Cocycle& gamma,
                          const DegreeWindow& window) {
    cfg.require_valid();
    JacobiReport report;
    const int K = cfg.num_in();
    std::vector<ExtendedElement> gens;
    std::vector<std::string> names;
    for (int i = 0; i < lie.dimension(); ++i)
        for (int n = window.lo; n <= window.hi; ++n)
            for (int p = 1; p <= K; ++p) {
                gens.push_back(
                    ExtendedElement{CurrentElement::tensor(i, basis_element(cfg, 0, n, p)), Rat()});
                names.push_back(lie.label(i) + "(x)A[" + std::to_string(n) + "," +
                                std::to_string(p) + "]");
            }
    auto is_zero = [](const ExtendedElement& x) {
        return x.current.is_zero() && x.central.is_zero();
    };
    for (size_t a = 0; a < gens.size(); ++a)
        for (size_t b = 0; b < gens.size(); ++b)
            for (size_t c = 0; c < gens.size(); ++c) {
                ExtendedElement acc;
                auto add = [&](const ExtendedElement& x, const ExtendedElement& y,
                               const ExtendedElement& z) {
                    ExtendedElement inner = extended_bracket(lie, y, z, gamma);
                    // t is central: only the current part brackets on
                    ExtendedElement outer = extended_bracket(lie, x, inner, gamma);
                    acc.current += outer.current;
                    acc.central += outer.central;
                };
                add(gens[a], gens[b], gens[c]);
                add(gens[b], gens[c], gens[a]);
                add(gens[c], gens[a], gens[b]);
                ++report.checked;
                if (!is_zero(acc)) {
                    std::ostringstream os;
                    os << names[a] << " ; " << names[b] << " ; " << names[c];
                    report.failures.push_back({os.str(), "nonzero Jacobi residual"});
                    if (report.failures.size() > 4) return report;
                }
            }
    return report;
}

ReductiveCocycle::ReductiveCocycle(FinDimLie lie, Cocycle psi)
    : lie_(std::move(lie)), psi_(std::move(psi)) {
    if (psi_.kind() != CocycleKind::function)
        throw std::invalid_argument("ReductiveCocycle: psi must be a function-kind form");
}

Rat ReductiveCocycle::operator()(const CurrentElement& x, const CurrentElement& y) const {
    Rat acc;
    for (const auto& [i, f] : x.terms) {
        if (lie_.trace(i).is_zero()) continue;
        for (const auto& [j, g] : y.terms) {
            if (lie_.trace(j).is_zero()) continue;
            acc += lie_.trace(i) * lie_.trace(j) * psi_(f, g);
        }
    }
    return acc;
}

ReductiveCocycle reductive_counterexample(const MarkedConfig& cfg, int n, const Cocycle& psi) {
    cfg.require_valid();
    // antisymmetry spot check on a few basis pairs
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b) {
            const Form fa = basis_element(cfg, 0, a, 1);
            const Form fb = basis_element(cfg, 0, b, 1);
            if (!(psi(fa, fb) + psi(fb, fa)).is_zero())
                throw std::invalid_argument("reductive_counterexample: psi is not antisymmetric");
        }
    return ReductiveCocycle(FinDimLie::gl(n), psi);
}

JacobiReport current_cocycle_condition_check(const MarkedConfig& cfg, const ReductiveCocycle& gamma,
                                             const DegreeWindow& window) {
    cfg.require_valid();
    JacobiReport report;
    const FinDimLie& lie = gamma.lie();
    const int K = cfg.num_in();
    std::vector<CurrentElement> gens;
    std::vector<std::string> names;
    for (int i = 0; i < lie.dimension(); ++i)
        for (int n = window.lo; n <= window.hi; ++n)
            for (int p = 1; p <= K; ++p) {
                gens.push_back(CurrentElement::tensor(i, basis_element(cfg, 0, n, p)));
                names.push_back(lie.label(i) + "(x)A[" + std::to_string(n) + "," +
                                std::to_string(p) + "]");
            }
    for (size_t a = 0; a < gens.size(); ++a)
        for (size_t b = 0; b < gens.size(); ++b)
            for (size_t c = 0; c < gens.size(); ++c) {
                Rat acc = gamma(current_bracket(lie, gens[a], gens[b]), gens[c]) +
                          gamma(current_bracket(lie, gens[b], gens[c]), gens[a]) +
                          gamma(current_bracket(lie, gens[c], gens[a]), gens[b]);
                ++report.checked;
                if (!acc.is_zero()) {
                    report.failures.push_back(
                        {names[a] + " ; " + names[b] + " ; " + names[c], acc.str()});
                    if (report.failures.size() > 4) return report;
                }
            }
    return report;
}

}  // namespace kn
