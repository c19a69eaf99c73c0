#include "kn/forms.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace kn {

std::string Form::str(const std::string& var) const {
    std::string base = func.str(var);
    if (weight == 0) return base;
    if (weight == -1) return base + " d/d" + var;
    if (weight == 1) return base + " d" + var;
    if (weight > 1) return base + " d" + var + "^" + std::to_string(weight);
    return base + " (d/d" + var + ")^" + std::to_string(-weight);
}

int OrderPrescription::total() const {
    int t = 0;
    for (int o : in_orders) t += o;
    for (int o : out_orders) t += o;
    return t;
}

MarkedConfig::MarkedConfig(std::vector<Rat> in_points, std::vector<RiemannPoint> out_points)
    : in_(std::move(in_points)), out_(std::move(out_points)) {}

RiemannPoint MarkedConfig::in_point(int p) const {
    if (p < 1 || p > num_in()) throw std::out_of_range("MarkedConfig: in-point index");
    return RiemannPoint::at(in_[static_cast<size_t>(p - 1)]);
}

RiemannPoint MarkedConfig::out_point(int j) const {
    if (j < 1 || j > num_out()) throw std::out_of_range("MarkedConfig: out-point index");
    return out_[static_cast<size_t>(j - 1)];
}

bool MarkedConfig::has_infinite_out() const {
    for (const auto& q : out_)
        if (q.is_infinity()) return true;
    return false;
}

bool MarkedConfig::is_marked(const RiemannPoint& pt) const {
    for (const auto& a : in_)
        if (!pt.is_infinity() && pt.value() == a) return true;
    for (const auto& q : out_)
        if (q == pt) return true;
    return false;
}

std::vector<RiemannPoint> MarkedConfig::all_points() const {
    std::vector<RiemannPoint> pts;
    pts.reserve(in_.size() + out_.size());
    for (const auto& a : in_) pts.push_back(RiemannPoint::at(a));
    for (const auto& q : out_) pts.push_back(q);
    return pts;
}

std::vector<std::string> MarkedConfig::validate() const {
    std::vector<std::string> errors;
    if (in_.empty()) errors.push_back("empty in-point set");
    if (out_.empty()) errors.push_back("empty out-point set");
    int inf_count = 0;
    for (const auto& q : out_)
        if (q.is_infinity()) ++inf_count;
    if (inf_count > 1) errors.push_back("infinity appears more than once");
    auto pts = all_points();
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            if (pts[i] == pts[j]) errors.push_back("duplicate point " + pts[i].str());
    return errors;
}

void MarkedConfig::require_valid() const {
    auto errors = validate();
    if (!errors.empty()) {
        std::ostringstream os;
        os << "invalid configuration:";
        for (const auto& e : errors) os << " " << e << ";";
        throw std::invalid_argument(os.str());
    }
}

namespace {

// Balanced integer split of T over M slots, slot j (1-based) taking
// floor((T-(j-1))/M); the shares sum to T-(M-1).
int fair_share(int T, int j, int M) {
    int x = T - (j - 1);
    // floor division for possibly negative x
    int q = x / M;
    if (x % M != 0 && ((x < 0) != (M < 0))) --q;
    return q;
}

// Out-point orders for the canonical weight of a coupled pair.  Used only
// when M > K; for M <= K the shifted-share recipe below is self-dual.
std::vector<int> out_orders_direct(int K, int M, int lambda, int n) {
    const int T = K * (n + 1 - lambda);
    std::vector<int> out(static_cast<size_t>(M));
    for (int j = 1; j <= M; ++j) out[static_cast<size_t>(j - 1)] = -fair_share(T, j, M);
    out[static_cast<size_t>(M - 1)] -= (M - 1) + (2 * lambda - 1);
    return out;
}

std::vector<int> out_orders(int K, int M, int lambda, int n) {
    if (M <= K) {
        // First M-1 out-points carry one in-point's worth, the last carries
        // the remainder plus the weight constant.
        std::vector<int> out(static_cast<size_t>(M), -(n + 1 - lambda));
        out[static_cast<size_t>(M - 1)] =
            -(K - M + 1) * (n + 1 - lambda) - (2 * lambda - 1);
        return out;
    }
    // For M > K the recipe must be coupled across the dual pair
    // {lambda, 1-lambda}: ord_j^{1-l}(m) = -ord_j^{l}(-m-1) keeps the duality
    // residues vanishing on every negative level.
    const int canonical = std::min(lambda, 1 - lambda);
    if (lambda == canonical) return out_orders_direct(K, M, lambda, n);
    std::vector<int> dual = out_orders_direct(K, M, canonical, -n - 1);
    for (auto& o : dual) o = -o;
    return dual;
}

}  // namespace

OrderPrescription order_prescription(const MarkedConfig& cfg, int lambda, int n, int p) {
    cfg.require_valid();
    const int K = cfg.num_in();
    const int M = cfg.num_out();
    if (p < 1 || p > K) throw std::out_of_range("order_prescription: point index");
    OrderPrescription pres;
    pres.in_orders.resize(static_cast<size_t>(K));
    for (int i = 1; i <= K; ++i)
        pres.in_orders[static_cast<size_t>(i - 1)] = (n + 1 - lambda) - (i == p ? 1 : 0);
    pres.out_orders = out_orders(K, M, lambda, n);
    if (pres.total() != -2 * lambda)
        throw std::logic_error("order_prescription: divisor degree mismatch");
    return pres;
}

Form basis_element(const MarkedConfig& cfg, const BasisIndex& idx) {
    cfg.require_valid();
    {
        std::lock_guard<std::mutex> lock(cfg.cache_->mu);
        auto it = cfg.cache_->basis.find({idx.weight, idx.degree, idx.point});
        if (it != cfg.cache_->basis.end()) return it->second;
    }
    const OrderPrescription pres = order_prescription(cfg, idx.weight, idx.degree, idx.point);

    // Pure product over the finite marked points; the order at an unmarked
    // infinity comes out as zero automatically since the divisor sums to
    // -2*lambda.
    Poly num(Rat(1)), den(Rat(1));
    std::vector<std::pair<Rat, int>> factors;
    for (int i = 1; i <= cfg.num_in(); ++i)
        factors.emplace_back(cfg.in_points()[static_cast<size_t>(i - 1)],
                             pres.in_orders[static_cast<size_t>(i - 1)]);
    for (int j = 1; j <= cfg.num_out(); ++j) {
        const RiemannPoint q = cfg.out_point(j);
        if (!q.is_infinity())
            factors.emplace_back(q.value(), pres.out_orders[static_cast<size_t>(j - 1)]);
    }
    for (const auto& [a, e] : factors) {
        if (e > 0)
            num *= Poly::linear_power(a, e);
        else if (e < 0)
            den *= Poly::linear_power(a, -e);
    }
    // Normalize: expansion at P_p in (z - P_p) starts with coefficient 1.
    const Rat pivot = cfg.in_points()[static_cast<size_t>(idx.point - 1)];
    Rat lead(1);
    for (const auto& [a, e] : factors) {
        if (a == pivot) continue;
        lead *= (pivot - a).pow(e);
    }
    Form f{idx.weight, lead.inverse() * RatFunc(num, den)};
    {
        std::lock_guard<std::mutex> lock(cfg.cache_->mu);
        cfg.cache_->basis.emplace(std::make_tuple(idx.weight, idx.degree, idx.point), f);
    }
    return f;
}

int form_order_at(const Form& f, const RiemannPoint& p) {
    const int o = order_at(f.func, p);
    if (o == order_infinite) return order_infinite;
    return p.is_infinity() ? o - 2 * f.weight : o;
}

bool poles_only_at_marked(const MarkedConfig& cfg, const Form& f) {
    if (f.is_zero()) return true;
    Poly d = f.func.den();
    for (const auto& a : cfg.in_points()) d.root_multiplicity(a, &d);
    for (const auto& q : cfg.out_points())
        if (!q.is_infinity()) d.root_multiplicity(q.value(), &d);
    if (d.degree() > 0) return false;
    if (!cfg.is_marked(RiemannPoint::infinity()) &&
        form_order_at(f, RiemannPoint::infinity()) < 0)
        return false;
    return true;
}

Rat kn_pairing(const MarkedConfig& cfg, const Form& f, const Form& g) {
    cfg.require_valid();
    if (f.weight + g.weight != 1)
        throw std::invalid_argument("kn_pairing: weights must sum to 1");
    const Form product{1, f.func * g.func};
    if (!poles_only_at_marked(cfg, product))
        throw std::invalid_argument("kn_pairing: product has poles off the marked set");
    const RatFunc h = product.func;
    Rat in_sum;
    for (const auto& a : cfg.in_points()) in_sum += residue_1form(h, RiemannPoint::at(a));
    Rat out_sum;
    for (const auto& q : cfg.out_points()) out_sum += residue_1form(h, q);
    if (!(in_sum + out_sum).is_zero())
        throw std::logic_error("kn_pairing: residue theorem violated (arithmetic bug)");
    return in_sum;
}

int Expansion::degree_min() const {
    if (coeff.empty()) throw std::logic_error("Expansion: empty support");
    return coeff.begin()->first.first;
}

int Expansion::degree_max() const {
    if (coeff.empty()) throw std::logic_error("Expansion: empty support");
    return coeff.rbegin()->first.first;
}

Rat Expansion::at(int n, int p) const {
    auto it = coeff.find({n, p});
    return it == coeff.end() ? Rat() : it->second;
}

Expansion expand_in_basis(const MarkedConfig& cfg, const Form& f) {
    cfg.require_valid();
    Expansion ex;
    ex.weight = f.weight;
    if (f.is_zero()) return ex;
    const std::tuple<int, std::string, std::string> memo_key{f.weight, f.func.num().str(),
                                                             f.func.den().str()};
    {
        std::lock_guard<std::mutex> lock(cfg.cache_->mu);
        auto it = cfg.cache_->expansions.find(memo_key);
        if (it != cfg.cache_->expansions.end()) return it->second;
    }
    if (!poles_only_at_marked(cfg, f))
        throw std::invalid_argument("expand_in_basis: poles off the marked set");
    const int K = cfg.num_in();
    const int M = cfg.num_out();
    const int lambda = f.weight;
    const int mu = 1 - lambda;

    int n_lo = order_infinite;
    for (int i = 1; i <= K; ++i)
        n_lo = std::min(n_lo, form_order_at(f, cfg.in_point(i)));
    n_lo += lambda;

    std::vector<int> out_ord_f(static_cast<size_t>(M));
    for (int j = 1; j <= M; ++j)
        out_ord_f[static_cast<size_t>(j - 1)] = form_order_at(f, cfg.out_point(j));

    // A dual residue at some out-point is possible iff the product's order
    // there drops below zero; the dual out-orders grow with m, so scanning
    // upward terminates.
    auto out_residue_possible = [&](int m) {
        const OrderPrescription dual = order_prescription(cfg, mu, -m, 1);
        for (int j = 1; j <= M; ++j)
            if (out_ord_f[static_cast<size_t>(j - 1)] + dual.out_orders[static_cast<size_t>(j - 1)] <= -1)
                return true;
        return false;
    };

    Form remainder = f;
    for (int m = n_lo; out_residue_possible(m); ++m) {
        for (int r = 1; r <= K; ++r) {
            const Form dual = basis_element(cfg, mu, -m, r);
            const Rat c = kn_pairing(cfg, f, dual);
            if (c.is_zero()) continue;
            ex.coeff[{m, r}] = c;
            remainder.func -= c * basis_element(cfg, lambda, m, r).func;
        }
    }
    if (!remainder.func.is_zero())
        throw std::logic_error("expand_in_basis: reconstruction mismatch (recipe/duality failure)");
    {
        std::lock_guard<std::mutex> lock(cfg.cache_->mu);
        cfg.cache_->expansions.emplace(memo_key, ex);
    }
    return ex;
}

Form form_from_expansion(const MarkedConfig& cfg, const Expansion& ex) {
    Form f{ex.weight, RatFunc()};
    for (const auto& [key, c] : ex.coeff)
        f.func += c * basis_element(cfg, ex.weight, key.first, key.second).func;
    return f;
}

Form InvertedConfig::transport(const Form& f) const {
    if (map.is_identity()) return f;
    const Mobius inv = map.inverse();
    RatFunc moved = substitute(f.func, inv);
    if (f.weight != 0) moved = moved * inv.derivative().pow(f.weight);
    return Form{f.weight, moved};
}

InvertedConfig inverted_config(const MarkedConfig& cfg) {
    cfg.require_valid();
    Mobius map = Mobius::identity();
    if (cfg.has_infinite_out()) {
        long c = 0;
        auto hits_out = [&](long v) {
            for (const auto& q : cfg.out_points())
                if (!q.is_infinity() && q.value() == Rat(v)) return true;
            return false;
        };
        while (hits_out(c)) ++c;
        map = Mobius::reciprocal_shift(Rat(c));
    }
    std::vector<Rat> new_in;
    for (const auto& q : cfg.out_points()) new_in.push_back(map.apply(q).value());
    std::vector<RiemannPoint> new_out;
    for (const auto& a : cfg.in_points()) new_out.push_back(map.apply(RiemannPoint::at(a)));
    InvertedConfig sc{MarkedConfig(std::move(new_in), std::move(new_out)), map};
    sc.config.require_valid();
    return sc;
}

}  // namespace kn
