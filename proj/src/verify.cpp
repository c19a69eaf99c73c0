#include "kn/verify.hpp"

#include <sstream>
#include <stdexcept>

namespace kn::verify {

namespace {

std::string rat_pair(const Rat& expected, const Rat& actual) {
    return "expected " + expected.str() + ", got " + actual.str();
}

class SplitMix {
public:
    explicit SplitMix(uint64_t seed) : state_(seed) {}
    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    int in_range(int lo, int hi) {
        return lo + static_cast<int>(next() % static_cast<uint64_t>(hi - lo + 1));
    }

private:
    uint64_t state_;
};

}  // namespace

MarkedConfig stock_config(const std::string& name) {
    if (name == "classical")
        return MarkedConfig({Rat(0)}, {RiemannPoint::infinity()});
    if (name == "two_one")
        return MarkedConfig({Rat(0), Rat(1)}, {RiemannPoint::infinity()});
    if (name == "two_two")
        return MarkedConfig({Rat(0), Rat(1)}, {RiemannPoint::at(Rat(-1)), RiemannPoint::infinity()});
    if (name == "three_one")
        return MarkedConfig({Rat(0), Rat(1), Rat(-1)}, {RiemannPoint::infinity()});
    throw std::invalid_argument("unknown stock configuration: " + name);
}

std::vector<std::string> stock_config_names() {
    return {"classical", "two_one", "two_two", "three_one"};
}

RunReport virasoro(int n_max) {
    RunReport report;
    report.suite = "virasoro";
    const MarkedConfig cfg = stock_config("classical");
    const Cocycle gamma = Cocycle::geometric_vector(cfg, CycleSpec::separating(cfg), ProjConn{});
    int failures = 0;
    for (int n = -n_max; n <= n_max; ++n)
        for (int m = -n_max; m <= n_max; ++m) {
            const Rat actual =
                gamma(basis_element(cfg, -1, n, 1), basis_element(cfg, -1, m, 1));
            const Rat expected =
                n + m == 0 ? Rat(static_cast<long>(n) * n * n - n, 12) : Rat();
            if (actual != expected) {
                ++failures;
                report.add("virasoro value (" + std::to_string(n) + "," + std::to_string(m) + ")",
                           false, rat_pair(expected, actual));
            }
        }
    report.add("gamma(e_n,e_m) = (n^3-n)/12 delta_{n,-m} for |n|,|m| <= " + std::to_string(n_max),
               failures == 0, failures == 0 ? "" : std::to_string(failures) + " mismatches");
    return report;
}

RunReport duality(const MarkedConfig& cfg, const std::string& cfg_name,
                  const std::vector<int>& lambdas, int halfwidth) {
    RunReport report;
    report.suite = "duality";
    const int K = cfg.num_in();
    for (int lambda : lambdas) {
        int failures = 0;
        std::string witness;
        for (int n = -halfwidth; n <= halfwidth; ++n)
            for (int m = -halfwidth; m <= halfwidth; ++m)
                for (int p = 1; p <= K; ++p)
                    for (int r = 1; r <= K; ++r) {
                        const Rat actual = kn_pairing(cfg, basis_element(cfg, lambda, n, p),
                                                      basis_element(cfg, 1 - lambda, m, r));
                        const Rat expected = (m == -n && p == r) ? Rat(1) : Rat();
                        if (actual != expected && ++failures == 1) {
                            std::ostringstream os;
                            os << "(n,m,p,r)=(" << n << "," << m << "," << p << "," << r << "): "
                               << rat_pair(expected, actual);
                            witness = os.str();
                        }
                    }
        report.add("duality " + cfg_name + " lambda=" + std::to_string(lambda), failures == 0,
                   witness);
    }
    return report;
}

RunReport almost_grading(const MarkedConfig& cfg, const std::string& cfg_name,
                         const std::vector<int>& lie_lambdas, int halfwidth) {
    RunReport report;
    report.suite = "almost-grading";
    const DegreeWindow window{-halfwidth, halfwidth};
    auto run = [&](OpKind op, int lambda, const std::string& name) {
        const StructureTable table = structure_table(cfg, op, lambda, window);
        report.add(name + " lower shift = 0 (" + cfg_name + ")", table.lower_shift == 0,
                   "observed [" + std::to_string(table.lower_shift) + "," +
                       std::to_string(table.upper_shift) + "]");
        const BoundaryCheckReport bc = boundary_coefficient_check(cfg, table);
        std::string witness;
        if (!bc.ok()) {
            const auto& v = bc.violations.front();
            std::ostringstream os;
            os << "(" << v.left.degree << "," << v.left.point << ")x(" << v.right.degree << ","
               << v.right.point << "): " << rat_pair(v.expected, v.actual);
            witness = os.str();
        }
        report.add(name + " boundary coefficients (" + cfg_name + ")", bc.ok(), witness);
    };
    run(OpKind::fun_mul, 0, "fun_mul");
    run(OpKind::vf_bracket, 0, "vf_bracket");
    for (int lambda : lie_lambdas)
        run(OpKind::lie_derivative, lambda, "lie_derivative(lambda=" + std::to_string(lambda) + ")");
    run(OpKind::d1_bracket, 0, "d1_bracket");
    return report;
}

RunReport locality(const MarkedConfig& cfg, const std::string& cfg_name, int halfwidth) {
    RunReport report;
    report.suite = "locality";
    const ScanWindow window{-halfwidth, halfwidth, -halfwidth, halfwidth};
    const CycleSpec sep = CycleSpec::separating(cfg);
    auto scan_kind = [&](const Cocycle& gamma, const std::string& name) {
        const LocalityReport r = locality_scan(cfg, gamma, window);
        const bool upper_zero = r.upper_bound.has_value() && *r.upper_bound == 0;
        const bool lower_finite = r.lower_bound.has_value();
        std::ostringstream os;
        os << verdict_name(r.verdict) << ", bounds ["
           << (r.lower_bound ? std::to_string(*r.lower_bound) : "?") << ","
           << (r.upper_bound ? std::to_string(*r.upper_bound) : "?") << "]";
        report.add(name + " upper bound 0, lower finite (" + cfg_name + ")",
                   upper_zero && lower_finite && r.verdict == LocalityReport::Verdict::local_in_window,
                   os.str());
    };
    scan_kind(Cocycle::geometric_function(cfg, sep), "gamma_S function");
    scan_kind(Cocycle::geometric_vector(cfg, sep, ProjConn{}), "gamma_S vector");
    scan_kind(Cocycle::geometric_mixing(cfg, sep, AffConn{}), "gamma_S mixing");

    // Point cocycle: bounded above but with a nonzero value at level <= -2
    // where the separating cocycle vanishes.
    const Cocycle point = Cocycle::geometric_function(cfg, CycleSpec::in_circle(1));
    const Cocycle gamma_s = Cocycle::geometric_function(cfg, sep);
    const LocalityReport pr = locality_scan(cfg, point, window);
    bool witness_found = false;
    std::string witness;
    const int K = cfg.num_in();
    for (int l = -2; l >= window.level_lo && !witness_found; --l)
        for (int n = std::max(window.deg_lo, l - window.deg_hi);
             n <= std::min(window.deg_hi, l - window.deg_lo) && !witness_found; ++n)
            for (int p = 1; p <= K && !witness_found; ++p)
                for (int r = 1; r <= K && !witness_found; ++r) {
                    const Form x = basis_element(cfg, 0, n, p);
                    const Form y = basis_element(cfg, 0, l - n, r);
                    if (!point(x, y).is_zero() && gamma_s(x, y).is_zero()) {
                        witness_found = true;
                        std::ostringstream os;
                        os << "A[" << n << "," << p << "] ; A[" << l - n << "," << r
                           << "] at level " << l << ": gamma_C1 = " << point(x, y).str()
                           << ", gamma_S = 0";
                        witness = os.str();
                    }
                }
    const bool point_bounded = pr.upper_bound.has_value() && *pr.upper_bound == 0;
    report.add("gamma_C1 bounded above by 0 with level <= -2 witness where gamma_S = 0 (" +
                   cfg_name + ")",
               point_bounded && witness_found, witness);
    return report;
}

RunReport level_zero(const MarkedConfig& cfg, const std::string& cfg_name, int n_max) {
    RunReport report;
    report.suite = "level-zero";
    const CycleSpec sep = CycleSpec::separating(cfg);
    auto run = [&](const Cocycle& gamma, const std::string& name, const Rat& alpha_expected,
                   const Rat& b_expected, bool has_b) {
        const LevelZeroParams params = extract_level_zero(cfg, gamma);
        bool params_ok = true;
        for (const auto& a : params.alpha) params_ok = params_ok && a == alpha_expected;
        if (has_b)
            for (const auto& b : params.b) params_ok = params_ok && b == b_expected;
        const FormulaCheckReport fc = level_zero_formula_check(cfg, gamma, n_max);
        std::string witness;
        if (!fc.ok()) {
            const auto& f = fc.failures.front();
            std::ostringstream os;
            os << "(n,r,s)=(" << f.n << "," << f.r << "," << f.s << "): "
               << rat_pair(f.expected, f.actual);
            witness = os.str();
        } else if (!params_ok) {
            witness = "level-zero parameters differ from (alpha=1, b=0)";
        }
        report.add(name + " level-zero formula, n <= " + std::to_string(n_max) + " (" + cfg_name +
                       ")",
                   params_ok && fc.ok(), witness);
    };
    run(Cocycle::geometric_function(cfg, sep), "gamma_S function: n*delta", Rat(1), Rat(), false);
    run(Cocycle::geometric_mixing(cfg, sep, AffConn{}), "gamma_S mixing: n(n-1)*delta", Rat(1),
        Rat(), true);
    run(Cocycle::geometric_vector(cfg, sep, ProjConn{}), "gamma_S vector: ((n+1)n(n-1)/12)*delta",
        Rat(1), Rat(), true);
    return report;
}

RunReport pullcyc(const MarkedConfig& cfg, const std::string& cfg_name, int lambda,
                  int halfwidth) {
    RunReport report;
    report.suite = "pullcyc";
    const PullcycReport pr = verify_pullcyc(cfg, lambda, halfwidth);
    bool values_ok = true;
    std::string witness;
    for (const auto& c : pr.checks)
        if (!c.ok() && values_ok) {
            values_ok = false;
            witness = c.name + ": " + rat_pair(c.expected, c.actual);
        }
    std::ostringstream os;
    os << "pullback lambda=" << lambda << " (" << cfg_name << ")";
    report.add(os.str() + " values and coefficients", values_ok, witness);
    std::ostringstream cob;
    cob << "V terms " << pr.mixing_dec.cob.terms.size() << ", W terms "
        << pr.vector_dec.cob.terms.size();
    report.add(os.str() + " finite coboundaries", pr.decompositions_finite, cob.str());
    return report;
}

RunReport properties(const MarkedConfig& cfg, const std::string& cfg_name, int triples,
                     int banded_triples, uint64_t seed) {
    RunReport report;
    report.suite = "properties";
    const DegreeWindow window{-6, 6};
    const std::vector<std::pair<CycleSpec, std::string>> cycles{
        {CycleSpec::separating(cfg), "sep"}, {CycleSpec::in_circle(1), "P:1"}};
    for (const auto& [cycle, cname] : cycles) {
        const Cocycle gamma = Cocycle::geometric_function(cfg, cycle);
        const auto mult =
            check_cocycle_properties(cfg, gamma, CocycleProperty::multiplicative,
                                     sample_triples(cfg, CocycleProperty::multiplicative, window,
                                                    triples, seed));
        report.add("multiplicative gamma_" + cname + " on " + std::to_string(triples) +
                       " triples (" + cfg_name + ")",
                   mult.ok(), mult.ok() ? "" : mult.failures.front().sample);
        const auto linv = check_cocycle_properties(
            cfg, gamma, CocycleProperty::l_invariant,
            sample_triples(cfg, CocycleProperty::l_invariant, window, triples, seed + 1));
        report.add("L-invariant gamma_" + cname + " on " + std::to_string(triples) + " triples (" +
                       cfg_name + ")",
                   linv.ok(), linv.ok() ? "" : linv.failures.front().sample);
    }

    // standard matrix cocycle: cocycle condition and multiplicativity on
    // random banded matrices with finite support
    if (banded_triples > 0) {
        SplitMix rng(seed + 2);
        const IndexWindow mwin{-48, 48};
        auto random_banded = [&]() {
            BandedWindowMatrix m(mwin, 3);
            const int entries = rng.in_range(1, 6);
            for (int i = 0; i < entries; ++i) {
                const int row = rng.in_range(-6, 5);
                const int shift = rng.in_range(-3, 3);
                m.add(row, row + shift, Rat(rng.in_range(-4, 4)));
            }
            return m;
        };
        int cocycle_failures = 0, mult_failures = 0;
        for (int i = 0; i < banded_triples; ++i) {
            const BandedWindowMatrix A = random_banded();
            const BandedWindowMatrix B = random_banded();
            const BandedWindowMatrix C = random_banded();
            const Rat jac = std_cocycle(BandedWindowMatrix::commutator(A, B), C) +
                            std_cocycle(BandedWindowMatrix::commutator(B, C), A) +
                            std_cocycle(BandedWindowMatrix::commutator(C, A), B);
            if (!jac.is_zero()) ++cocycle_failures;
            const Rat mult = std_cocycle(BandedWindowMatrix::truncated_product(A, B), C) +
                             std_cocycle(BandedWindowMatrix::truncated_product(B, C), A) +
                             std_cocycle(BandedWindowMatrix::truncated_product(C, A), B);
            if (!mult.is_zero()) ++mult_failures;
        }
        report.add("standard matrix cocycle condition on " + std::to_string(banded_triples) +
                       " banded triples",
                   cocycle_failures == 0, "");
        report.add("standard matrix cocycle multiplicativity on " +
                       std::to_string(banded_triples) + " banded triples",
                   mult_failures == 0, "");
    }
    return report;
}

RunReport decompose_roundtrip(const MarkedConfig& cfg, const std::string& cfg_name, int count,
                              uint64_t seed) {
    RunReport report;
    report.suite = "decompose";
    SplitMix rng(seed);
    const int K = cfg.num_in();
    const ScanWindow window{-6, 6, -8, 8};
    for (int i = 0; i < count; ++i) {
        const bool mixing = i % 2 == 0;
        std::vector<Rat> alpha;
        for (int r = 1; r <= K; ++r) alpha.push_back(Rat(rng.in_range(-3, 3)));
        CoboundaryData cob;
        cob.kind = mixing ? CoboundaryData::Kind::V : CoboundaryData::Kind::W;
        const int support = rng.in_range(0, 6);
        for (int s = 0; s < support; ++s) {
            const int level = rng.in_range(-4, 3);
            const int r = rng.in_range(1, K);
            Rat c(rng.in_range(-5, 5), rng.in_range(1, 3));
            if (!c.is_zero()) cob.terms[{level, r}] += c;
        }
        for (auto it = cob.terms.begin(); it != cob.terms.end();)
            it = it->second.is_zero() ? cob.terms.erase(it) : std::next(it);

        Decomposition input{alpha, cob};
        const CocycleKind kind = mixing ? CocycleKind::mixing : CocycleKind::vector;
        const Cocycle gamma = cocycle_from_decomposition(cfg, kind, input);
        std::string witness;
        bool ok = true;
        try {
            const Decomposition dec = decompose_bounded(cfg, gamma, window);
            if (dec.alpha != alpha) {
                ok = false;
                witness = "alpha mismatch";
            }
            std::map<std::pair<int, int>, Rat> recovered;
            for (const auto& [key, c] : dec.cob.terms)
                if (!c.is_zero()) recovered[key] = c;
            if (ok && recovered != cob.terms) {
                ok = false;
                witness = "coboundary mismatch";
            }
        } catch (const std::exception& ex) {
            ok = false;
            witness = ex.what();
        }
        report.add("round-trip " + std::string(mixing ? "mixing" : "vector") + " #" +
                       std::to_string(i) + " (" + cfg_name + ")",
                   ok, witness);
    }
    return report;
}

RunReport affine(const MarkedConfig& cfg, const std::string& cfg_name, int halfwidth) {
    RunReport report;
    report.suite = "affine";
    const FinDimLie sl2 = FinDimLie::sl2();
    const Cocycle gamma_s = Cocycle::geometric_function(cfg, CycleSpec::separating(cfg));
    const JacobiReport jr = jacobi_check(cfg, sl2, gamma_s, DegreeWindow{-halfwidth, halfwidth});
    report.add("sl2 (x) A Jacobi on degrees [-" + std::to_string(halfwidth) + "," +
                   std::to_string(halfwidth) + "] (" + cfg_name + "), " +
                   std::to_string(jr.checked) + " triples",
               jr.ok(), jr.ok() ? "" : jr.failures.front().triple);
    // a generic scalar multiple on a smaller window (the residual splits into
    // current and central components, so one nonzero scale settles all)
    const JacobiReport js = jacobi_check(cfg, sl2, gamma_s.scaled(Rat(7, 2)),
                                         DegreeWindow{-std::min(halfwidth, 2), std::min(halfwidth, 2)});
    report.add("sl2 (x) A Jacobi with the cocycle scaled by 7/2 (" + cfg_name + "), " +
                   std::to_string(js.checked) + " triples",
               js.ok(), js.ok() ? "" : js.failures.front().triple);

    // gl(2) counterexample: psi local but not multiplicative, yet the trace
    // cocycle satisfies the current-algebra cocycle condition.
    std::map<std::pair<std::pair<int, int>, std::pair<int, int>>, Rat> table;
    table[{{0, 1}, {3, 1}}] = Rat(1);
    const Cocycle psi = Cocycle::from_table(cfg, table, "psi(A_0,A_3)=1");
    const ReductiveCocycle counter = reductive_counterexample(cfg, 2, psi);
    const JacobiReport cc =
        current_cocycle_condition_check(cfg, counter, DegreeWindow{-1, 4});
    report.add("gl(2) trace cocycle condition on degrees [-1,4] (" + cfg_name + "), " +
                   std::to_string(cc.checked) + " triples",
               cc.ok(), cc.ok() ? "" : cc.failures.front().triple);

    const auto mult = check_cocycle_properties(
        cfg, psi, CocycleProperty::multiplicative,
        {SampleTriple{D1Element::function(basis_element(cfg, 0, 0, 1)),
                      D1Element::function(basis_element(cfg, 0, 3, 1)),
                      D1Element::function(basis_element(cfg, 0, 0, 1)),
                      "A[0,1] ; A[3,1] ; A[0,1]"}});
    report.add("psi fails the multiplicative check (" + cfg_name + ")", !mult.ok(),
               mult.ok() ? "unexpectedly multiplicative" : mult.failures.front().sample);
    return report;
}

RunReport appendix_fixture(int n_max) {
    RunReport report;
    report.suite = "appendix";
    // P1 = 0, P2 = 1, Q1 = inf; g_n = z^{-n}(z-1)^n, e_n = z^n(z-1)^{-n+1} d/dz.
    const RatFunc z = RatFunc::variable();
    int failures = 0;
    for (int n = 1; n <= n_max; ++n) {
        const RatFunc g = z.pow(-n) * (z - RatFunc(1)).pow(n);
        const RatFunc e = z.pow(n) * (z - RatFunc(1)).pow(-n + 1);
        const RatFunc expected = Rat(n) * z.pow(-1);
        if (e * g.derivative() != expected) ++failures;
    }
    report.add("e_n g_n' = n/z for n <= " + std::to_string(n_max), failures == 0,
               failures == 0 ? "" : std::to_string(failures) + " mismatches");
    return report;
}

std::vector<RunReport> acceptance(bool quick) {
    std::vector<RunReport> out;
    const std::vector<std::pair<MarkedConfig, std::string>> all_configs{
        {stock_config("classical"), "classical"},
        {stock_config("two_one"), "two_one"},
        {stock_config("two_two"), "two_two"},
        {stock_config("three_one"), "three_one"}};
    const std::vector<std::pair<MarkedConfig, std::string>> small_configs{all_configs[0],
                                                                          all_configs[1]};
    const MarkedConfig& classical = all_configs[0].first;
    const MarkedConfig& two_one = all_configs[1].first;
    const std::vector<int> lambdas{-1, 0, 1, 2};

    auto merge = [](const std::string& suite, const std::vector<RunReport>& parts) {
        RunReport merged;
        merged.suite = suite;
        for (const auto& r : parts)
            merged.checks.insert(merged.checks.end(), r.checks.begin(), r.checks.end());
        return merged;
    };

    // 1
    out.push_back(virasoro(quick ? 6 : 20));
    // 2
    {
        std::vector<RunReport> parts;
        for (const auto& [cfg, name] : all_configs)
            parts.push_back(duality(cfg, name, lambdas, quick ? 3 : 6));
        out.push_back(merge("duality", parts));
    }
    // 3
    {
        std::vector<RunReport> parts;
        for (const auto& [cfg, name] : all_configs)
            parts.push_back(almost_grading(cfg, name, lambdas, quick ? 3 : 5));
        out.push_back(merge("almost-grading", parts));
    }
    // 4
    out.push_back(locality(two_one, "two_one", quick ? 6 : 12));
    // 5
    {
        std::vector<RunReport> parts;
        for (const auto& [cfg, name] : small_configs)
            parts.push_back(level_zero(cfg, name, quick ? 4 : 8));
        out.push_back(merge("level-zero", parts));
    }
    // 6
    {
        std::vector<RunReport> parts;
        for (const auto& [cfg, name] : small_configs)
            for (int lambda : {-1, 0, 1, 2, 3})
                parts.push_back(pullcyc(cfg, name, lambda, quick ? 4 : 6));
        out.push_back(merge("pullcyc", parts));
    }
    // 7
    {
        std::vector<RunReport> parts;
        uint64_t seed = 0xc0c7c1e5ULL;
        bool banded_done = false;
        for (const auto& [cfg, name] : all_configs) {
            parts.push_back(properties(cfg, name, quick ? 40 : 200, banded_done ? 0 : 50, seed++));
            banded_done = true;
        }
        out.push_back(merge("properties", parts));
    }
    // 8
    out.push_back(decompose_roundtrip(two_one, "two_one", quick ? 4 : 20, 0xdec0de5eULL));
    // 9
    out.push_back(affine(classical, "classical", quick ? 2 : 4));
    // 10
    out.push_back(appendix_fixture(quick ? 8 : 30));
    return out;
}

}  // namespace kn::verify
