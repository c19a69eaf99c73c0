#include "kn/cocycle.hpp"

#include <doctest.h>

using namespace kn;

namespace {

MarkedConfig classical() { return MarkedConfig({Rat(0)}, {RiemannPoint::infinity()}); }
MarkedConfig two_one() { return MarkedConfig({Rat(0), Rat(1)}, {RiemannPoint::infinity()}); }
MarkedConfig two_two() {
    return MarkedConfig({Rat(0), Rat(1)}, {RiemannPoint::at(Rat(-1)), RiemannPoint::infinity()});
}

Form A(const MarkedConfig& cfg, int n, int p = 1) { return basis_element(cfg, 0, n, p); }
Form e(const MarkedConfig& cfg, int n, int p = 1) { return basis_element(cfg, -1, n, p); }

}  // namespace

TEST_CASE("cycle specs: parsing and resolution") {
    const MarkedConfig cfg = two_one();
    CHECK(CycleSpec::parse("sep", cfg).resolve(cfg).size() == 2);
    const CycleSpec c = CycleSpec::parse("2*P:1-1*Q:1", cfg);
    const auto resolved = c.resolve(cfg);
    REQUIRE(resolved.size() == 2);
    CHECK(resolved[0].second == 2);
    CHECK(resolved[1].second == -1);
    CHECK(resolved[1].first.is_infinity());
    CHECK_THROWS(CycleSpec::parse("P:3", cfg).resolve(cfg));
    CHECK_THROWS(CycleSpec::parse("什么", cfg));
}

TEST_CASE("affine_connection_default") {
    // infinity among the out-points: T0 = 0 in the global chart (its w-chart
    // expression 2/w carries the simple pole at infinity)
    CHECK(affine_connection_default(classical()).is_zero());
    CHECK(affine_connection_default(
              MarkedConfig({Rat(0)}, {RiemannPoint::at(Rat(2)), RiemannPoint::infinity()}))
              .is_zero());
    // all out-points finite: 2/(z - q1) with a simple pole at the first one
    const MarkedConfig cfg({Rat(0)}, {RiemannPoint::at(Rat(2))});
    const RatFunc t = affine_connection_default(cfg);
    CHECK(t == RatFunc(Poly(Rat(2)), Poly::from_coeffs({Rat(-2), Rat(1)})));
    CHECK(order_at(t, RiemannPoint::at(Rat(2))) == -1);
    CHECK(connection_transform_check(t, ConnectionKind::affine).pole_order_at_infinity == 0);
}

TEST_CASE("connection_transform_check") {
    // projective R = 0: Schwarzian of a Moebius map vanishes, so R_w = 0
    const ConnTransformReport pr = connection_transform_check(RatFunc(), ConnectionKind::projective);
    CHECK(pr.w_chart.is_zero());
    CHECK(pr.pole_order_at_infinity == 0);
    CHECK(pr.round_trip_ok);
    // affine T = 0: T_w = 2/w, simple pole at infinity
    const ConnTransformReport ar = connection_transform_check(RatFunc(), ConnectionKind::affine);
    CHECK(ar.w_chart == RatFunc(Poly(Rat(2)), Poly::monomial(Rat(1), 1)));
    CHECK(ar.pole_order_at_infinity == 1);
    CHECK(ar.round_trip_ok);
    // affine T = 2/(z-2): holomorphic at infinity
    const RatFunc t(Poly(Rat(2)), Poly::from_coeffs({Rat(-2), Rat(1)}));
    const ConnTransformReport fr = connection_transform_check(t, ConnectionKind::affine);
    CHECK(fr.pole_order_at_infinity == 0);
    CHECK(fr.round_trip_ok);
}

TEST_CASE("gamma_function: separating values") {
    const MarkedConfig cfg = classical();
    const CycleSpec sep = CycleSpec::separating(cfg);
    CHECK(gamma_function(cfg, sep, A(cfg, -1), A(cfg, 1)) == Rat(1));
    for (int n = -4; n <= 4; ++n)
        for (int m = -4; m <= 4; ++m)
            if (n + m != 0) CHECK(gamma_function(cfg, sep, A(cfg, n), A(cfg, m)) == Rat(0));
    // two in-points, cross-point pair at level zero vanishes
    const MarkedConfig cfg2 = two_one();
    CHECK(gamma_function(cfg2, CycleSpec::separating(cfg2), A(cfg2, -1, 1), A(cfg2, 1, 2)) ==
          Rat(0));
}

TEST_CASE("gamma_vector: Virasoro values") {
    const MarkedConfig cfg = classical();
    const CycleSpec sep = CycleSpec::separating(cfg);
    const ProjConn R0{};
    for (int n = -5; n <= 5; ++n) {
        const Rat expected(static_cast<long>(n) * n * n - n, 12);
        CHECK(gamma_vector(cfg, sep, R0, e(cfg, n), e(cfg, -n)) == expected);
    }
    CHECK(gamma_vector(cfg, sep, R0, e(cfg, 2), e(cfg, -2)) == Rat(1, 2));
    CHECK(gamma_vector(cfg, sep, R0, e(cfg, 1), e(cfg, -1)) == Rat(0));
    CHECK(gamma_vector(cfg, sep, R0, e(cfg, 3), e(cfg, -2)) == Rat(0));
}

TEST_CASE("gamma_mixing: reference values") {
    const MarkedConfig cfg = classical();
    const CycleSpec sep = CycleSpec::separating(cfg);
    const AffConn T0{};
    CHECK(gamma_mixing(cfg, sep, T0, e(cfg, 1), A(cfg, -1)) == Rat(2));
    CHECK(gamma_mixing(cfg, sep, T0, e(cfg, -1), A(cfg, 1)) == Rat(0));
    for (int n = 1; n <= 6; ++n)
        CHECK(gamma_mixing(cfg, sep, T0, e(cfg, -n), A(cfg, n)) == Rat(n * (n - 1)));
}

TEST_CASE("coboundaries: worked examples") {
    const MarkedConfig cfg = classical();
    // W = Omega^0: D_W(e_n, e_-n) = -2n
    CoboundaryData W;
    W.kind = CoboundaryData::Kind::W;
    W.terms[{0, 1}] = Rat(1);
    for (int n = -4; n <= 4; ++n)
        CHECK(coboundary(cfg, W, e(cfg, n), e(cfg, -n)) == Rat(-2 * n));
    // V = omega^0: E_V(e_0, A_m) = m delta_{m,0} = 0 for m != 0; E_V(e_n, A_-n) = -n
    CoboundaryData V;
    V.kind = CoboundaryData::Kind::V;
    V.terms[{0, 1}] = Rat(1);
    for (int m = 1; m <= 4; ++m) CHECK(coboundary(cfg, V, e(cfg, 0), A(cfg, m)) == Rat(0));
    for (int n = -4; n <= 4; ++n) CHECK(coboundary(cfg, V, e(cfg, n), A(cfg, -n)) == Rat(-n));
    // vanishing bracket
    CHECK(coboundary(cfg, W, e(cfg, 2), e(cfg, 2)) == Rat(0));
}

TEST_CASE("check_cocycle_properties on geometric cocycles") {
    for (const MarkedConfig& cfg : {classical(), two_one(), two_two()}) {
        const Cocycle gamma = Cocycle::geometric_function(cfg, CycleSpec::separating(cfg));
        const DegreeWindow w{-6, 6};
        CHECK(check_cocycle_properties(cfg, gamma, CocycleProperty::multiplicative,
                                       sample_triples(cfg, CocycleProperty::multiplicative, w, 50,
                                                      1))
                  .ok());
        CHECK(check_cocycle_properties(cfg, gamma, CocycleProperty::l_invariant,
                                       sample_triples(cfg, CocycleProperty::l_invariant, w, 50, 2))
                  .ok());
        CHECK(check_cocycle_properties(cfg, gamma, CocycleProperty::antisymmetry,
                                       sample_triples(cfg, CocycleProperty::antisymmetry, w, 30, 3))
                  .ok());
        // the d1 extension of an L-invariant cocycle satisfies the cocycle condition
        const Cocycle ext = extend_function_cocycle_to_d1(
            cfg, gamma, sample_triples(cfg, CocycleProperty::l_invariant, w, 30, 4));
        CHECK(check_cocycle_properties(cfg, ext, CocycleProperty::cocycle_condition,
                                       sample_triples(cfg, CocycleProperty::cocycle_condition, w,
                                                      30, 5))
                  .ok());
    }
    // vector cocycle condition, including the quoted triple (e_{-1}, e_0, e_1)
    const MarkedConfig cfg = classical();
    const Cocycle gv = Cocycle::geometric_vector(cfg, CycleSpec::separating(cfg), ProjConn{});
    std::vector<SampleTriple> triple{{D1Element::vector_field(e(cfg, -1)),
                                      D1Element::vector_field(e(cfg, 0)),
                                      D1Element::vector_field(e(cfg, 1)), "e_-1;e_0;e_1"}};
    CHECK(check_cocycle_properties(cfg, gv, CocycleProperty::cocycle_condition, triple).ok());
    CHECK(check_cocycle_properties(cfg, gv, CocycleProperty::cocycle_condition,
                                   sample_triples(cfg, CocycleProperty::cocycle_condition,
                                                  DegreeWindow{-5, 5}, 40, 7))
              .ok());
}

TEST_CASE("mixing cocycle condition (two vector fields, one function)") {
    const MarkedConfig cfg = two_one();
    const Cocycle gm = Cocycle::geometric_mixing(cfg, CycleSpec::separating(cfg), AffConn{});
    CHECK(check_cocycle_properties(cfg, gm, CocycleProperty::cocycle_condition,
                                   sample_triples(cfg, CocycleProperty::cocycle_condition,
                                                  DegreeWindow{-4, 4}, 60, 11))
              .ok());
}

TEST_CASE("extend_function_cocycle_to_d1 refuses non-L-invariant tables") {
    const MarkedConfig cfg = classical();
    std::map<std::pair<std::pair<int, int>, std::pair<int, int>>, Rat> table;
    table[{{0, 1}, {3, 1}}] = Rat(1);
    const Cocycle psi = Cocycle::from_table(cfg, table);
    CHECK_THROWS_AS(extend_function_cocycle_to_d1(
                        cfg, psi,
                        sample_triples(cfg, CocycleProperty::l_invariant, DegreeWindow{-4, 4}, 60,
                                       13)),
                    LInvarianceError);
    // the zero cocycle extends to the zero cocycle
    const Cocycle zero = Cocycle::function_kind([](const Form&, const Form&) { return Rat(); },
                                                "zero");
    const Cocycle ext = extend_function_cocycle_to_d1(
        cfg, zero, sample_triples(cfg, CocycleProperty::l_invariant, DegreeWindow{-3, 3}, 10, 17));
    CHECK(ext(D1Element::function(A(cfg, 1)), D1Element::function(A(cfg, -1))) == Rat(0));
}

TEST_CASE("locality_scan: separating cocycles are local, nonzero only at level 0 classically") {
    const MarkedConfig cfg = classical();
    const ScanWindow w{-10, 10, -10, 10};
    const LocalityReport r =
        locality_scan(cfg, Cocycle::geometric_function(cfg, CycleSpec::separating(cfg)), w);
    CHECK(r.nonzero_levels == std::set<int>{0});
    CHECK(r.verdict == LocalityReport::Verdict::local_in_window);
    REQUIRE(r.upper_bound.has_value());
    CHECK(*r.upper_bound == 0);
    // coboundary with finite support: local in window
    CoboundaryData W;
    W.kind = CoboundaryData::Kind::W;
    W.terms[{0, 1}] = Rat(1);
    const LocalityReport rw = locality_scan(cfg, Cocycle::from_coboundary(cfg, W), w);
    CHECK(rw.nonzero_levels == std::set<int>{0});
    CHECK(rw.verdict == LocalityReport::Verdict::local_in_window);
}

TEST_CASE("locality_scan: point cocycle is only bounded above") {
    const MarkedConfig cfg = two_one();
    const ScanWindow w{-8, 2, -8, 8};
    const Cocycle point = Cocycle::geometric_function(cfg, CycleSpec::in_circle(1));
    const LocalityReport r = locality_scan(cfg, point, w);
    REQUIRE(r.upper_bound.has_value());
    CHECK(*r.upper_bound == 0);
    CHECK(r.verdict == LocalityReport::Verdict::bounded_above_only);
    // witness at level <= -2 where the separating cocycle vanishes:
    // gamma_C1(A_{-2,1}, A_{0,1}) = -1 while gamma_S = 0 there
    const Cocycle sep = Cocycle::geometric_function(cfg, CycleSpec::separating(cfg));
    CHECK(point(A(cfg, -2, 1), A(cfg, 0, 1)) == Rat(-1));
    CHECK(sep(A(cfg, -2, 1), A(cfg, 0, 1)) == Rat(0));
}

TEST_CASE("extract_level_zero and the closed level-zero formulas") {
    for (const MarkedConfig& cfg : {classical(), two_one()}) {
        const CycleSpec sep = CycleSpec::separating(cfg);
        const LevelZeroParams pv =
            extract_level_zero(cfg, Cocycle::geometric_vector(cfg, sep, ProjConn{}));
        for (const auto& a : pv.alpha) CHECK(a == Rat(1));
        for (const auto& b : pv.b) CHECK(b == Rat(0));
        const LevelZeroParams pm =
            extract_level_zero(cfg, Cocycle::geometric_mixing(cfg, sep, AffConn{}));
        for (const auto& a : pm.alpha) CHECK(a == Rat(1));
        for (const auto& b : pm.b) CHECK(b == Rat(0));
        // linearity: 3 * separating function cocycle has alpha = 3
        const LevelZeroParams pf = extract_level_zero(
            cfg, Cocycle::geometric_function(cfg, sep).scaled(Rat(3)));
        for (const auto& a : pf.alpha) CHECK(a == Rat(3));

        CHECK(level_zero_formula_check(cfg, Cocycle::geometric_function(cfg, sep), 8).ok());
        CHECK(level_zero_formula_check(cfg, Cocycle::geometric_mixing(cfg, sep, AffConn{}), 8).ok());
        CHECK(level_zero_formula_check(cfg, Cocycle::geometric_vector(cfg, sep, ProjConn{}), 8).ok());
    }
}

TEST_CASE("bounded function cocycles: multiplicative iff L-invariant") {
    // combinations of point cocycles pass both checks; a non-geometric table
    // fails both
    const MarkedConfig cfg = two_one();
    const DegreeWindow w{-5, 5};
    const Cocycle combo = Cocycle::linear_combination(
        {{Rat(2), Cocycle::geometric_function(cfg, CycleSpec::in_circle(1))},
         {Rat(-3, 2), Cocycle::geometric_function(cfg, CycleSpec::in_circle(2))}});
    CHECK(check_cocycle_properties(cfg, combo, CocycleProperty::multiplicative,
                                   sample_triples(cfg, CocycleProperty::multiplicative, w, 60, 21))
              .ok());
    CHECK(check_cocycle_properties(cfg, combo, CocycleProperty::l_invariant,
                                   sample_triples(cfg, CocycleProperty::l_invariant, w, 60, 22))
              .ok());
    std::map<std::pair<std::pair<int, int>, std::pair<int, int>>, Rat> table;
    table[{{0, 1}, {3, 1}}] = Rat(1);
    const Cocycle psi = Cocycle::from_table(cfg, table);
    CHECK(!check_cocycle_properties(cfg, psi, CocycleProperty::multiplicative,
                                    sample_triples(cfg, CocycleProperty::multiplicative, w, 60, 23))
               .ok());
    // pin a violating triple: psi(e_0 . A_0, A_3) = 0 but psi(e_0 . A_3, A_0) = -3
    auto li_samples = sample_triples(cfg, CocycleProperty::l_invariant, w, 60, 24);
    li_samples.push_back({D1Element::vector_field(e(cfg, 0)), D1Element::function(A(cfg, 0)),
                          D1Element::function(A(cfg, 3)), "e_0;A_0;A_3"});
    CHECK(!check_cocycle_properties(cfg, psi, CocycleProperty::l_invariant, li_samples).ok());
}

TEST_CASE("point cocycles are independent: identity matrix on the test pairs") {
    const MarkedConfig cfg = two_one();
    for (int i = 1; i <= 2; ++i) {
        const Cocycle point = Cocycle::geometric_function(cfg, CycleSpec::in_circle(i));
        for (int r = 1; r <= 2; ++r)
            CHECK(point(A(cfg, -1, r), A(cfg, 1, r)) == (i == r ? Rat(1) : Rat(0)));
    }
}

TEST_CASE("connection changes shift cocycles by exact coboundaries") {
    const MarkedConfig cfg = two_one();
    const CycleSpec sep = CycleSpec::separating(cfg);
    // R -> R + Omega changes the vector cocycle by (1/12) D_Omega
    ProjConn R;
    R.extra = basis_element(cfg, 2, 1, 1);  // a quadratic differential
    const Cocycle with_R = Cocycle::geometric_vector(cfg, sep, R);
    const Cocycle base = Cocycle::geometric_vector(cfg, sep, ProjConn{});
    // T -> T + V changes the mixing cocycle by exactly E_V
    AffConn T;
    T.extra = basis_element(cfg, 1, 0, 1);
    const Cocycle with_T = Cocycle::geometric_mixing(cfg, sep, T);
    const Cocycle mbase = Cocycle::geometric_mixing(cfg, sep, AffConn{});
    for (int n = -3; n <= 3; ++n)
        for (int m = -3; m <= 3; ++m)
            for (int p = 1; p <= 2; ++p)
                for (int r = 1; r <= 2; ++r) {
                    const Form en = e(cfg, n, p), em = e(cfg, m, r), Am = A(cfg, m, r);
                    const Rat dv = with_R(en, em) - base(en, em);
                    const Rat dw =
                        Rat(1, 12) * kn_pairing(cfg, R.extra, vf_bracket(en, em));
                    CHECK(dv == dw);
                    const Rat dm = with_T(en, Am) - mbase(en, Am);
                    CHECK(dm == kn_pairing(cfg, T.extra, lie_derivative(en, Am)));
                }
}

TEST_CASE("decompose_bounded: separating cocycle is its own decomposition") {
    const MarkedConfig cfg = two_one();
    const ScanWindow w{-5, 5, -6, 6};
    const Decomposition dec =
        decompose_bounded(cfg, Cocycle::geometric_vector(cfg, CycleSpec::separating(cfg), ProjConn{}), w);
    CHECK(dec.alpha == std::vector<Rat>{Rat(1), Rat(1)});
    CHECK(dec.cob.empty());
}

TEST_CASE("decompose_bounded: synthetic mixing round-trip") {
    const MarkedConfig cfg = two_one();
    Decomposition input;
    input.alpha = {Rat(1), Rat(2)};
    input.cob.kind = CoboundaryData::Kind::V;
    input.cob.terms[{-1, 1}] = Rat(5);
    const Cocycle gamma = cocycle_from_decomposition(cfg, CocycleKind::mixing, input);
    const Decomposition dec = decompose_bounded(cfg, gamma, ScanWindow{-5, 5, -6, 6});
    CHECK(dec.alpha == input.alpha);
    REQUIRE(dec.cob.terms.size() == 1);
    CHECK(dec.cob.terms.at({-1, 1}) == Rat(5));
}

TEST_CASE("decompose_bounded: pure coboundary round-trip") {
    const MarkedConfig cfg = two_one();
    Decomposition input;
    input.alpha = {Rat(0), Rat(0)};
    input.cob.kind = CoboundaryData::Kind::W;
    input.cob.terms[{2, 1}] = Rat(3, 2);
    input.cob.terms[{-2, 2}] = Rat(-1);
    const Cocycle gamma = cocycle_from_decomposition(cfg, CocycleKind::vector, input);
    const Decomposition dec = decompose_bounded(cfg, gamma, ScanWindow{-5, 5, -6, 6});
    CHECK(dec.alpha == input.alpha);
    CHECK(dec.cob.terms.size() == 2);
    CHECK(dec.cob.terms.at({2, 1}) == Rat(3, 2));
    CHECK(dec.cob.terms.at({-2, 2}) == Rat(-1));
}

TEST_CASE("decompose_bounded: function kind requires multiplicativity") {
    const MarkedConfig cfg = classical();
    std::map<std::pair<std::pair<int, int>, std::pair<int, int>>, Rat> table;
    table[{{0, 1}, {3, 1}}] = Rat(1);
    CHECK_THROWS(decompose_bounded(cfg, Cocycle::from_table(cfg, table), ScanWindow{-4, 4, -5, 5}));
    // and a genuine separating function cocycle decomposes with alpha = 1
    const Decomposition dec = decompose_bounded(
        cfg, Cocycle::geometric_function(cfg, CycleSpec::separating(cfg)), ScanWindow{-4, 4, -5, 5});
    CHECK(dec.alpha == std::vector<Rat>{Rat(1)});
    CHECK(dec.cob.empty());
}

TEST_CASE("split_d1_cocycle recovers the parts") {
    const MarkedConfig cfg = classical();
    const CycleSpec sep = CycleSpec::separating(cfg);
    const Cocycle gf = Cocycle::geometric_function(cfg, sep);
    const Cocycle gm = Cocycle::geometric_mixing(cfg, sep, AffConn{});
    const Cocycle gv = Cocycle::geometric_vector(cfg, sep, ProjConn{});
    const Cocycle combined =
        Cocycle::linear_combination({{Rat(2), gf}, {Rat(-1), gm}, {Rat(3), gv}});
    REQUIRE(combined.kind() == CocycleKind::d1);
    const D1Split split = split_d1_cocycle(combined);
    for (int n = -3; n <= 3; ++n) {
        CHECK(split.function_part(A(cfg, n), A(cfg, -n)) == Rat(2) * gf(A(cfg, n), A(cfg, -n)));
        CHECK(split.vector_part(e(cfg, n), e(cfg, -n)) == Rat(3) * gv(e(cfg, n), e(cfg, -n)));
        CHECK(split.mixing_part(e(cfg, n), A(cfg, -n)) == Rat(-1) * gm(e(cfg, n), A(cfg, -n)));
        // the three parts reassemble the original on mixed pairs
        const D1Element x{A(cfg, n), e(cfg, n + 1)};
        const D1Element y{A(cfg, -n), e(cfg, 1 - n)};
        CHECK(split.function_part(x, y) + split.mixing_part(x, y) + split.vector_part(x, y) ==
              combined(x, y));
    }
    // a pulled-back vector cocycle vanishes when one argument is a function
    const D1Split only_v = split_d1_cocycle(gv.as_d1());
    CHECK(only_v.function_part(A(cfg, 1), A(cfg, -1)) == Rat(0));
    CHECK(only_v.mixing_part(e(cfg, 1), A(cfg, -1)) == Rat(0));
    for (int n = -3; n <= 3; ++n)
        CHECK(only_v.vector_part(e(cfg, n), e(cfg, -n)) == gv(e(cfg, n), e(cfg, -n)));
}
