#include "kn/glinf.hpp"

#include <doctest.h>

using namespace kn;

namespace {

MarkedConfig classical() { return MarkedConfig({Rat(0)}, {RiemannPoint::infinity()}); }
MarkedConfig two_one() { return MarkedConfig({Rat(0), Rat(1)}, {RiemannPoint::infinity()}); }

Form A(const MarkedConfig& cfg, int n, int p = 1) { return basis_element(cfg, 0, n, p); }
Form e(const MarkedConfig& cfg, int n, int p = 1) { return basis_element(cfg, -1, n, p); }

BandedWindowMatrix diag(IndexWindow w, int r, std::map<int, Rat> mu) {
    return BandedWindowMatrix::shifted_diagonal(w, r, mu);
}

}  // namespace

TEST_CASE("wedge index map is a bijection with (0,1) -> 0") {
    for (int K : {1, 2, 3}) {
        const WedgeIndexMap idx{K};
        CHECK(idx.to_index(0, 1) == 0);
        for (int i = -20; i <= 20; ++i) {
            const auto [n, r] = idx.from_index(i);
            CHECK(1 <= r);
            CHECK(r <= K);
            CHECK(idx.to_index(n, r) == i);
        }
    }
}

TEST_CASE("std_cocycle: generator formulas") {
    const IndexWindow w{-16, 16};
    // alpha(A_r(mu), A_{-s}(mu')) = 0 for r != s
    std::map<int, Rat> mu, nu;
    for (int i = -12; i < 12; ++i) {
        mu[i] = Rat(i + 2);
        nu[i] = Rat(2 * i - 1);
    }
    CHECK(std_cocycle(diag(w, 1, mu), diag(w, 2, nu)) == Rat(0));
    CHECK(std_cocycle(diag(w, 0, mu), diag(w, 0, nu)) == Rat(0));
    // r > 0 branch: alpha(A_r(mu), A_{-r}(mu')) = -sum_{k=0}^{r-1} mu_{k-r} mu'_k
    for (int r = 1; r <= 3; ++r) {
        Rat expected;
        for (int k = 0; k <= r - 1; ++k) expected -= mu.at(k - r) * nu.at(k);
        CHECK(std_cocycle(diag(w, r, mu), diag(w, -r, nu)) == expected);
        // antisymmetry gives the r < 0 branch
        CHECK(std_cocycle(diag(w, -r, nu), diag(w, r, mu)) == -expected);
    }
    // alpha(A_1(mu), A_{-1}(mu')) = -mu_{-1} mu'_0
    CHECK(std_cocycle(diag(w, 1, mu), diag(w, -1, nu)) == -(mu.at(-1) * nu.at(0)));
    // alpha(E_{-1,0}, E_{0,-1}) = -1
    CHECK(std_cocycle(BandedWindowMatrix::unit(w, -1, 0), BandedWindowMatrix::unit(w, 0, -1)) ==
          Rat(-1));
}

TEST_CASE("std_cocycle: window enlargement invariance and refusal") {
    std::map<int, Rat> mu{{-2, Rat(3)}, {-1, Rat(1, 2)}, {0, Rat(-1)}, {1, Rat(2)}};
    std::map<int, Rat> nu{{-1, Rat(5)}, {0, Rat(7)}, {2, Rat(-2)}};
    const Rat small = std_cocycle(diag({-8, 8}, 2, mu), diag({-8, 8}, -2, nu));
    const Rat large = std_cocycle(diag({-30, 30}, 2, mu), diag({-30, 30}, -2, nu));
    CHECK(small == large);
    CHECK_THROWS(std_cocycle(diag({-3, 3}, 2, mu), diag({-3, 3}, -2, nu)));
}

TEST_CASE("std_cocycle vanishes on block-diagonal matrices") {
    // A2 = A3 = B2 = B3 = 0: entries only in the diagonal quadrants
    const IndexWindow w{-10, 10};
    BandedWindowMatrix a(w, 4), b(w, 4);
    a.add(2, 3, Rat(5));
    a.add(-4, -2, Rat(7));
    b.add(1, 1, Rat(-2));
    b.add(-3, -5, Rat(9));
    CHECK(std_cocycle(a, b) == Rat(0));
}

TEST_CASE("phi_lambda: classical embeddings") {
    const MarkedConfig cfg = classical();
    const IndexWindow w{-10, 10};
    // x = A_1: the sub-diagonal of ones
    const BandedWindowMatrix m =
        phi_lambda(cfg, 0, D1Element::function(A(cfg, 1)), w);
    for (int i = w.lo; i < w.hi - 1; ++i) CHECK(m.at(i + 1, i) == Rat(1));
    // x = e_1 at weight lambda: entries (i, i-1) = i - 1 + lambda
    for (int lambda : {0, 2}) {
        const BandedWindowMatrix me =
            phi_lambda(cfg, lambda, D1Element::vector_field(e(cfg, 1)), w);
        for (int i = w.lo + 1; i < w.hi; ++i) CHECK(me.at(i, i - 1) == Rat(i - 1 + lambda));
    }
}

TEST_CASE("phi_lambda: block-banded leading pattern for two in-points") {
    // A_{0,1} acts on the weight-0 basis as delta_{1,r} times the identity at
    // leading order: diagonal entries 1 on point-1 columns, 0 on point-2
    // columns, everything else strictly below the diagonal.
    const MarkedConfig cfg = two_one();
    const WedgeIndexMap idx{2};
    const IndexWindow w{-12, 12};
    const BandedWindowMatrix m =
        phi_lambda(cfg, 0, D1Element::function(basis_element(cfg, 0, 0, 1)), w);
    for (int col = -6; col < 6; ++col) {
        const auto [deg, point] = idx.from_index(col);
        CHECK(m.at(col, col) == (point == 1 ? Rat(1) : Rat(0)));
    }
    for (const auto& [key, v] : m.entries()) {
        const auto [dr, pr] = idx.from_index(key.first);
        const auto [dc, pc] = idx.from_index(key.second);
        CHECK(dr >= dc);  // lower shift zero: images never drop in degree
    }
}

TEST_CASE("phi_lambda is a Lie homomorphism on safe columns") {
    const MarkedConfig cfg = two_one();
    const IndexWindow w{-24, 24};
    const int lambda = 1;
    const Form x = e(cfg, 1, 1), y = e(cfg, -1, 2);
    const BandedWindowMatrix mx = phi_lambda(cfg, lambda, D1Element::vector_field(x), w);
    const BandedWindowMatrix my = phi_lambda(cfg, lambda, D1Element::vector_field(y), w);
    const BandedWindowMatrix lhs = BandedWindowMatrix::commutator(mx, my);
    const BandedWindowMatrix rhs =
        phi_lambda(cfg, lambda, D1Element::vector_field(vf_bracket(x, y)), w);
    // compare entries with both indices safely inside the window
    const int safe = 12;
    for (const auto& [key, v] : rhs.entries())
        if (std::abs(key.first) <= safe && std::abs(key.second) <= safe)
            CHECK(lhs.at(key.first, key.second) == v);
    for (const auto& [key, v] : lhs.entries())
        if (std::abs(key.first) <= safe && std::abs(key.second) <= safe)
            CHECK(rhs.at(key.first, key.second) == v);
}

TEST_CASE("pullback_cocycle: the five classical level values") {
    const MarkedConfig cfg = classical();
    const IndexWindow w{-60, 60};
    for (int lambda : {-1, 0, 1, 2, 3}) {
        const Cocycle g = pullback_cocycle(cfg, lambda, w);
        const long L = lambda;
        CHECK(g(A(cfg, 1), A(cfg, -1)) == Rat(1));
        CHECK(g(e(cfg, 1), e(cfg, -1)) == Rat(-L * (L - 1)));
        CHECK(g(e(cfg, 2), e(cfg, -2)) == Rat(-(1 - 2 * L) * (1 - 2 * L) + 2 * L * (2 - 2 * L)));
        CHECK(g(e(cfg, 1), A(cfg, -1)) == Rat(L - 1));
        CHECK(g(e(cfg, -1), A(cfg, 1)) == Rat(L));
    }
}

TEST_CASE("pullback_cocycle: multiplicative on the function algebra, local") {
    const MarkedConfig cfg = two_one();
    const Cocycle g = pullback_cocycle(cfg, 0, IndexWindow{-80, 80});
    const D1Split split = split_d1_cocycle(g);
    CHECK(check_cocycle_properties(cfg, split.function_part, CocycleProperty::multiplicative,
                                   sample_triples(cfg, CocycleProperty::multiplicative,
                                                  DegreeWindow{-4, 4}, 25, 3))
              .ok());
    const LocalityReport r = locality_scan(cfg, g, ScanWindow{-5, 5, -5, 5});
    REQUIRE(r.upper_bound.has_value());
    CHECK(*r.upper_bound == 0);
    CHECK(r.verdict == LocalityReport::Verdict::local_in_window);
}

TEST_CASE("pullback_cocycle: five level values on the remaining configurations") {
    const std::vector<MarkedConfig> configs{
        MarkedConfig({Rat(0), Rat(1)}, {RiemannPoint::at(Rat(-1)), RiemannPoint::infinity()}),
        MarkedConfig({Rat(0), Rat(1), Rat(-1)}, {RiemannPoint::infinity()})};
    for (const MarkedConfig& cfg : configs)
        for (int lambda : {0, 2}) {
            const Cocycle g = pullback_cocycle(cfg, lambda, IndexWindow{-90, 90});
            const long L = lambda;
            for (int r = 1; r <= cfg.num_in(); ++r) {
                auto Ar = [&](int n) { return D1Element::function(basis_element(cfg, 0, n, r)); };
                auto er = [&](int n) {
                    return D1Element::vector_field(basis_element(cfg, -1, n, r));
                };
                CHECK(g(Ar(1), Ar(-1)) == Rat(1));
                CHECK(g(er(1), er(-1)) == Rat(-L * (L - 1)));
                CHECK(g(er(2), er(-2)) ==
                      Rat(-(1 - 2 * L) * (1 - 2 * L) + 2 * L * (2 - 2 * L)));
                CHECK(g(er(1), Ar(-1)) == Rat(L - 1));
                CHECK(g(er(-1), Ar(1)) == Rat(L));
            }
        }
}

TEST_CASE("pullback_cocycle refuses a too-small window") {
    const MarkedConfig cfg = classical();
    const Cocycle g = pullback_cocycle(cfg, 0, IndexWindow{-3, 3});
    CHECK_THROWS(g(e(cfg, 5), e(cfg, -5)));
}

TEST_CASE("verify_pullcyc: classical lambda = 0 and 2") {
    const MarkedConfig cfg = classical();
    for (int lambda : {0, 2}) {
        const PullcycReport report = verify_pullcyc(cfg, lambda, 4);
        for (const auto& c : report.checks) {
            INFO(c.name, " expected ", c.expected.str(), " got ", c.actual.str());
            CHECK(c.ok());
        }
        CHECK(report.ok());
    }
    // lambda = 2: mixing coefficient -(1-4)/2 = 3/2, vector coefficient -26
    const PullcycReport r2 = verify_pullcyc(cfg, 2, 4);
    bool saw_mix = false, saw_vec = false;
    for (const auto& c : r2.checks) {
        if (c.name.rfind("mixing alpha", 0) == 0) {
            CHECK(c.expected == Rat(3, 2));
            saw_mix = true;
        }
        if (c.name.rfind("vector alpha", 0) == 0) {
            CHECK(c.expected == Rat(-26));
            saw_vec = true;
        }
    }
    CHECK(saw_mix);
    CHECK(saw_vec);
}

TEST_CASE("verify_pullcyc: lambda = 1 on two in-points") {
    const PullcycReport report = verify_pullcyc(two_one(), 1, 4);
    for (const auto& c : report.checks) {
        INFO(c.name, " expected ", c.expected.str(), " got ", c.actual.str());
        CHECK(c.ok());
    }
    bool saw = false;
    for (const auto& c : report.checks)
        if (c.name.rfind("mixing alpha", 0) == 0) {
            CHECK(c.expected == Rat(1, 2));
            saw = true;
        }
    CHECK(saw);
}
