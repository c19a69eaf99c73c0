#pragma once

/// Finitely banded doubly infinite matrices materialized on an index window,
/// the embedding of the function / vector-field / differential operator
/// algebras via their action on the weight-lambda basis, and the standard
/// 2-cocycle with its pullback.
///
/// The standard cocycle tr(pi([A,B]) - [pi(A),pi(B)]) reduces to the corner
/// block traces tr(A3 B2) - tr(B3 A2) (A3 = rows >= 0 / cols < 0, A2 = rows
/// < 0 / cols >= 0); it is exact as soon as the windows cover
/// [-(bandA+bandB), bandA+bandB), and evaluation refuses smaller windows
/// rather than approximating.

#include "kn/cocycle.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace kn {

struct IndexWindow {
    int lo = 0;
    int hi = 0;  // half-open [lo, hi)

    bool contains(int i) const { return lo <= i && i < hi; }
    int width() const { return hi - lo; }
};

class BandedWindowMatrix {
public:
    BandedWindowMatrix() = default;
    BandedWindowMatrix(IndexWindow window, int band) : window_(window), band_(band) {}

    const IndexWindow& window() const { return window_; }
    int band() const { return band_; }
    void widen_band(int band) { band_ = std::max(band_, band); }

    Rat at(int row, int col) const;
    /// Stores a value; both indices must be in the window and within the band.
    void set(int row, int col, const Rat& v);
    /// Accumulate; widens the band if needed but never the window.
    void add(int row, int col, const Rat& v);

    const std::map<std::pair<int, int>, Rat>& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }

    friend BandedWindowMatrix operator+(const BandedWindowMatrix& a, const BandedWindowMatrix& b);
    friend BandedWindowMatrix operator-(const BandedWindowMatrix& a, const BandedWindowMatrix& b);
    friend BandedWindowMatrix operator*(const Rat& s, const BandedWindowMatrix& a);

    /// Matrix product restricted to entries whose inner summation range lies
    /// fully inside both windows; other entries are omitted.
    static BandedWindowMatrix truncated_product(const BandedWindowMatrix& a,
                                                const BandedWindowMatrix& b);
    static BandedWindowMatrix commutator(const BandedWindowMatrix& a, const BandedWindowMatrix& b);

    /// Shifted diagonal sum mu_i E_{i,i+r} over the window.
    static BandedWindowMatrix shifted_diagonal(IndexWindow window, int r,
                                               const std::map<int, Rat>& mu);
    static BandedWindowMatrix unit(IndexWindow window, int row, int col);

private:
    IndexWindow window_;
    int band_ = 0;
    std::map<std::pair<int, int>, Rat> entries_;
};

/// Bijection Z x {1..K} <-> Z with (n,r) -> K n + (r-1); (0,1) -> 0.
struct WedgeIndexMap {
    int K = 1;

    int to_index(int n, int r) const { return K * n + (r - 1); }
    std::pair<int, int> from_index(int idx) const {
        int n = idx >= 0 ? idx / K : -((-idx + K - 1) / K);
        return {n, idx - K * n + 1};
    }
};

/// Matrix of x acting on the weight-lambda basis over the window: column
/// iota(m,r) holds the expansion of x . f_{m,r}; rows outside the window are
/// dropped but still counted into the recorded band.
BandedWindowMatrix phi_lambda(const MarkedConfig& cfg, int lambda, const D1Element& x,
                              const IndexWindow& window);

/// The standard cocycle via corner block traces; throws when either window is
/// smaller than [-(bandA+bandB), bandA+bandB).
Rat std_cocycle(const BandedWindowMatrix& a, const BandedWindowMatrix& b);

/// The pullback gamma_lambda(x, y) = alpha(Phi(x), Phi(y)) as a d1-kind
/// evaluator; embeddings of basis elements are cached.
Cocycle pullback_cocycle(const MarkedConfig& cfg, int lambda, const IndexWindow& window);

struct PullcycReport {
    struct ValueCheck {
        std::string name;
        Rat expected, actual;
        bool ok() const { return expected == actual; }
    };
    std::vector<ValueCheck> checks;
    Decomposition mixing_dec;
    Decomposition vector_dec;
    bool decompositions_finite = false;

    bool ok() const {
        for (const auto& c : checks)
            if (!c.ok()) return false;
        return decompositions_finite;
    }
};

/// Full verification of the pullback cocycle: the five level-zero raw values,
/// the extracted separating coefficients of the three parts, and finite
/// coboundary data for the mixing and vector parts.
PullcycReport verify_pullcyc(const MarkedConfig& cfg, int lambda, int degree_halfwidth);

}  // namespace kn
