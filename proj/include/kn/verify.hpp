#pragma once

/// Verification suites: each returns a RunReport with one record per check.
/// These back both the CLI `verify` subcommand and the acceptance runner.

#include "kn/io.hpp"

#include <string>
#include <vector>

namespace kn::verify {

/// Named stock configurations: "classical" (I=(0), O=(inf)),
/// "two_one" (I=(0,1)), "two_two" (I=(0,1), O=(-1,inf)),
/// "three_one" (I=(0,1,-1)).
MarkedConfig stock_config(const std::string& name);
std::vector<std::string> stock_config_names();

/// Classical separating vector cocycle reproduces (n^3-n)/12 delta_{n,-m}.
RunReport virasoro(int n_max);

/// Basis duality over a degree window for the given weights.
RunReport duality(const MarkedConfig& cfg, const std::string& cfg_name,
                  const std::vector<int>& lambdas, int halfwidth);

/// Almost-grading: lower shift zero and exact boundary coefficients for the
/// four operations.
RunReport almost_grading(const MarkedConfig& cfg, const std::string& cfg_name,
                         const std::vector<int>& lie_lambdas, int halfwidth);

/// Locality of the three separating cocycles plus the point-cocycle witness.
RunReport locality(const MarkedConfig& cfg, const std::string& cfg_name, int halfwidth);

/// Level-zero closed forms for the three separating cocycles.
RunReport level_zero(const MarkedConfig& cfg, const std::string& cfg_name, int n_max);

/// Pullback cocycle: raw values, separating coefficients, finite coboundaries.
RunReport pullcyc(const MarkedConfig& cfg, const std::string& cfg_name, int lambda,
                  int halfwidth);

/// Multiplicativity / L-invariance of geometric function cocycles and the
/// standard matrix cocycle identities on random banded triples.
RunReport properties(const MarkedConfig& cfg, const std::string& cfg_name, int triples,
                     int banded_triples, uint64_t seed);

/// Synthetic decomposition round-trips on mixing and vector combinations.
RunReport decompose_roundtrip(const MarkedConfig& cfg, const std::string& cfg_name, int count,
                              uint64_t seed);

/// Affine extension: Jacobi for sl2 with a scaled separating cocycle and the
/// gl(2) trace-form counterexample.
RunReport affine(const MarkedConfig& cfg, const std::string& cfg_name, int halfwidth);

/// Exact test elements on I=(0,1), O=(inf): e_n g_n' = n/z.
RunReport appendix_fixture(int n_max);

/// All acceptance criteria in order; `quick` shrinks windows for smoke runs.
std::vector<RunReport> acceptance(bool quick = false);

}  // namespace kn::verify
