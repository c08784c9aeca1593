#pragma once

#include <cstdint>

#include "homcat/correlation.hpp"
#include "homcat/koszul.hpp"
#include "homcat/rng.hpp"
#include "homcat/strings.hpp"

namespace homcat {

// ---------------------------------------------------------------------------
// deterministic generators shared by the verify suites and the test binaries
// ---------------------------------------------------------------------------
namespace gen {

Field random_field(Rng& rng);
Scalar random_scalar(const Field& f, Rng& rng, long span = 2);
Matrix random_matrix(const Field& f, Rng& rng, std::size_t rows, std::size_t cols, long span = 2);
Matrix random_invertible(const Field& f, Rng& rng, std::size_t n);

// bounded complex with prescribed-at-random cohomology (canonical model
// conjugated by random invertible matrices), d^2 = 0 exact
CochainComplex random_complex(const Field& f, Rng& rng, int lo, int len, std::size_t max_dim);

// basis of the space of chain maps src -> dst
std::vector<ChainMap> chain_map_space(const CochainComplex& src, const CochainComplex& dst);
ChainMap random_chain_map(const CochainComplex& src, const CochainComplex& dst, Rng& rng);

AlgebraPtr random_algebra(const Field& f, Rng& rng);
AModule random_module(const AlgebraPtr& alg, Rng& rng, std::size_t max_rank = 2);
// random non-degenerate module SES (falls back to a split one)
Extension1 random_ses(const AlgebraPtr& alg, Rng& rng);

DoubleComplex random_double_complex(const Field& f, Rng& rng, int width, int height,
                                    std::size_t max_dim);

// random degreewise-exact 0 -> B -> B (+) D -> D -> 0 with twisted middle
ShortExactSeq random_complex_ses(const Field& f, Rng& rng, int len, std::size_t max_dim);

// fixtures
DoubleComplex dying_class_fixture(const Field& f); // nonzero d_2; cocycle at (0,1)
Extension1 dual_numbers_nonsplit(const Field& f);  // 0 -> k -> A -> k -> 0
CechAlgebraModel point_model(const AlgebraPtr& alg, std::size_t slots,
                             const std::vector<AModule>& modules);
CechAlgebraModel triangle_model(const AlgebraPtr& alg, std::size_t slots,
                                const std::vector<AModule>& modules);

} // namespace gen

// ---------------------------------------------------------------------------
// named property suites (CLI `verify` and the acceptance gate)
// ---------------------------------------------------------------------------
struct SuiteResult {
    std::string name;
    int checks = 0;
    int failures = 0;
    std::vector<std::string> notes;
    bool passed() const { return failures == 0 && checks > 0; }
};

SuiteResult appendix_suite(std::uint64_t seed, int instances);    // cone/cylinder lemmas
SuiteResult d0_suite(std::uint64_t seed, int instances);          // Koszul dims vs oracle
SuiteResult les_suite(std::uint64_t seed, int instances);         // long exact sequences
SuiteResult spectral_suite(std::uint64_t seed, int instances);    // abutment and pages
SuiteResult correlation_suite(std::uint64_t seed);                // route equality et al.

std::vector<SuiteResult> run_suite(const std::string& name, std::uint64_t seed);

} // namespace homcat
