/**
 * @file reduction.hpp
 * @brief Reductions and their invariants: reduction certificates and
 *        numbers, the fiber cone and analytic spread, random minimal
 *        reductions from general coefficient samples, the G_s condition
 *        via Fitting ideals, and multiplicity.
 */
#pragma once

#include <optional>

#include "corekit/ideal.hpp"
#include "corekit/rng.hpp"

namespace corekit
{

struct Options
{
    uint64_t seed = 0;
    int max_n = 20;    // bound for reduction-certificate scans
    int trials = 64;   // Monte-Carlo trial budget
    int stability = 5; // consecutive unchanged trials treated as stable
    int retries = 8;   // resampling budget for general elements
};

struct ReductionReport
{
    IdealHandle J;
    IdealHandle I;
    std::optional<int> certificate_n; // least n with I^{n+1} = J * I^n
    bool is_reduction = false;
    bool inconclusive = false; // scan exhausted max_n without a certificate
};

// scans n = 0..max_n for I^{n+1} = J * I^n (equality in the context's
// semantics); requires J contained in I
ReductionReport is_reduction(const IdealHandle &J, const IdealHandle &I, int max_n);

// least certificate n; throws when the scan is inconclusive
int reduction_number(const IdealHandle &J, const IdealHandle &I, int max_n);

struct FiberReport
{
    int spread = 0;
    RingPtr fiber_ring;                  // k[T1..Tm], one variable per generator
    std::vector<Polynomial> fiber_ideal; // defining ideal of the fiber cone
};

// dimension of the fiber cone R[I*u] tensor k, computed by eliminating the
// Rees variable and reducing the kernel modulo the maximal ideal
FiberReport analytic_spread(const IdealHandle &I);

// spread-many random coefficient combinations of I's generators, verified
// as a reduction and resampled on failure; appends a warning for small
// prime fields
IdealHandle random_minimal_reduction(const IdealHandle &I, Rng rng, const Options &opt,
                                     std::vector<std::string> *warnings = nullptr);

struct GsReport
{
    unsigned s = 0; // bound actually scanned
    bool infinite = false;
    bool satisfied = true;
    std::optional<unsigned> witness_j; // first j with ht(Fitt_j + I) <= j
};

// G_s: ht(Fitt_j(I) + I) >= j+1 for 0 <= j <= s-1, Fitting ideals taken
// from the syzygy presentation of I over the context ring; s = mu(I) when
// infinite is set
GsReport check_Gs(const IdealHandle &I, unsigned s, bool infinite = false);

// e(I) = colength of a random minimal reduction, cross-checked with an
// independent sample; requires an m-primary ideal
long long multiplicity(const IdealHandle &I, Rng rng, const Options &opt);

} // namespace corekit
