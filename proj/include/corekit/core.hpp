/**
 * @file core.hpp
 * @brief Core computations for ideals: the colon formula with hypothesis
 *        audit, the height-one variant, Monte-Carlo sandwich certification,
 *        balanced-colon independence, graded slices and the Jout identity.
 */
#pragma once

#include "corekit/reduction.hpp"

#include <optional>

namespace corekit
{

/// What the returned colon value is known to be, given the audit:
/// `certified` means every audited hypothesis passed and the colon
/// stabilized, so the value is the core; `upper_lower_gap` means the
/// hypotheses passed but stabilization was not observed, so the value is
/// only a lower bound; `hypotheses_violated` flags a failed audit.
enum class Certification
{
    certified,
    upper_lower_gap,
    hypotheses_violated
};

const char *certification_name(Certification c);

struct CoreAudit
{
    GsReport gs;            // G_s at s = analytic spread
    bool height_ok = false; // ht(J : I) >= analytic spread
    bool char_ok = false;   // char k = 0 or > r - ell + g
    // depth hypotheses are never verified; reports render them as
    // "not-checked"
};

struct CoreReport
{
    IdealHandle core; // J^{n+1} : I^n at n = n_used
    IdealHandle J;
    bool auto_J = false;
    int n_used = 0;
    int n_threshold = 0; // max(r - ell + g, 0)
    int g = 0;           // height of I
    int ell = 0;         // analytic spread of I
    int r = 0;           // reduction number of I with respect to J
    int a = 0;           // 1 - g, canonical-module grading datum
    int s_shift = 0;     // ell - g, canonical-module grading datum
    bool stabilized = false;
    CoreAudit audit;
    Certification certification = Certification::hypotheses_violated;
    std::vector<std::string> warnings;
};

/// Computes J^{n+1} : I^n at the smallest admissible n, raising n until
/// three consecutive values agree. J is verified as a reduction when given
/// and sampled at random otherwise.
CoreReport core_formula(const IdealHandle &I, const std::optional<IdealHandle> &J,
                        Rng rng, const Options &opt);

/// Core of an ideal with analytic spread and height both one, computed as
/// J^{n+1} : sum of (J, y)^n over randomly sampled y in I. Batches of
/// samples are added until the result survives one full extra batch.
IdealHandle core_height_one(const IdealHandle &I, const std::optional<IdealHandle> &J,
                            Rng rng, const Options &opt, int batch = 4);

struct SandwichReport
{
    CoreReport formula; // formula.core is the lower bound
    IdealHandle upper;  // intersection of sampled reductions
    bool equal = false;
    int trials_used = 0;
};

/// Intersects random minimal reductions until the running intersection is
/// unchanged for `opt.stability` consecutive trials, and pairs that upper
/// bound with the colon-formula lower bound.
SandwichReport monte_carlo_core(const IdealHandle &I, Rng rng, const Options &opt);

struct BalancedWitness
{
    IdealHandle J;
    int n = 0;
    IdealHandle at_n;  // J^{i+n} : I^n
    IdealHandle at_n1; // J^{i+n+1} : I^{n+1}
};

struct BalancedReport
{
    bool equal = false;
    std::vector<BalancedWitness> witnesses;
};

/// Checks that J^{i+n} : I^n does not depend on the minimal reduction J or
/// on n: samples `count` reductions and compares the colon at n and n+1.
BalancedReport balanced_colon(const IdealHandle &I, int i, Rng rng, int count,
                              const Options &opt);

/// The graded slice J^{i+n} : I^n of the canonical module of the extended
/// Rees algebra, as a plain ideal. Requires n at or above the stabilization
/// threshold; J^{i+n} means the unit ideal when i+n <= 0.
IdealHandle canonical_slice(const IdealHandle &I, const IdealHandle &J, int i, int n,
                            const Options &opt);

struct JoutReport
{
    bool holds = false;
    std::string failing_side; // "J-side" or "I-side" when holds is false
    std::optional<IdealHandle> lhs;
    std::optional<IdealHandle> rhs;
};

/// Tests J^{i+n} : I^n = J^i (J^n : I^n) = I^i (J^n : I^n) and reports the
/// first failing equality with both sides.
JoutReport jout_check(const IdealHandle &I, const IdealHandle &J, int i, int n);

} // namespace corekit
