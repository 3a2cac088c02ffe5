/**
 * @file core.cpp
 * @brief Core computations built on the reduction lab: colon formula,
 *        height-one variant, Monte-Carlo sandwich, balanced colon, slices
 *        and the Jout identity.
 */
#include "corekit/core.hpp"

#include <map>

#include "corekit/truncation.hpp"

namespace corekit
{

const char *certification_name(Certification c)
{
    switch (c)
    {
    case Certification::certified:
        return "certified";
    case Certification::upper_lower_gap:
        return "upper-lower-gap";
    default:
        return "hypotheses-violated";
    }
}

static IdealHandle power_or_unit(PowerCache &cache, int k, const ContextPtr &ctx)
{
    if (k <= 0)
        return unit_ideal(ctx);
    return cache.get((unsigned)k);
}

// local contexts compare localizations, so intermediate values are traded
// for their origin components; elsewhere the ideal passes through
static IdealHandle local_rep(const IdealHandle &h)
{
    if (h.context()->local)
        return localize_at_origin(h);
    return h;
}

static void validate_core_input(const IdealHandle &I)
{
    if (is_zero_ideal(I))
        throw Error("core of the zero ideal");
    if (is_unit_ideal(I))
        throw Error("core of the unit ideal");
}

CoreReport core_formula(const IdealHandle &I, const std::optional<IdealHandle> &J,
                        Rng rng, const Options &opt)
{
    validate_core_input(I);
    const ContextPtr &ctx = I.context();
    CoreReport rep;
    rep.g = height(I);
    rep.ell = analytic_spread(I).spread;
    rep.a = 1 - rep.g;
    rep.s_shift = rep.ell - rep.g;

    if (J)
    {
        rep.J = *J;
        rep.auto_J = false;
    }
    else
    {
        rep.J = random_minimal_reduction(I, rng.fork(0), opt, &rep.warnings);
        rep.auto_J = true;
    }
    ReductionReport cert = is_reduction(rep.J, I, opt.max_n);
    if (!cert.is_reduction)
        throw Error("could not certify J as a reduction of I within max-n powers");
    rep.r = *cert.certificate_n;
    rep.n_threshold = std::max(rep.r - rep.ell + rep.g, 0);

    rep.audit.gs = check_Gs(I, (unsigned)rep.ell);
    rep.audit.height_ok = height_or_infinite(colon(rep.J, I)) >= rep.ell;
    uint64_t p = ctx->ring->field.characteristic();
    rep.audit.char_ok = p == 0 || (long long)p > (long long)(rep.r - rep.ell + rep.g);

    // the colon formula needs positive height: at height zero the colon
    // value can strictly contain the core even when every audit passes
    if (rep.g == 0)
        rep.warnings.push_back("height(I) = 0: the colon value can differ from the core");

    PowerCache PJ(rep.J);
    PowerCache PI(I);
    std::map<int, IdealHandle> colons;
    auto colon_at = [&](int n) -> const IdealHandle &
    {
        auto it = colons.find(n);
        if (it == colons.end())
            it = colons
                     .emplace(n, local_colon(PJ.get((unsigned)(n + 1)),
                                             PI.get((unsigned)n)))
                     .first;
        return it->second;
    };

    int n = rep.n_threshold;
    for (; n <= rep.n_threshold + 3; ++n)
    {
        if (ideal_equals(colon_at(n), colon_at(n + 1)) &&
            ideal_equals(colon_at(n + 1), colon_at(n + 2)))
        {
            rep.stabilized = true;
            break;
        }
    }
    if (!rep.stabilized)
    {
        n = rep.n_threshold + 3;
        rep.warnings.push_back("colon value did not stabilize within 3 steps above the threshold");
    }
    rep.n_used = n;
    rep.core = colon_at(n);

    bool audits_pass =
        rep.g > 0 && rep.audit.gs.satisfied && rep.audit.height_ok && rep.audit.char_ok;
    if (!audits_pass)
        rep.certification = Certification::hypotheses_violated;
    else if (rep.stabilized)
        rep.certification = Certification::certified;
    else
        rep.certification = Certification::upper_lower_gap;
    return rep;
}

IdealHandle core_height_one(const IdealHandle &I, const std::optional<IdealHandle> &J_in,
                            Rng rng, const Options &opt, int batch)
{
    validate_core_input(I);
    if (batch < 1)
        throw Error("batch size must be positive");
    int g = height(I);
    int ell = analytic_spread(I).spread;
    if (g != 1 || ell != 1)
        throw Error("height-one core requires height 1 and analytic spread 1");

    IdealHandle J = J_in ? *J_in : random_minimal_reduction(I, rng.fork(0), opt);
    if (J.gens().size() != 1)
        throw Error("height-one core requires a principal reduction");
    ReductionReport cert = is_reduction(J, I, opt.max_n);
    if (!cert.is_reduction)
        throw Error("could not certify J as a reduction of I within max-n powers");

    std::vector<IdealHandle> augmented; // the sampled (J, y_i)
    int n = 0;
    int total = 0;
    int max_batches = std::max(2, opt.trials / batch);
    std::optional<IdealHandle> last;
    for (int b = 0; b < max_batches; ++b)
    {
        for (int k = 0; k < batch; ++k)
        {
            IdealHandle Y = random_minimal_reduction(I, rng.fork((uint64_t)(1 + total)), opt);
            ++total;
            IdealHandle JY = sum(J, Y);
            n = std::max(n, reduction_number(J, JY, opt.max_n));
            augmented.push_back(JY);
        }
        IdealHandle S = power(augmented[0], (unsigned)n);
        for (size_t i = 1; i < augmented.size(); ++i)
            S = sum(S, power(augmented[i], (unsigned)n));
        IdealHandle C = local_colon(power(J, (unsigned)(n + 1)), S);
        if (last && ideal_equals(C, *last))
            return C;
        last = C;
    }
    throw Error("height-one core did not stabilize within the trial budget");
}

SandwichReport monte_carlo_core(const IdealHandle &I, Rng rng, const Options &opt)
{
    validate_core_input(I);
    if (opt.trials < 1)
        throw Error("at least one trial is required");
    SandwichReport rep;
    rep.formula = core_formula(I, std::nullopt, rng.fork(0), opt);

    const ContextPtr &ctx = I.context();
    std::vector<Polynomial> base;
    for (const auto &g : I.gens())
    {
        if (!g.is_zero())
            base.push_back(g);
    }

    // generator subsets of spread size join the sampling pool: reductions
    // like the coordinate pairs on a quadric cone are reached only this
    // way, because dense combinations all share the same excess components
    std::vector<IdealHandle> named;
    size_t ell = rep.formula.ell > 0 ? (size_t)rep.formula.ell : 0;
    if (ell >= 1 && ell < base.size() && base.size() <= 12)
    {
        std::vector<size_t> sel(ell);
        for (size_t i = 0; i < ell; ++i)
            sel[i] = i;
        while (true)
        {
            std::vector<Polynomial> gens;
            for (size_t i : sel)
                gens.push_back(base[i]);
            named.push_back(IdealHandle(ctx, std::move(gens)));
            size_t pos = ell;
            while (pos > 0 && sel[pos - 1] == base.size() - (ell - pos) - 1)
                --pos;
            if (pos == 0)
                break;
            ++sel[pos - 1];
            for (size_t i = pos; i < ell; ++i)
                sel[i] = sel[i - 1] + 1;
        }
        Rng order = rng.fork(uint64_t(1) << 40);
        for (size_t i = named.size(); i > 1; --i)
            std::swap(named[i - 1], named[(size_t)order.below(i)]);
    }

    std::optional<IdealHandle> running;
    int streak = 0;
    int trials = 0;
    size_t cursor = 0;
    // subset candidates only get a short certificate scan; misses fall
    // back to a dense draw for the same trial
    int short_scan = std::min(opt.max_n, rep.formula.r + 2);
    while (trials < opt.trials && streak < opt.stability)
    {
        std::optional<IdealHandle> pick;
        if (trials % 2 == 0 && !named.empty())
        {
            const IdealHandle &cand = named[cursor % named.size()];
            ++cursor;
            if (is_reduction(cand, I, short_scan).is_reduction)
                pick = cand;
        }
        if (!pick)
            pick = random_minimal_reduction(I, rng.fork((uint64_t)(1 + trials)), opt);
        IdealHandle K = local_rep(*pick);
        ++trials;
        if (!running)
        {
            running = K;
            continue;
        }
        IdealHandle next = intersect(*running, K);
        if (ideal_equals(next, *running))
            ++streak;
        else
            streak = 0;
        running = next;
    }
    rep.upper = *running;
    rep.trials_used = trials;
    rep.equal = ideal_equals(rep.formula.core, rep.upper);
    return rep;
}

BalancedReport balanced_colon(const IdealHandle &I, int i, Rng rng, int count,
                              const Options &opt)
{
    validate_core_input(I);
    if (count < 1)
        throw Error("at least one reduction is required");
    const ContextPtr &ctx = I.context();
    int g = height(I);
    int ell = analytic_spread(I).spread;
    PowerCache PI(I);
    BalancedReport rep;
    for (int s = 0; s < count; ++s)
    {
        BalancedWitness w;
        w.J = random_minimal_reduction(I, rng.fork((uint64_t)s), opt);
        ReductionReport cert = is_reduction(w.J, I, opt.max_n);
        if (!cert.is_reduction)
            throw Error("could not certify a sampled reduction within max-n powers");
        w.n = std::max(*cert.certificate_n - ell + g, 0);
        PowerCache PJ(w.J);
        w.at_n = local_colon(power_or_unit(PJ, i + w.n, ctx), PI.get((unsigned)w.n));
        w.at_n1 = local_colon(power_or_unit(PJ, i + w.n + 1, ctx),
                              PI.get((unsigned)(w.n + 1)));
        rep.witnesses.push_back(std::move(w));
    }
    rep.equal = true;
    const IdealHandle &first = rep.witnesses[0].at_n;
    for (const auto &w : rep.witnesses)
    {
        if (!ideal_equals(first, w.at_n) || !ideal_equals(first, w.at_n1))
        {
            rep.equal = false;
            break;
        }
    }
    return rep;
}

IdealHandle canonical_slice(const IdealHandle &I, const IdealHandle &J, int i, int n,
                            const Options &opt)
{
    validate_core_input(I);
    const ContextPtr &ctx = I.context();
    ReductionReport cert = is_reduction(J, I, opt.max_n);
    if (!cert.is_reduction)
        throw Error("could not certify J as a reduction of I within max-n powers");
    int threshold =
        std::max(*cert.certificate_n - analytic_spread(I).spread + height(I), 0);
    if (n < threshold)
        throw Error("slice exponent below the stabilization threshold");
    if (i + n <= 0)
        return unit_ideal(ctx);
    return local_colon(power(J, (unsigned)(i + n)), power(I, (unsigned)n));
}

JoutReport jout_check(const IdealHandle &I, const IdealHandle &J, int i, int n)
{
    validate_core_input(I);
    if (i < 0 || n < 0)
        throw Error("jout indices must be nonnegative");
    const ContextPtr &ctx = I.context();
    PowerCache PJ(J);
    PowerCache PI(I);
    JoutReport rep;
    IdealHandle lhs = local_colon(power_or_unit(PJ, i + n, ctx), PI.get((unsigned)n));
    IdealHandle base = local_colon(PJ.get((unsigned)n), PI.get((unsigned)n));
    // the multiples sit inside lhs in the chain J^i(J^n:I^n) subset of
    // I^i(J^n:I^n) subset of J^{i+n}:I^n, so the I-side equality is the
    // sharper one and is reported first when it fails
    IdealHandle i_side = local_rep(product(power_or_unit(PI, i, ctx), base));
    if (!ideal_equals(lhs, i_side))
    {
        rep.holds = false;
        rep.failing_side = "I-side";
        rep.lhs = lhs;
        rep.rhs = i_side;
        return rep;
    }
    IdealHandle j_side = local_rep(product(power_or_unit(PJ, i, ctx), base));
    if (!ideal_equals(lhs, j_side))
    {
        rep.holds = false;
        rep.failing_side = "J-side";
        rep.lhs = lhs;
        rep.rhs = j_side;
        return rep;
    }
    rep.holds = true;
    return rep;
}

} // namespace corekit
