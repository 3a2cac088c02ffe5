/**
 * @file fixtures.cpp
 * @brief Worked examples: scripts plus exact check batteries.
 */
#include "corekit/fixtures.hpp"

#include <chrono>
#include <functional>

namespace corekit
{

namespace
{

struct Checker
{
    std::vector<FixtureCheck> checks;

    void check(std::string label, bool pass)
    {
        checks.push_back({std::move(label), pass});
    }
};

const IdealHandle &named(const Session &s, const std::string &name)
{
    for (const auto &[n, h] : s.ideals)
    {
        if (n == name)
            return h;
    }
    throw Error("fixture script is missing ideal '" + name + "'");
}

bool strictly_contains(const IdealHandle &big, const IdealHandle &small)
{
    return contains(big, small) && !ideal_equals(big, small);
}

bool has_warning(const std::vector<std::string> &warnings, const std::string &needle)
{
    for (const auto &w : warnings)
    {
        if (w.find(needle) != std::string::npos)
            return true;
    }
    return false;
}

// ---- characteristic-two semigroup curve ----
//
// R = F2[x, y, z] / (y^2 - x^3, z^2 - x^3 y) is the semigroup ring of
// <4, 6, 9>: x, y, z have orders 4, 6, 9 in the valuation. J = (x) is a
// minimal reduction of m with reduction number 2, so the colon formula
// needs n >= 2 and the characteristic bound demands char > 2. Valuation
// arithmetic gives (x^3) : m^2 = (x^4) : m^3 = m^3, while the genuine
// intersection of reductions is (x^2, m^3), one dimension bigger.

const char *kCharpScript = R"(ring R = FF(2)[x, y, z] / (y^2 - x^3, z^2 - x^3*y);
ideal m = (x, y, z);
ideal J = (x);
rednum J m;
core m with J=(x);
colon (x^2) m;
power m 3;
oracle-check;
)";

void charp_checks(const Session &s, uint64_t seed, Checker &ck)
{
    Options opt;
    const ContextPtr &ctx = s.ctx;
    const IdealHandle &m = named(s, "m");
    const IdealHandle &J = named(s, "J");

    ck.check("reduction number of (x) is 2", reduction_number(J, m, opt.max_n) == 2);

    CoreReport rep = core_formula(m, J, Rng::stream(seed, {1}), opt);
    ck.check("stabilization threshold is n = 2", rep.n_threshold == 2);
    ck.check("colon value stabilizes", rep.stabilized);
    IdealHandle m3 = power(m, 3);
    ck.check("stabilized colon value is m^3", ideal_equals(rep.core, m3));
    ck.check("characteristic audit fails",
             !rep.audit.char_ok &&
                 rep.certification == Certification::hypotheses_violated);
    ck.check("Fitting and height audits still pass",
             rep.audit.gs.satisfied && rep.audit.height_ok);

    IdealHandle x2(ctx, {parse_poly(ctx->ring, "x^2")});
    IdealHandle true_core = sum(x2, m3);
    ck.check("(x^2) : m is (x^2, m^3)", ideal_equals(colon(x2, m), true_core));
    ck.check("(x^3) : m^2 and (x^4) : m^3 are both m^3",
             ideal_equals(colon(power(J, 3), power(m, 2)), m3) &&
                 ideal_equals(colon(power(J, 4), power(m, 3)), m3));
    ck.check("the colon value undershoots strictly",
             strictly_contains(true_core, m3));

    IdealHandle sampled = core_height_one(m, J, Rng::stream(seed, {2}), opt);
    ck.check("principal-reduction sampling recovers (x^2, m^3)",
             ideal_equals(sampled, true_core));

    std::vector<TraceStep> steps(2);
    steps[0].op = TraceOp::Power;
    steps[0].inputs = {m};
    steps[0].exponent = 3;
    steps[0].claimed = m3;
    steps[0].label = "m^3";
    steps[1].op = TraceOp::Colon;
    steps[1].inputs = {x2, m};
    steps[1].claimed = true_core;
    steps[1].label = "(x^2) : m";
    ck.check("truncated model agrees", truncation_oracle(steps).all_agree);
}

// ---- a quadric cone where the two-generator audit fails ----
//
// R = Q[x, y, z, w] / (x^2 + y^2 + z^2, z w), I = (x, y, z). Any two of
// x, y, z generate a reduction: the quadric relation rewrites the missing
// square. The intersection of the three visible reductions is I^2, yet
// J = (x, y) gives J^2 : I = (I^2, xw, yw): the w-axis component breaks
// the Fitting-depth audit and the colon value overshoots.

const char *kG2Script = R"(ring R = QQ[x, y, z, w] / (x^2 + y^2 + z^2, z*w);
ideal I = (x, y, z);
ideal J = (x, y);
rednum J I;
spread I;
gs I 2;
core I with J=(x, y);
colon (x^2, x*y, y^2) I;
mc-core I;
)";

void g2_checks(const Session &s, uint64_t seed, Checker &ck)
{
    Options opt;
    const ContextPtr &ctx = s.ctx;
    const IdealHandle &I = named(s, "I");
    const IdealHandle &J = named(s, "J");

    ck.check("reduction number of (x, y) is 1",
             reduction_number(J, I, opt.max_n) == 1);
    ck.check("analytic spread 2, height 1",
             analytic_spread(I).spread == 2 && height(I) == 1);
    ck.check("the two-generator Fitting audit fails", !check_Gs(I, 2).satisfied);

    auto pair = [&](const char *a, const char *b)
    {
        return IdealHandle(ctx, {parse_poly(ctx->ring, a), parse_poly(ctx->ring, b)});
    };
    IdealHandle xy = pair("x", "y"), xz = pair("x", "z"), yz = pair("y", "z");
    ck.check("each coordinate pair is a reduction",
             is_reduction(xy, I, opt.max_n).is_reduction &&
                 is_reduction(xz, I, opt.max_n).is_reduction &&
                 is_reduction(yz, I, opt.max_n).is_reduction);

    IdealHandle I2 = power(I, 2);
    ck.check("the three reductions intersect to I^2",
             ideal_equals(intersect(intersect(xy, xz), yz), I2));

    IdealHandle colon_val = colon(power(J, 2), I);
    IdealHandle expected = sum(
        I2, IdealHandle(ctx, {parse_poly(ctx->ring, "x*w"), parse_poly(ctx->ring, "y*w")}));
    ck.check("J^2 : I is (I^2, xw, yw)", ideal_equals(colon_val, expected));
    ck.check("the colon value overshoots strictly",
             strictly_contains(colon_val, I2));

    SandwichReport mc = monte_carlo_core(I, Rng::stream(seed, {3}), opt);
    ck.check("sampled upper bound is I^2", ideal_equals(mc.upper, I2));
    ck.check("the sampler needs at most ten draws", mc.trials_used <= 10);
    ck.check("formula and sample bound disagree, audits flag it",
             !mc.equal &&
                 mc.formula.certification == Certification::hypotheses_violated);
}

// ---- an m-primary plane ideal with reduction number 2 ----
//
// I = (x^7, y^7, x^3 y^5 + x^5 y^3, x^4 y^6) in Q[x, y] localized at the
// origin, with the monomial reduction J = (x^7, y^7). Here every audit
// passes and the formula is certified at n = 2, but multiplying the base
// colon J^2 : I^2 back by I lands strictly inside J^3 : I^2, so the colon
// value is not an I-multiple of a smaller colon. The session runs local:
// sampled reductions mix the generator degrees, so their certificates
// only hold at the origin.

const char *kHjlScript = R"(ring R = QQ[x, y];
local;
ideal I = (x^7, y^7, x^3*y^5 + x^5*y^3, x^4*y^6);
ideal J = (x^7, y^7);
rednum J I;
core I with J=(x^7, y^7);
jout I J 1 2;
balanced I 1;
mc-core I;
oracle-check;
)";

void hjl_checks(const Session &s, uint64_t seed, Checker &ck)
{
    Options opt;
    const IdealHandle &I = named(s, "I");
    const IdealHandle &J = named(s, "J");

    ck.check("reduction number of J is 2", reduction_number(J, I, opt.max_n) == 2);

    CoreReport rep = core_formula(I, J, Rng::stream(seed, {1}), opt);
    ck.check("certified at threshold n = 2",
             rep.certification == Certification::certified && rep.n_threshold == 2 &&
                 rep.n_used == 2 && rep.stabilized);
    IdealHandle value = colon(power(J, 3), power(I, 2));
    ck.check("core value is J^3 : I^2", ideal_equals(rep.core, value));
    ck.check("the value persists at n = 3 and n = 4",
             ideal_equals(colon(power(J, 4), power(I, 3)), value) &&
                 ideal_equals(colon(power(J, 5), power(I, 4)), value));

    JoutReport jr = jout_check(I, J, 1, 2);
    ck.check("J-side passes but I (J^2 : I^2) falls short",
             !jr.holds && jr.failing_side == "I-side");
    ck.check("the I-side shortfall is strict",
             jr.lhs && jr.rhs && strictly_contains(*jr.lhs, *jr.rhs));

    BalancedReport br = balanced_colon(I, 1, Rng::stream(seed, {2}), 3, opt);
    ck.check("the colon value is independent of the reduction", br.equal);

    SandwichReport mc = monte_carlo_core(I, Rng::stream(seed, {3}), opt);
    ck.check("sampling confirms the certified value",
             mc.equal && ideal_equals(mc.upper, value));

    std::vector<TraceStep> steps(3);
    steps[0].op = TraceOp::Power;
    steps[0].inputs = {J};
    steps[0].exponent = 3;
    steps[0].claimed = power(J, 3);
    steps[0].label = "J^3";
    steps[1].op = TraceOp::Power;
    steps[1].inputs = {I};
    steps[1].exponent = 2;
    steps[1].claimed = power(I, 2);
    steps[1].label = "I^2";
    steps[2].op = TraceOp::Colon;
    steps[2].inputs = {power(J, 3), power(I, 2)};
    steps[2].claimed = value;
    steps[2].label = "J^3 : I^2";
    ck.check("truncated model agrees", truncation_oracle(steps).all_agree);
}

// ---- a height-zero ideal on a singular cubic ----
//
// R = Q[x, y, z] / (y^2 z - x^2 y - z^3, 2xyz - x^3) is a one-dimensional
// local ring and I sits inside a minimal prime, so height(I) = 0. The
// order-one Fitting audit is satisfied, yet the colon formula needs
// positive height: J^2 : I = J^3 : I^2 is only an upper bound. It
// strictly contains m J, which in turn lies inside every sampled
// reduction.

const char *kDeltaScript = R"(ring R = QQ[x, y, z] / (y^2*z - x^2*y - z^3, 2*x*y*z - x^3);
ideal I = (-x^2*z - y^3 + y*z^2, -x*y^2 - x*z^2);
ideal J = (-x^2*z - y^3 + y*z^2);
ideal m = (x, y, z);
colon J I;
spread I;
gs I 1;
core I with J=(-x^2*z - y^3 + y*z^2);
)";

void delta_checks(const Session &s, uint64_t seed, Checker &ck)
{
    Options opt;
    const IdealHandle &I = named(s, "I");
    const IdealHandle &J = named(s, "J");
    const IdealHandle &m = named(s, "m");

    ck.check("height 0, analytic spread 1",
             height(I) == 0 && analytic_spread(I).spread == 1);
    GsReport gs = check_Gs(I, 1);
    ck.check("the order-one Fitting audit is satisfied",
             gs.satisfied && !gs.witness_j);

    ck.check("J : I is the maximal ideal", ideal_equals(colon(J, I), m));

    IdealHandle v1 = colon(power(J, 2), I);
    IdealHandle v2 = colon(power(J, 3), power(I, 2));
    ck.check("J^2 : I equals J^3 : I^2", ideal_equals(v1, v2));

    IdealHandle mJ = product(m, J);
    ck.check("the colon value strictly contains m J", strictly_contains(v1, mJ));

    CoreReport rep = core_formula(I, J, Rng::stream(seed, {1}), opt);
    ck.check("audits reject the colon value",
             rep.certification == Certification::hypotheses_violated);
    ck.check("the reported value matches J^2 : I",
             rep.stabilized && ideal_equals(rep.core, v1));
    ck.check("height zero is surfaced as a warning",
             has_warning(rep.warnings, "height(I) = 0"));

    bool all_contain = true;
    for (uint64_t k = 0; k < 5; ++k)
    {
        IdealHandle K =
            random_minimal_reduction(I, Rng::stream(seed, {20, k}), opt, nullptr);
        all_contain = all_contain && contains(K, mJ);
    }
    ck.check("m J lies inside five sampled reductions", all_contain);
}

struct Fixture
{
    const char *name;
    const char *note;
    const char *script;
    std::function<void(const Session &, uint64_t, Checker &)> checks;
};

const std::vector<Fixture> &fixtures()
{
    static const std::vector<Fixture> all = {
        {"charp-p2",
         "Small residue characteristic: the colon value stabilizes strictly "
         "below the intersection of reductions, the characteristic audit "
         "catches it, and principal-reduction sampling recovers the truth.",
         kCharpScript, charp_checks},
        {"g2-failure",
         "A quadric cone where the two-generator Fitting audit fails: the "
         "colon value strictly contains the intersection of sampled "
         "reductions.",
         kG2Script, g2_checks},
        {"hjl",
         "An m-primary plane ideal where the formula certifies, the value is "
         "reduction-independent, and the I-multiple identity fails strictly.",
         kHjlScript, hjl_checks},
        {"delta-minors",
         "A height-zero ideal on a singular cubic: hypotheses fail, and the "
         "colon value is only an upper bound sandwiched over m J.",
         kDeltaScript, delta_checks}};
    return all;
}

const Fixture &find_fixture(const std::string &name)
{
    for (const auto &f : fixtures())
    {
        if (name == f.name)
            return f;
    }
    throw Error("unknown fixture '" + name + "'");
}

} // namespace

std::vector<std::string> fixture_names()
{
    std::vector<std::string> out;
    for (const auto &f : fixtures())
        out.push_back(f.name);
    return out;
}

std::string fixture_session(const std::string &name)
{
    return find_fixture(name).script;
}

FixtureResult run_fixture(const std::string &name, uint64_t seed)
{
    const Fixture &f = find_fixture(name);
    FixtureResult result;
    result.name = f.name;
    result.note = f.note;

    auto t0 = std::chrono::steady_clock::now();
    Session s = parse_session(f.script);
    Checker ck;
    f.checks(s, seed, ck);
    auto t1 = std::chrono::steady_clock::now();

    result.checks = std::move(ck.checks);
    result.passed = std::all_of(result.checks.begin(), result.checks.end(),
                                [](const FixtureCheck &c) { return c.pass; });
    result.seconds = std::chrono::duration<double>(t1 - t0).count();
    return result;
}

} // namespace corekit
