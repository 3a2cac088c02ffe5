/**
 * @file test_core.cpp
 * @brief Colon-formula core, height-one core, Monte-Carlo sandwich,
 *        balanced colon, slices and the Jout identity on rings where the
 *        answers can be read off the value semigroup.
 */
#include <doctest.h>

#include "corekit/core.hpp"

using namespace corekit;

static ContextPtr cusp_xy()
{
    RingPtr R = make_ring({"x", "y"}, MonomialOrder::grevlex(), Field());
    return make_context(R, {parse_poly(R, "y^2 - x^3")});
}

// F_2[x,y,z]/(y^2 - x^3, z^2 - x^3 y): the semigroup ring of <4, 6, 9>
// in characteristic 2
static ContextPtr char2_curve()
{
    RingPtr R = make_ring({"x", "y", "z"}, MonomialOrder::grevlex(), Field(2));
    return make_context(
        R, {parse_poly(R, "y^2 - x^3"), parse_poly(R, "z^2 - x^3*y")});
}

TEST_CASE("colon formula on the cusp")
{
    Options opt;
    ContextPtr q = cusp_xy();
    IdealHandle m = ideal_from_strings(q, {"x", "y"});
    IdealHandle Jx = ideal_from_strings(q, {"x"});
    CoreReport rep = core_formula(m, Jx, Rng::stream(0, {1}), opt);
    // r = 1, ell = g = 1: core(m) = (x^2) : m = m^2
    CHECK(rep.r == 1);
    CHECK(rep.g == 1);
    CHECK(rep.ell == 1);
    CHECK(rep.a == 0);
    CHECK(rep.s_shift == 0);
    CHECK(rep.n_threshold == 1);
    CHECK(rep.n_used == 1);
    CHECK(rep.stabilized);
    CHECK(!rep.auto_J);
    CHECK(rep.audit.gs.satisfied);
    CHECK(rep.audit.height_ok);
    CHECK(rep.audit.char_ok);
    CHECK(rep.certification == Certification::certified);
    CHECK(ideal_equals(rep.core, power(m, 2)));

    // an auto-generated reduction gives the same core
    CoreReport auto_rep = core_formula(m, std::nullopt, Rng::stream(0, {2}), opt);
    CHECK(auto_rep.auto_J);
    CHECK(ideal_equals(auto_rep.core, power(m, 2)));
    CHECK(auto_rep.certification == Certification::certified);
}

TEST_CASE("colon formula on a complete intersection")
{
    // (x^2, y^2) is its own unique minimal reduction: r = 0, core = I
    Options opt;
    RingPtr R = make_ring({"x", "y"}, MonomialOrder::grevlex(), Field());
    ContextPtr ctx = make_context(R, {});
    IdealHandle I = ideal_from_strings(ctx, {"x^2", "y^2"});
    CoreReport rep = core_formula(I, std::nullopt, Rng::stream(3, {1}), opt);
    CHECK(rep.r == 0);
    CHECK(rep.g == 2);
    CHECK(rep.ell == 2);
    CHECK(rep.n_used == 0);
    CHECK(rep.certification == Certification::certified);
    CHECK(ideal_equals(rep.core, I));
}

TEST_CASE("characteristic failure flags the colon value")
{
    // over F_2 the maximal ideal has r = 2 with respect to (x), so the
    // condition char > r - ell + g = 2 fails and the colon value m^3 is
    // strictly below the core (x^2, m^3)
    Options opt;
    ContextPtr c2 = char2_curve();
    IdealHandle m = ideal_from_strings(c2, {"x", "y", "z"});
    IdealHandle Jx = ideal_from_strings(c2, {"x"});
    CoreReport rep = core_formula(m, Jx, Rng::stream(0, {1}), opt);
    CHECK(rep.r == 2);
    CHECK(rep.g == 1);
    CHECK(rep.ell == 1);
    CHECK(rep.n_threshold == 2);
    CHECK(!rep.audit.char_ok);
    CHECK(rep.audit.gs.satisfied);
    CHECK(rep.audit.height_ok);
    CHECK(rep.certification == Certification::hypotheses_violated);
    CHECK(rep.stabilized);
    CHECK(ideal_equals(rep.core, power(m, 3)));

    IdealHandle true_core = sum(ideal_from_strings(c2, {"x^2"}), power(m, 3));
    CHECK(contains(true_core, rep.core));
    CHECK(!ideal_equals(true_core, rep.core));
}

TEST_CASE("height-one core")
{
    Options opt;
    ContextPtr c2 = char2_curve();
    IdealHandle m = ideal_from_strings(c2, {"x", "y", "z"});
    IdealHandle Jx = ideal_from_strings(c2, {"x"});
    IdealHandle got = core_height_one(m, Jx, Rng::stream(0, {9}), opt);
    // core(m) = (x^2) : m = (x^2, m^3), strictly above the colon value m^3
    CHECK(ideal_equals(got, colon(power(Jx, 2), m)));
    CHECK(ideal_equals(got, sum(ideal_from_strings(c2, {"x^2"}), power(m, 3))));
    CHECK(contains(got, power(m, 3)));
    CHECK(!ideal_equals(got, power(m, 3)));

    // agreement with the colon formula when its hypotheses hold
    ContextPtr q = cusp_xy();
    IdealHandle mc = ideal_from_strings(q, {"x", "y"});
    IdealHandle h1 = core_height_one(mc, ideal_from_strings(q, {"x"}),
                                     Rng::stream(0, {10}), opt);
    CHECK(ideal_equals(h1, power(mc, 2)));

    // a principal ideal is its own core
    IdealHandle P = ideal_from_strings(q, {"y"});
    CHECK(ideal_equals(core_height_one(P, std::nullopt, Rng::stream(0, {11}), opt), P));

    RingPtr R = make_ring({"x", "y"}, MonomialOrder::grevlex(), Field());
    ContextPtr plain = make_context(R, {});
    CHECK_THROWS_AS(core_height_one(ideal_from_strings(plain, {"x", "y"}),
                                    std::nullopt, Rng::stream(0, {12}), opt),
                    Error);
}

TEST_CASE("Monte-Carlo sandwich")
{
    Options opt;
    ContextPtr q = cusp_xy();
    IdealHandle m = ideal_from_strings(q, {"x", "y"});
    SandwichReport rep = monte_carlo_core(m, Rng::stream(0, {20}), opt);
    CHECK(rep.equal);
    CHECK(ideal_equals(rep.upper, power(m, 2)));
    CHECK(rep.formula.certification == Certification::certified);
    CHECK(rep.trials_used <= 10);

    IdealHandle P = ideal_from_strings(q, {"x"});
    SandwichReport prep = monte_carlo_core(P, Rng::stream(0, {21}), opt);
    CHECK(prep.equal);
    CHECK(ideal_equals(prep.upper, P));
}

TEST_CASE("balanced colon independence")
{
    Options opt;
    ContextPtr q = cusp_xy();
    IdealHandle m = ideal_from_strings(q, {"x", "y"});
    BalancedReport rep = balanced_colon(m, 1, Rng::stream(0, {30}), 3, opt);
    CHECK(rep.equal);
    REQUIRE(rep.witnesses.size() == 3);
    for (const auto &w : rep.witnesses)
    {
        CHECK(w.n == 1);
        CHECK(ideal_equals(w.at_n, power(m, 2)));
        CHECK(ideal_equals(w.at_n1, power(m, 2)));
    }
}

TEST_CASE("canonical slices")
{
    Options opt;
    ContextPtr q = cusp_xy();
    IdealHandle m = ideal_from_strings(q, {"x", "y"});
    IdealHandle Jx = ideal_from_strings(q, {"x"});
    // i = 1 at the threshold reduces to the core
    CHECK(ideal_equals(canonical_slice(m, Jx, 1, 1, opt), power(m, 2)));
    // J^{i+n} = R once i+n <= 0
    CHECK(is_unit_ideal(canonical_slice(m, Jx, -5, 1, opt)));
    CHECK_THROWS_AS(canonical_slice(m, Jx, 1, 0, opt), Error);
}

TEST_CASE("jout identity")
{
    Options opt;
    ContextPtr q = cusp_xy();
    IdealHandle m = ideal_from_strings(q, {"x", "y"});
    IdealHandle Jx = ideal_from_strings(q, {"x"});
    JoutReport rep = jout_check(m, Jx, 1, 1);
    CHECK(rep.holds);

    // i = 0 holds identically
    RingPtr R = make_ring({"x", "y"}, MonomialOrder::grevlex(), Field());
    ContextPtr plain = make_context(R, {});
    IdealHandle I = ideal_from_strings(plain, {"x^2", "y^2"});
    CHECK(jout_check(I, I, 0, 1).holds);
}
