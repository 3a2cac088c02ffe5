/**
 * @file test_reduction.cpp
 * @brief Reduction certificates, fiber cones, random reductions, the G_s
 *        test and multiplicity on small rings with known invariants.
 */
#include <doctest.h>

#include "corekit/reduction.hpp"

using namespace corekit;

static ContextPtr plain_xy()
{
    RingPtr R = make_ring({"x", "y"}, MonomialOrder::grevlex(), Field());
    return make_context(R, {});
}

static ContextPtr cusp_xy()
{
    RingPtr R = make_ring({"x", "y"}, MonomialOrder::grevlex(), Field());
    return make_context(R, {parse_poly(R, "y^2 - x^3")});
}

TEST_CASE("reduction certificates")
{
    ContextPtr ctx = plain_xy();
    IdealHandle I = ideal_from_strings(ctx, {"x^2", "y^2"});
    ReductionReport self = is_reduction(I, I, 20);
    CHECK(self.is_reduction);
    CHECK(*self.certificate_n == 0);
    CHECK(reduction_number(ideal_from_strings(ctx, {"x^3"}),
                           ideal_from_strings(ctx, {"x^3"}), 20) == 0);

    // (x) reduces the maximal ideal of the cusp with r = 1:
    // m^2 = (x^2, x*y, y^2) and y^2 = x^3 make m^2 = x*m
    ContextPtr q = cusp_xy();
    IdealHandle m = ideal_from_strings(q, {"x", "y"});
    IdealHandle Jx = ideal_from_strings(q, {"x"});
    CHECK(reduction_number(Jx, m, 20) == 1);

    // certified n propagates: m^{k+1} = x*m^k for k = 2, 3 as well
    PowerCache cache(m);
    for (unsigned k = 2; k <= 3; ++k)
        CHECK(ideal_equals(cache.get(k + 1), product_compact(Jx, cache.get(k))));

    // (y) has colength 3 while e(m) = 2, so it is never a reduction
    ReductionReport bad = is_reduction(ideal_from_strings(q, {"y"}), m, 6);
    CHECK(!bad.is_reduction);
    CHECK(bad.inconclusive);

    CHECK_THROWS_AS(is_reduction(ideal_from_strings(ctx, {"x"}),
                                 ideal_from_strings(ctx, {"x^2", "y^2"}), 5),
                    Error);
}

TEST_CASE("analytic spread")
{
    ContextPtr ctx = plain_xy();
    CHECK(analytic_spread(ideal_from_strings(ctx, {"x^2", "y^2"})).spread == 2);
    CHECK(analytic_spread(ideal_from_strings(ctx, {"x"})).spread == 1);
    // x*(x, y): two algebraically independent fiber coordinates
    CHECK(analytic_spread(ideal_from_strings(ctx, {"x^2", "x*y"})).spread == 2);

    // m-primary in the one-dimensional cusp ring
    ContextPtr q = cusp_xy();
    FiberReport rep = analytic_spread(ideal_from_strings(q, {"x", "y"}));
    CHECK(rep.spread == 1);
    CHECK(rep.fiber_ring->nvars() == 2);
    CHECK(!rep.fiber_ideal.empty());

    CHECK_THROWS_AS(analytic_spread(zero_ideal(ctx)), Error);
    CHECK_THROWS_AS(analytic_spread(unit_ideal(ctx)), Error);
}

TEST_CASE("random minimal reductions")
{
    Options opt;
    ContextPtr ctx = plain_xy();
    IdealHandle I = ideal_from_strings(ctx, {"x^2", "x*y", "y^2"});
    IdealHandle J = random_minimal_reduction(I, Rng::stream(1, {7}), opt);
    CHECK(J.gens().size() == 2);
    ReductionReport rep = is_reduction(J, I, opt.max_n);
    CHECK(rep.is_reduction);

    // principal ideals are their own minimal reduction
    IdealHandle P = ideal_from_strings(ctx, {"x^3 + y^3"});
    IdealHandle JP = random_minimal_reduction(P, Rng::stream(1, {8}), opt);
    CHECK(equals_global(JP, P));

    // one general element suffices in the cusp ring
    ContextPtr q = cusp_xy();
    IdealHandle m = ideal_from_strings(q, {"x", "y"});
    IdealHandle Jm = random_minimal_reduction(m, Rng::stream(5, {3}), opt);
    CHECK(Jm.gens().size() == 1);
    CHECK(is_reduction(Jm, m, opt.max_n).is_reduction);

    // identical seeds resample identically
    IdealHandle J2 = random_minimal_reduction(I, Rng::stream(1, {7}), opt);
    CHECK(equals_global(J, J2));
}

TEST_CASE("G_s via Fitting ideals")
{
    ContextPtr ctx = plain_xy();
    // a complete intersection satisfies G_infinity
    GsReport ci = check_Gs(ideal_from_strings(ctx, {"x", "y"}), 0, true);
    CHECK(ci.satisfied);
    CHECK(ci.s == 2);

    CHECK(check_Gs(ideal_from_strings(ctx, {"x^2", "x*y"}), 2).satisfied);
    CHECK(check_Gs(ideal_from_strings(ctx, {"x^2", "x*y", "y^2"}), 2).satisfied);

    // (x) in k[x,y]/(x^2) is nonzero at the unique minimal prime, so even
    // G_1 fails: Fitt_0 = (x) has height 0 there
    RingPtr R = make_ring({"x", "y"}, MonomialOrder::grevlex(), Field());
    ContextPtr nil = make_context(R, {parse_poly(R, "x^2")});
    GsReport bad = check_Gs(ideal_from_strings(nil, {"x"}), 1);
    CHECK(!bad.satisfied);
    REQUIRE(bad.witness_j.has_value());
    CHECK(*bad.witness_j == 0);
}

TEST_CASE("multiplicity")
{
    Options opt;
    ContextPtr ctx = plain_xy();
    CHECK(multiplicity(ideal_from_strings(ctx, {"x", "y"}), Rng::stream(0, {1}), opt) == 1);
    CHECK(multiplicity(ideal_from_strings(ctx, {"x^2", "y^2"}), Rng::stream(0, {2}), opt) == 4);

    // the cusp has multiplicity 2 at its singular point
    ContextPtr q = cusp_xy();
    CHECK(multiplicity(ideal_from_strings(q, {"x", "y"}), Rng::stream(0, {3}), opt) == 2);

    CHECK_THROWS_AS(multiplicity(ideal_from_strings(ctx, {"x"}), Rng::stream(0, {4}), opt),
                    Error);
}
