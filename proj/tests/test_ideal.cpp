/**
 * @file test_ideal.cpp
 * @brief Ideal arithmetic, measures and containment, checked on classical
 *        examples with known answers.
 */
#include <doctest.h>

#include <climits>

#include "corekit/ideal.hpp"

using namespace corekit;

static ContextPtr plain_xy()
{
    RingPtr R = make_ring({"x", "y"}, MonomialOrder::grevlex(), Field());
    return make_context(R, {});
}

static ContextPtr cusp_xy()
{
    // QQ[x,y]/(y^2 - x^3), local at the origin
    RingPtr R = make_ring({"x", "y"}, MonomialOrder::grevlex(), Field());
    return make_context(R, {parse_poly(R, "y^2 - x^3")});
}

TEST_CASE("context construction")
{
    ContextPtr ctx = plain_xy();
    CHECK(!ctx->local);
    ContextPtr q = cusp_xy();
    CHECK(q->local);
    CHECK(q->relation_basis.size() == 1);

    RingPtr R = make_ring({"x"}, MonomialOrder::lex(), Field());
    CHECK_THROWS_AS(make_context(R, {parse_poly(R, "x - 1"), parse_poly(R, "x")}), Error);
}

TEST_CASE("sum product power")
{
    ContextPtr ctx = plain_xy();
    IdealHandle m = maximal_ideal(ctx);
    IdealHandle m2 = power(m, 2);
    IdealHandle sq = ideal_from_strings(ctx, {"x^2", "x*y", "y^2"});
    CHECK(equals_global(m2, sq));
    CHECK(equals_global(power(m, 0), unit_ideal(ctx)));
    CHECK(equals_global(product(m, m), m2));
    CHECK(equals_global(sum(m2, m), m));

    PowerCache cache(m);
    CHECK(equals_global(cache.get(3), power(m, 3)));
    CHECK(equals_global(product_compact(m, m2), power(m, 3)));
}

TEST_CASE("intersection")
{
    ContextPtr ctx = plain_xy();
    IdealHandle a = ideal_from_strings(ctx, {"x"});
    IdealHandle b = ideal_from_strings(ctx, {"y"});
    IdealHandle ab = intersect(a, b);
    CHECK(equals_global(ab, ideal_from_strings(ctx, {"x*y"})));
}

TEST_CASE("colon")
{
    ContextPtr ctx = plain_xy();
    // (x^2*y, x*y^2) : (x*y) = (x, y)
    IdealHandle a = ideal_from_strings(ctx, {"x^2*y", "x*y^2"});
    IdealHandle b = ideal_from_strings(ctx, {"x*y"});
    CHECK(equals_global(colon(a, b), maximal_ideal(ctx)));

    // colon by an ideal inside the relations is the unit ideal
    ContextPtr q = cusp_xy();
    IdealHandle c = ideal_from_strings(q, {"x"});
    IdealHandle rels = ideal_from_strings(q, {"y^2 - x^3"});
    CHECK(is_unit_ideal(colon(c, rels)));
}

TEST_CASE("saturation")
{
    ContextPtr ctx = plain_xy();
    IdealHandle a = ideal_from_strings(ctx, {"x^2*y", "x*y^2"});
    Polynomial y = parse_poly(ctx->ring, "y");
    IdealHandle s = saturate(a, y);
    CHECK(equals_global(s, ideal_from_strings(ctx, {"x"})));
    CHECK(equals_global(saturate_iterated(a, y), s));
}

TEST_CASE("elimination")
{
    // contraction of (x - t^2, y - t^3) to QQ[x, y] is (x^3 - y^2)
    RingPtr R = make_ring({"t", "x", "y"}, MonomialOrder::grevlex(), Field());
    ContextPtr ctx = make_context(R, {});
    IdealHandle curve = ideal_from_strings(ctx, {"x - t^2", "y - t^3"});
    IdealHandle flat = eliminate(curve, {"t"});
    REQUIRE(flat.gens().size() == 1);
    CHECK(flat.gens()[0].str() == "x^3 - y^2");
    CHECK_THROWS_AS(eliminate(curve, {"w"}), Error);
}

TEST_CASE("dimension and height")
{
    RingPtr R = make_ring({"x", "y", "z"}, MonomialOrder::grevlex(), Field());
    ContextPtr ctx = make_context(R, {});
    CHECK(ring_dimension(ctx) == 3);
    CHECK(dimension(zero_ideal(ctx)) == 3);
    CHECK(dimension(unit_ideal(ctx)) == -1);
    CHECK(dimension(ideal_from_strings(ctx, {"x"})) == 2);
    CHECK(height(ideal_from_strings(ctx, {"x"})) == 1);
    CHECK(height(ideal_from_strings(ctx, {"x", "y"})) == 2);
    CHECK(height_or_infinite(unit_ideal(ctx)) == INT_MAX);
    CHECK_THROWS_AS(height(unit_ideal(ctx)), Error);

    // the cusp curve ring has dimension 1
    ContextPtr q = cusp_xy();
    CHECK(ring_dimension(q) == 1);
}

TEST_CASE("length")
{
    ContextPtr ctx = plain_xy();
    // standard monomials of (x^2, x*y, y^3): 1, x, y, y^2
    IdealHandle a = ideal_from_strings(ctx, {"x^2", "x*y", "y^3"});
    CHECK(length(a) == 4);
    CHECK_THROWS_AS(length(ideal_from_strings(ctx, {"x"})), Error);

    // in QQ[x,y]/(y^2 - x^3) the ideal (x) has standard monomials 1, y
    ContextPtr q = cusp_xy();
    CHECK(length(ideal_from_strings(q, {"x"})) == 2);
}

TEST_CASE("radical membership and m-primary")
{
    ContextPtr ctx = plain_xy();
    IdealHandle a = ideal_from_strings(ctx, {"x^2", "y^3"});
    CHECK(radical_member(a, parse_poly(ctx->ring, "x")));
    CHECK(radical_member(a, parse_poly(ctx->ring, "x + y")));
    CHECK(radical_member(a, zero_poly(ctx->ring)));
    CHECK(!radical_member(ideal_from_strings(ctx, {"x^2"}), parse_poly(ctx->ring, "y")));
    CHECK(is_m_primary(a));
    CHECK(!is_m_primary(ideal_from_strings(ctx, {"x"})));
    CHECK(!is_m_primary(unit_ideal(ctx)));

    // (x) is m-primary in the cusp ring: y^2 = x^3 there
    ContextPtr q = cusp_xy();
    CHECK(is_m_primary(ideal_from_strings(q, {"x"})));
}

TEST_CASE("global versus local containment")
{
    // QQ[x]/(x^2 - x) splits into two points; x - 1 is invertible at the
    // origin, so the ideal it generates is locally the whole ring
    RingPtr R = make_ring({"x"}, MonomialOrder::lex(), Field());
    ContextPtr ctx = make_context(R, {parse_poly(R, "x^2 - x")});
    REQUIRE(ctx->local);
    IdealHandle a = ideal_from_strings(ctx, {"x - 1"});
    CHECK(!contains_global(a, unit_ideal(ctx)));
    CHECK(local_contains(a, unit_ideal(ctx)));
    CHECK(contains(a, unit_ideal(ctx)));
    CHECK(ideal_equals(a, unit_ideal(ctx)));

    IdealHandle b = ideal_from_strings(ctx, {"x"});
    CHECK(!local_contains(b, unit_ideal(ctx)));
    CHECK(!ideal_equals(b, unit_ideal(ctx)));
    CHECK(ideal_equals(b, ideal_from_strings(ctx, {"x", "x^2"})));
}

TEST_CASE("intersection in a quotient")
{
    ContextPtr q = cusp_xy();
    IdealHandle a = ideal_from_strings(q, {"x"});
    IdealHandle b = ideal_from_strings(q, {"y"});
    IdealHandle ab = intersect(a, b);
    // x*y lies in both; y^2 = x^3 lies in both; neither x nor y does
    CHECK(contains_global(ab, ideal_from_strings(q, {"x*y", "y^2"})));
    CHECK(!contains_global(ab, a));
    CHECK(!contains_global(ab, b));
    CHECK(contains_global(a, ab));
    CHECK(contains_global(b, ab));
}
