/**
 * @file test_truncation.cpp
 * @brief The finite-dimensional model and its linear-algebra operations,
 *        checked against hand-counted dimensions and the basis-driven path.
 */
#include <doctest.h>

#include "corekit/truncation.hpp"

using namespace corekit;

static ContextPtr plain_xy()
{
    RingPtr R = make_ring({"x", "y"}, MonomialOrder::grevlex(), Field());
    return make_context(R, {});
}

TEST_CASE("model dimensions")
{
    ContextPtr ctx = plain_xy();
    // monomials of degree < 3 in two variables: 1 + 2 + 3
    TruncationModel m3(ctx, 3);
    CHECK(m3.dim() == 6);
    TruncationModel m4(ctx, 4);
    CHECK(m4.dim() == 10);

    // cusp ring at cutoff 4: x^3 = y^2 while x*y^2 = x^4 = 0 and
    // y^3 = x^3*y = 0, leaving 1, x, y, x^2, x*y, y^2, x^2*y
    RingPtr R = make_ring({"x", "y"}, MonomialOrder::grevlex(), Field());
    ContextPtr cusp = make_context(R, {parse_poly(R, "y^2 - x^3")});
    TruncationModel mc(cusp, 4);
    CHECK(mc.dim() == 7);
}

TEST_CASE("echelon spaces are canonical")
{
    ContextPtr ctx = plain_xy();
    Field F = ctx->ring->field;
    Space a(F);
    CHECK(a.insert({{0, F.one()}, {2, F.from_int(2)}}));
    CHECK(a.insert({{1, F.one()}}));
    CHECK(!a.insert({{0, F.from_int(3)}, {1, F.from_int(5)}, {2, F.from_int(6)}}));
    Space b(F);
    CHECK(b.insert({{0, F.from_int(3)}, {1, F.from_int(5)}, {2, F.from_int(6)}}));
    CHECK(b.insert({{1, F.from_int(7)}}));
    CHECK(space_equal(a, b));
    CHECK(a.rows().size() == 2);
    for (const auto &[pivot, row] : a.rows())
    {
        auto itb = b.rows().find(pivot);
        REQUIRE(itb != b.rows().end());
        REQUIRE(row.size() == itb->second.size());
        for (size_t i = 0; i < row.size(); ++i)
        {
            CHECK(row[i].first == itb->second[i].first);
            CHECK(F.eq(row[i].second, itb->second[i].second));
        }
    }
    Space c(F);
    c.insert({{0, F.one()}});
    CHECK(!space_equal(a, c));
}

TEST_CASE("ideal images and codimensions")
{
    ContextPtr ctx = plain_xy();
    TruncationModel model(ctx, 4);
    // multiples of x of degree < 4: x, x^2, x*y, x^3, x^2*y, x*y^2
    Space vx = ideal_image(model, {parse_poly(ctx->ring, "x")});
    CHECK(vx.dim() == 6);
    // codimension of (x^2, y^2) is its colength 4
    Space va = ideal_image(model, ideal_from_strings(ctx, {"x^2", "y^2"}).gens());
    CHECK(model.dim() - va.dim() == 4);
}

TEST_CASE("model intersection and colon")
{
    ContextPtr ctx = plain_xy();
    TruncationModel model(ctx, 4);
    Space vx = ideal_image(model, {parse_poly(ctx->ring, "x")});
    Space vy = ideal_image(model, {parse_poly(ctx->ring, "y")});
    Space meet = space_intersect(model, vx, vy);
    CHECK(space_equal(meet, ideal_image(model, {parse_poly(ctx->ring, "x*y")})));

    // (x^2*y, x*y^2) : (x*y) = (x, y) at this cutoff
    Space va = ideal_image(model, ideal_from_strings(ctx, {"x^2*y", "x*y^2"}).gens());
    Space q = space_colon(model, va, parse_poly(ctx->ring, "x*y"));
    Space vm = ideal_image(model, ideal_from_strings(ctx, {"x", "y"}).gens());
    CHECK(space_equal(q, vm));
}

TEST_CASE("oracle agrees with the basis-driven path")
{
    ContextPtr ctx = plain_xy();
    IdealHandle A = ideal_from_strings(ctx, {"x^2", "y^3"});
    IdealHandle B = ideal_from_strings(ctx, {"x^3", "y^2"});

    std::vector<TraceStep> steps;
    steps.push_back({TraceOp::Power, {A}, 2, power(A, 2), "A^2"});
    steps.push_back({TraceOp::Product, {A, B}, 0, product(A, B), "A*B"});
    steps.push_back({TraceOp::Intersect, {A, B}, 0, intersect(A, B), "A meet B"});
    steps.push_back({TraceOp::Colon, {power(A, 2), A}, 0, colon(power(A, 2), A), "A^2 : A"});

    OracleReport report = truncation_oracle(steps);
    CHECK(report.all_agree);
    CHECK(report.N_used >= report.N_start);
    REQUIRE(report.steps.size() == 4);
    for (const auto &s : report.steps)
        CHECK(s.agree);

    // a complete intersection satisfies A^2 : A = A; claim A^2 instead and
    // the oracle must object
    std::vector<TraceStep> bad;
    bad.push_back({TraceOp::Colon, {power(A, 2), A}, 0, power(A, 2), "wrong colon"});
    OracleReport r2 = truncation_oracle(bad);
    CHECK(!r2.all_agree);

    std::vector<TraceStep> nonprimary;
    nonprimary.push_back({TraceOp::Power, {ideal_from_strings(ctx, {"x"})}, 2,
                          power(ideal_from_strings(ctx, {"x"}), 2), "bad input"});
    CHECK_THROWS_AS(truncation_oracle(nonprimary), Error);
}

TEST_CASE("oracle escalates the cutoff when needed")
{
    ContextPtr ctx = plain_xy();
    // degree-1 generators force a tiny starting cutoff; m^2 is certified
    // inside (x, y) only after at most one doubling
    IdealHandle m = ideal_from_strings(ctx, {"x", "y"});
    std::vector<TraceStep> steps;
    steps.push_back({TraceOp::Power, {m}, 3, power(m, 3), "m^3"});
    OracleReport report = truncation_oracle(steps);
    CHECK(report.all_agree);
    CHECK(report.N_used >= 2);
}

TEST_CASE("membership agrees between normal form and model")
{
    ContextPtr ctx = plain_xy();
    IdealHandle A = ideal_from_strings(ctx, {"x^2 + y^3", "x*y^2"});
    REQUIRE(is_m_primary(A));
    TruncationModel model(ctx, 12);
    Space va = ideal_image(model, A.gens());
    std::vector<std::string> probes = {"x^2 + y^3", "x^3", "x^2*y", "y^5",
                                       "x^2", "y^3", "x*y", "x^2 + y^3 + x*y^2"};
    for (const auto &s : probes)
    {
        Polynomial p = parse_poly(ctx->ring, s);
        bool by_basis = reduces_to_zero(p, A.basis());
        bool by_model = va.contains(model.to_vec(p));
        CHECK(by_basis == by_model);
    }
}
