/**
 * @file test_fixtures.cpp
 * @brief Every curated fixture passes its check battery and its script runs.
 */
#include <doctest.h>

#include "corekit/fixtures.hpp"

using namespace corekit;

TEST_CASE("fixture batteries pass")
{
    for (const auto &name : fixture_names())
    {
        CAPTURE(name);
        FixtureResult r = run_fixture(name);
        for (const auto &c : r.checks)
        {
            CAPTURE(c.label);
            CHECK(c.pass);
        }
        CHECK(r.passed);
        CHECK(!r.note.empty());
    }
}

TEST_CASE("fixture scripts run as sessions")
{
    SessionOptions opt;
    for (const auto &name : fixture_names())
    {
        CAPTURE(name);
        Session s = parse_session(fixture_session(name));
        auto report = run_session(s, opt);
        CHECK(report["ok"] == true);
    }
}

TEST_CASE("unknown fixtures are rejected")
{
    CHECK_THROWS_AS(run_fixture("nope"), Error);
    CHECK_THROWS_AS(fixture_session(""), Error);
}
