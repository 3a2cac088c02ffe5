/**
 * @file fixtures.hpp
 * @brief Curated worked examples with independently derived expected values.
 *
 * Each fixture pairs a runnable session script with a battery of exact
 * checks computed through the library API. The expected values were derived
 * by hand from the structure of each ring (monomial valuations, semigroup
 * arithmetic, graded decompositions), so the checks are external evidence,
 * not round-trips through the code under test.
 */
#pragma once

#include "corekit/session.hpp"

namespace corekit
{

struct FixtureCheck
{
    std::string label;
    bool pass = false;
};

struct FixtureResult
{
    std::string name;
    std::string note;
    bool passed = false;
    std::vector<FixtureCheck> checks;
    double seconds = 0.0;
};

// names accepted by fixture_session and run_fixture
std::vector<std::string> fixture_names();

// the session script backing a fixture; throws Error for unknown names
std::string fixture_session(const std::string &name);

// parses the fixture's script and runs its check battery
FixtureResult run_fixture(const std::string &name, uint64_t seed = 0);

} // namespace corekit
