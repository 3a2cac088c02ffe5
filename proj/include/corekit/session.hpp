/**
 * @file session.hpp
 * @brief Session files: a line-oriented language declaring one ring, named
 *        ideals and a command list, with deterministic text or JSON output.
 */
#pragma once

#include "corekit/core.hpp"
#include "corekit/truncation.hpp"

#include <json.hpp>

namespace corekit
{

struct SessionOptions
{
    uint64_t seed = 0;
    int max_n = 20;
    int trials = 64;
    int stability = 5;
    bool truncation_check = false;
    bool parallel = false;
};

struct ParseIssue
{
    int line = 0;
    std::string message;
};

class SessionParseError : public Error
{
public:
    explicit SessionParseError(std::vector<ParseIssue> issues);
    const std::vector<ParseIssue> &issues() const { return issues_; }

private:
    std::vector<ParseIssue> issues_;
};

struct Command
{
    enum class Kind
    {
        core,
        colon,
        intersect,
        power,
        rednum,
        spread,
        gs,
        mult,
        length,
        mc_core,
        balanced,
        jout,
        slice,
        oracle_check
    };

    Kind kind;
    std::vector<IdealHandle> args;
    std::optional<IdealHandle> with_J; // core ... with J=(...)
    std::vector<long long> ints;
    std::string text; // statement as written, for report headers
    int line = 0;
};

struct Session
{
    ContextPtr ctx;
    std::string ring_name;
    std::string order_name;
    std::vector<std::pair<std::string, IdealHandle>> ideals;
    std::vector<Command> commands;
    std::vector<std::string> notes; // session-level warnings
};

/// Parses and validates a session file; throws SessionParseError carrying
/// every positioned issue found.
Session parse_session(const std::string &text);

/// Executes the session's commands in order (concurrently under
/// opt.parallel, merged back by command index) and returns the full report.
/// Per-command errors are recorded in the report; execution continues.
nlohmann::ordered_json run_session(const Session &s, const SessionOptions &opt);

std::string render_text(const nlohmann::ordered_json &report);
std::string render_json(const nlohmann::ordered_json &report);

/// Canonical generator strings: the reduced Groebner basis sorted by the
/// ring order, scaled monic over F_p and to primitive integer form with a
/// positive leading coefficient over the rationals.
std::vector<std::string> render_ideal(const IdealHandle &h);

/// A positive integer weight vector making every polynomial in the list
/// weighted-homogeneous, when one can be found.
std::optional<std::vector<long long>>
positive_grading(const std::vector<Polynomial> &polys, size_t nvars);

} // namespace corekit
