/**
 * @file session.cpp
 * @brief Session parsing, command dispatch, and deterministic rendering.
 */
#include "corekit/session.hpp"

#include <algorithm>
#include <cctype>
#include <future>
#include <set>
#include <sstream>

namespace corekit
{

using nlohmann::ordered_json;

// ===== parse errors =====

static std::string join_issues(const std::vector<ParseIssue> &issues)
{
    std::ostringstream os;
    os << "session parse failed:";
    for (const auto &i : issues)
        os << "\n  line " << i.line << ": " << i.message;
    return os.str();
}

SessionParseError::SessionParseError(std::vector<ParseIssue> issues)
    : Error(join_issues(issues)), issues_(std::move(issues))
{
}

// ===== lexical helpers =====

static std::string trim(const std::string &s)
{
    size_t a = 0, b = s.size();
    while (a < b && std::isspace((unsigned char)s[a]))
        ++a;
    while (b > a && std::isspace((unsigned char)s[b - 1]))
        --b;
    return s.substr(a, b - a);
}

static bool valid_identifier(const std::string &s)
{
    if (s.empty() || !std::isalpha((unsigned char)s[0]))
        return false;
    for (char c : s)
    {
        if (!std::isalnum((unsigned char)c) && c != '_')
            return false;
    }
    return true;
}

struct RawStmt
{
    std::string text;
    int line = 0;
};

static std::vector<RawStmt> split_statements(const std::string &text,
                                             std::vector<ParseIssue> &issues)
{
    std::vector<RawStmt> out;
    std::string cur;
    int line = 1;
    int start = 1;
    for (char c : text)
    {
        if (c == ';')
        {
            std::string t = trim(cur);
            if (!t.empty())
                out.push_back({t, start});
            cur.clear();
            start = line;
        }
        else
        {
            if (trim(cur).empty() && !std::isspace((unsigned char)c))
                start = line;
            cur += (c == '\n') ? ' ' : c;
        }
        if (c == '\n')
            ++line;
    }
    if (!trim(cur).empty())
        issues.push_back({start, "statement is missing its terminating ';'"});
    return out;
}

// splits on top-level whitespace; parenthesized and bracketed groups stay
// inside one token
static std::vector<std::string> top_tokens(const std::string &s,
                                           std::vector<ParseIssue> &issues, int line)
{
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s)
    {
        if (depth == 0 && std::isspace((unsigned char)c))
        {
            if (!cur.empty())
            {
                out.push_back(cur);
                cur.clear();
            }
            continue;
        }
        if (c == '(' || c == '[')
            ++depth;
        else if (c == ')' || c == ']')
        {
            --depth;
            if (depth < 0)
            {
                issues.push_back({line, "unbalanced parentheses"});
                return {};
            }
        }
        cur += c;
    }
    if (!cur.empty())
        out.push_back(cur);
    if (depth != 0)
        issues.push_back({line, "unbalanced parentheses"});
    return out;
}

static std::vector<std::string> split_top_commas(const std::string &s)
{
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s)
    {
        if (c == '(' || c == '[')
            ++depth;
        else if (c == ')' || c == ']')
            --depth;
        if (c == ',' && depth == 0)
        {
            out.push_back(trim(cur));
            cur.clear();
        }
        else
            cur += c;
    }
    std::string last = trim(cur);
    if (!last.empty() || !out.empty())
        out.push_back(last);
    return out;
}

static bool parse_int_token(const std::string &s, long long &out)
{
    if (s.empty())
        return false;
    size_t pos = 0;
    try
    {
        out = std::stoll(s, &pos);
    }
    catch (const std::exception &)
    {
        return false;
    }
    return pos == s.size();
}

// ===== grading =====

std::optional<std::vector<long long>>
positive_grading(const std::vector<Polynomial> &polys, size_t nvars)
{
    std::vector<std::vector<long long>> diffs;
    for (const auto &p : polys)
    {
        const auto &ts = p.terms();
        for (size_t k = 1; k < ts.size(); ++k)
        {
            std::vector<long long> d(nvars);
            bool nonzero = false;
            for (size_t i = 0; i < nvars; ++i)
            {
                d[i] = (long long)ts[k].m[i] - (long long)ts[0].m[i];
                nonzero |= d[i] != 0;
            }
            if (nonzero)
                diffs.push_back(std::move(d));
        }
    }
    auto admissible = [&](const std::vector<long long> &w)
    {
        for (long long v : w)
        {
            if (v <= 0)
                return false;
        }
        for (const auto &d : diffs)
        {
            long long s = 0;
            for (size_t i = 0; i < nvars; ++i)
                s += d[i] * w[i];
            if (s != 0)
                return false;
        }
        return true;
    };
    auto normalized = [](std::vector<long long> w)
    {
        long long g = 0;
        for (long long v : w)
            g = std::gcd(g, v);
        if (g > 1)
        {
            for (long long &v : w)
                v /= g;
        }
        return w;
    };

    std::vector<long long> ones(nvars, 1);
    if (admissible(ones))
        return ones;

    // rational nullspace of the difference vectors
    size_t m = diffs.size();
    std::vector<std::vector<mpq_class>> A(m, std::vector<mpq_class>(nvars));
    for (size_t r = 0; r < m; ++r)
    {
        for (size_t c = 0; c < nvars; ++c)
            A[r][c] = mpq_class((long)diffs[r][c]);
    }
    std::vector<int> pivot_row(nvars, -1);
    size_t row = 0;
    for (size_t col = 0; col < nvars && row < m; ++col)
    {
        size_t r = row;
        while (r < m && A[r][col] == 0)
            ++r;
        if (r == m)
            continue;
        std::swap(A[row], A[r]);
        mpq_class lead = A[row][col];
        for (size_t c = 0; c < nvars; ++c)
            A[row][c] /= lead;
        for (size_t rr = 0; rr < m; ++rr)
        {
            if (rr == row || A[rr][col] == 0)
                continue;
            mpq_class f = A[rr][col];
            for (size_t c = 0; c < nvars; ++c)
                A[rr][c] -= f * A[row][c];
        }
        pivot_row[col] = (int)row;
        ++row;
    }

    std::vector<std::vector<long long>> basis;
    for (size_t f = 0; f < nvars; ++f)
    {
        if (pivot_row[f] != -1)
            continue;
        std::vector<mpq_class> w(nvars, mpq_class(0));
        w[f] = 1;
        for (size_t c = 0; c < nvars; ++c)
        {
            if (pivot_row[c] != -1)
                w[c] = -A[(size_t)pivot_row[c]][f];
        }
        mpz_class L = 1;
        for (const auto &q : w)
            mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), q.get_den().get_mpz_t());
        std::vector<long long> v(nvars);
        bool fits = true;
        for (size_t c = 0; c < nvars; ++c)
        {
            mpq_class scaled = w[c] * L;
            mpz_class z = scaled.get_num();
            if (!z.fits_slong_p())
            {
                fits = false;
                break;
            }
            v[c] = z.get_si();
        }
        if (fits)
            basis.push_back(std::move(v));
    }
    size_t dim = basis.size();
    if (dim == 0)
        return std::nullopt;

    auto combine = [&](const std::vector<long long> &lambda)
        -> std::optional<std::vector<long long>>
    {
        std::vector<long long> w(nvars, 0);
        for (size_t b = 0; b < dim; ++b)
        {
            for (size_t c = 0; c < nvars; ++c)
                w[c] += lambda[b] * basis[b][c];
        }
        if (!admissible(w))
            return std::nullopt;
        return normalized(w);
    };
    if (dim <= 3)
    {
        const long long C = 12;
        std::vector<long long> lambda(dim, -C);
        while (true)
        {
            bool all_zero = std::all_of(lambda.begin(), lambda.end(),
                                        [](long long v) { return v == 0; });
            if (!all_zero)
            {
                if (auto w = combine(lambda))
                    return w;
            }
            size_t k = 0;
            while (k < dim && lambda[k] == C)
                lambda[k++] = -C;
            if (k == dim)
                break;
            ++lambda[k];
        }
        return std::nullopt;
    }
    if (dim <= 10)
    {
        for (uint64_t mask = 0; mask < (uint64_t(1) << dim); ++mask)
        {
            std::vector<long long> lambda(dim);
            for (size_t b = 0; b < dim; ++b)
                lambda[b] = (mask >> b) & 1 ? -1 : 1;
            if (auto w = combine(lambda))
                return w;
        }
    }
    return std::nullopt;
}

// ===== canonical rendering =====

static Polynomial normalize_poly(const Polynomial &p)
{
    if (p.is_zero())
        return p;
    const Field &F = p.ring()->field;
    if (F.kind() == FieldKind::Prime)
        return p.scale(F.inv(p.leading_coeff()));
    mpz_class L = 1;
    for (const auto &t : p.terms())
        mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), t.c.rat().get_den().get_mpz_t());
    mpz_class G = 0;
    for (const auto &t : p.terms())
    {
        mpq_class scaled = t.c.rat() * L;
        mpz_class num = scaled.get_num();
        mpz_gcd(G.get_mpz_t(), G.get_mpz_t(), num.get_mpz_t());
    }
    mpq_class f(L, G);
    f.canonicalize();
    if (sgn(p.leading_coeff().rat()) * sgn(f) < 0)
        f = -f;
    return p.scale(Coeff(f));
}

std::vector<std::string> render_ideal(const IdealHandle &h)
{
    std::vector<Polynomial> b = h.basis();
    const MonomialOrder &ord = h.context()->ring->order;
    std::sort(b.begin(), b.end(),
              [&](const Polynomial &x, const Polynomial &y)
              { return ord.compare(x.leading_monomial(), y.leading_monomial()) > 0; });
    std::vector<std::string> out;
    out.reserve(b.size());
    for (const auto &p : b)
        out.push_back(normalize_poly(p).str());
    return out;
}

// ===== session parsing =====

namespace
{

struct Parser
{
    std::vector<ParseIssue> issues;
    Session session;
    bool saw_ring = false;
    bool want_lex = false;
    bool want_local = false;
    std::map<std::string, IdealHandle> by_name;

    void issue(int line, std::string msg) { issues.push_back({line, std::move(msg)}); }

    void prescan(const std::vector<RawStmt> &stmts)
    {
        for (const auto &st : stmts)
        {
            std::istringstream is(st.text);
            std::string head, arg, extra;
            is >> head >> arg >> extra;
            if (head == "order")
            {
                if (arg == "lex" && extra.empty())
                    want_lex = true;
                else if (arg == "grevlex" && extra.empty())
                    want_lex = false;
                else
                    issue(st.line, "order must be 'lex' or 'grevlex'");
            }
            else if (head == "local")
            {
                if (!arg.empty())
                    issue(st.line, "'local;' takes no arguments");
                else
                    want_local = true;
            }
        }
    }

    void parse_ring(const RawStmt &st, const std::string &rest)
    {
        if (saw_ring)
        {
            issue(st.line, "only one ring per session");
            return;
        }
        saw_ring = true;
        size_t eq = rest.find('=');
        if (eq == std::string::npos)
        {
            issue(st.line, "expected 'ring <name> = <field>[vars]'");
            return;
        }
        session.ring_name = trim(rest.substr(0, eq));
        if (!valid_identifier(session.ring_name))
        {
            issue(st.line, "invalid ring name '" + session.ring_name + "'");
            return;
        }
        std::string rhs = trim(rest.substr(eq + 1));
        Field field;
        size_t pos = 0;
        if (rhs.rfind("QQ", 0) == 0)
            pos = 2;
        else if (rhs.rfind("FF", 0) == 0)
        {
            size_t open = rhs.find('(', 2);
            size_t close = rhs.find(')', 2);
            if (open == std::string::npos || close == std::string::npos || close < open)
            {
                issue(st.line, "expected FF(<p>)");
                return;
            }
            std::string ptext = trim(rhs.substr(open + 1, close - open - 1));
            long long p = 0;
            if (!parse_int_token(ptext, p) || p < 2)
            {
                issue(st.line, "invalid characteristic '" + ptext + "'");
                return;
            }
            if (!is_prime_u64((uint64_t)p))
            {
                issue(st.line, ptext + " is not prime");
                return;
            }
            try
            {
                field = Field((uint64_t)p);
            }
            catch (const Error &e)
            {
                issue(st.line, e.what());
                return;
            }
            pos = close + 1;
        }
        else
        {
            issue(st.line, "field must be QQ or FF(<p>)");
            return;
        }
        size_t lb = rhs.find('[', pos);
        size_t rb = rhs.find(']', pos);
        if (lb == std::string::npos || rb == std::string::npos || rb < lb)
        {
            issue(st.line, "expected variable list [v1, ..., vn]");
            return;
        }
        std::vector<std::string> vars;
        for (const auto &v : split_top_commas(rhs.substr(lb + 1, rb - lb - 1)))
        {
            if (!valid_identifier(v))
            {
                issue(st.line, "invalid variable name '" + v + "'");
                return;
            }
            if (std::find(vars.begin(), vars.end(), v) != vars.end())
            {
                issue(st.line, "duplicate variable '" + v + "'");
                return;
            }
            vars.push_back(v);
        }
        if (vars.empty())
        {
            issue(st.line, "a ring needs at least one variable");
            return;
        }
        MonomialOrder order = want_lex ? MonomialOrder::lex() : MonomialOrder::grevlex();
        session.order_name = want_lex ? "lex" : "grevlex";
        RingPtr R = make_ring(vars, order, field);

        std::vector<Polynomial> rels;
        std::string tail = trim(rhs.substr(rb + 1));
        if (!tail.empty())
        {
            if (tail[0] != '/')
            {
                issue(st.line, "unexpected text after the variable list");
                return;
            }
            tail = trim(tail.substr(1));
            if (tail.size() < 2 || tail.front() != '(' || tail.back() != ')')
            {
                issue(st.line, "relations must be parenthesized");
                return;
            }
            for (const auto &r : split_top_commas(tail.substr(1, tail.size() - 2)))
            {
                try
                {
                    rels.push_back(parse_poly(R, r));
                }
                catch (const Error &e)
                {
                    issue(st.line, std::string("relation '") + r + "': " + e.what());
                }
            }
        }
        try
        {
            std::optional<bool> local;
            if (want_local)
                local = true;
            session.ctx = make_context(R, std::move(rels), local);
        }
        catch (const Error &e)
        {
            issue(st.line, e.what());
        }
    }

    void parse_ideal(const RawStmt &st, const std::string &rest)
    {
        if (!session.ctx)
        {
            issue(st.line, "ideal declared before the ring");
            return;
        }
        size_t eq = rest.find('=');
        if (eq == std::string::npos)
        {
            issue(st.line, "expected 'ideal <name> = (g1, ..., gk)'");
            return;
        }
        std::string name = trim(rest.substr(0, eq));
        if (!valid_identifier(name))
        {
            issue(st.line, "invalid ideal name '" + name + "'");
            return;
        }
        if (by_name.count(name))
        {
            issue(st.line, "ideal '" + name + "' redeclared");
            return;
        }
        std::string rhs = trim(rest.substr(eq + 1));
        auto gens = parse_inline_ideal(st.line, rhs);
        if (!gens)
            return;
        by_name.emplace(name, *gens);
        session.ideals.emplace_back(name, *gens);
    }

    std::optional<IdealHandle> parse_inline_ideal(int line, const std::string &text)
    {
        if (text.size() < 2 || text.front() != '(' || text.back() != ')')
        {
            issue(line, "expected a parenthesized generator list");
            return std::nullopt;
        }
        std::vector<Polynomial> gens;
        for (const auto &g : split_top_commas(text.substr(1, text.size() - 2)))
        {
            try
            {
                gens.push_back(parse_poly(session.ctx->ring, g));
            }
            catch (const Error &e)
            {
                issue(line, std::string("generator '") + g + "': " + e.what());
                return std::nullopt;
            }
        }
        return IdealHandle(session.ctx, std::move(gens));
    }

    std::optional<IdealHandle> resolve(int line, const std::string &token)
    {
        if (!token.empty() && token.front() == '(')
            return parse_inline_ideal(line, token);
        auto it = by_name.find(token);
        if (it == by_name.end())
        {
            issue(line, "unknown ideal '" + token + "'");
            return std::nullopt;
        }
        return it->second;
    }

    void parse_command(const RawStmt &st, const std::vector<std::string> &tokens)
    {
        static const std::map<std::string, Command::Kind> kinds = {
            {"core", Command::Kind::core},
            {"colon", Command::Kind::colon},
            {"intersect", Command::Kind::intersect},
            {"power", Command::Kind::power},
            {"rednum", Command::Kind::rednum},
            {"spread", Command::Kind::spread},
            {"gs", Command::Kind::gs},
            {"mult", Command::Kind::mult},
            {"length", Command::Kind::length},
            {"mc-core", Command::Kind::mc_core},
            {"balanced", Command::Kind::balanced},
            {"jout", Command::Kind::jout},
            {"slice", Command::Kind::slice},
            {"oracle-check", Command::Kind::oracle_check}};
        auto it = kinds.find(tokens[0]);
        if (it == kinds.end())
        {
            issue(st.line, "unknown command '" + tokens[0] + "'");
            return;
        }
        if (!session.ctx)
        {
            issue(st.line, "command before the ring declaration");
            return;
        }
        Command cmd;
        cmd.kind = it->second;
        cmd.text = st.text;
        cmd.line = st.line;

        auto ideals_then_ints = [&](size_t n_ideals, size_t n_ints, long long min_last = 0,
                                    bool check_min = false) -> bool
        {
            if (tokens.size() != 1 + n_ideals + n_ints)
            {
                issue(st.line, "'" + tokens[0] + "' expects " + std::to_string(n_ideals) +
                                   " ideal(s) and " + std::to_string(n_ints) +
                                   " integer(s)");
                return false;
            }
            for (size_t k = 0; k < n_ideals; ++k)
            {
                auto h = resolve(st.line, tokens[1 + k]);
                if (!h)
                    return false;
                cmd.args.push_back(*h);
            }
            for (size_t k = 0; k < n_ints; ++k)
            {
                long long v = 0;
                if (!parse_int_token(tokens[1 + n_ideals + k], v))
                {
                    issue(st.line, "expected an integer, got '" +
                                       tokens[1 + n_ideals + k] + "'");
                    return false;
                }
                cmd.ints.push_back(v);
            }
            if (check_min && !cmd.ints.empty() && cmd.ints.back() < min_last)
            {
                issue(st.line, "argument must be at least " + std::to_string(min_last));
                return false;
            }
            return true;
        };

        bool ok = false;
        switch (cmd.kind)
        {
        case Command::Kind::core:
        {
            if (tokens.size() < 2)
            {
                issue(st.line, "'core' expects an ideal");
                return;
            }
            auto h = resolve(st.line, tokens[1]);
            if (!h)
                return;
            cmd.args.push_back(*h);
            if (tokens.size() > 2)
            {
                if (tokens[2] != "with")
                {
                    issue(st.line, "expected 'with J=(...)'");
                    return;
                }
                std::string jtext;
                for (size_t k = 3; k < tokens.size(); ++k)
                    jtext += tokens[k];
                if (jtext.rfind("J", 0) != 0)
                {
                    issue(st.line, "expected 'with J=(...)'");
                    return;
                }
                jtext = trim(jtext.substr(1));
                if (jtext.empty() || jtext[0] != '=')
                {
                    issue(st.line, "expected 'with J=(...)'");
                    return;
                }
                auto j = parse_inline_ideal(st.line, trim(jtext.substr(1)));
                if (!j)
                    return;
                cmd.with_J = *j;
            }
            ok = true;
            break;
        }
        case Command::Kind::colon:
        case Command::Kind::intersect:
        case Command::Kind::rednum:
            ok = ideals_then_ints(2, 0);
            break;
        case Command::Kind::power:
            ok = ideals_then_ints(1, 1, 0, true);
            break;
        case Command::Kind::spread:
        case Command::Kind::mult:
        case Command::Kind::length:
        case Command::Kind::mc_core:
            ok = ideals_then_ints(1, 0);
            break;
        case Command::Kind::gs:
            ok = ideals_then_ints(1, 1, 1, true);
            break;
        case Command::Kind::balanced:
            ok = ideals_then_ints(1, 1);
            break;
        case Command::Kind::jout:
        case Command::Kind::slice:
            ok = ideals_then_ints(2, 2);
            break;
        case Command::Kind::oracle_check:
            ok = ideals_then_ints(0, 0);
            break;
        }
        if (ok)
            session.commands.push_back(std::move(cmd));
    }
};

} // namespace

Session parse_session(const std::string &text)
{
    Parser P;
    auto stmts = split_statements(text, P.issues);
    P.prescan(stmts);
    for (const auto &st : stmts)
    {
        auto tokens = top_tokens(st.text, P.issues, st.line);
        if (tokens.empty())
            continue;
        const std::string &head = tokens[0];
        if (head == "order" || head == "local")
            continue; // handled in the prescan
        if (head == "ring")
            P.parse_ring(st, trim(st.text.substr(4)));
        else if (head == "ideal")
            P.parse_ideal(st, trim(st.text.substr(5)));
        else
            P.parse_command(st, tokens);
    }
    if (!P.saw_ring)
        P.issue(1, "no ring declared");
    if (!P.issues.empty())
        throw SessionParseError(std::move(P.issues));

    if (P.session.ctx && P.session.ctx->local && !P.session.ctx->relations.empty())
    {
        if (!positive_grading(P.session.ctx->relations, P.session.ctx->ring->nvars()))
            P.session.notes.push_back(
                "no positive grading found for the relations; local comparisons "
                "localize at the origin without a grading certificate");
    }
    return P.session;
}

// ===== command execution =====

static ordered_json core_report_json(const CoreReport &rep)
{
    ordered_json j;
    j["core"] = render_ideal(rep.core);
    j["J"] = render_ideal(rep.J);
    j["auto_J"] = rep.auto_J;
    j["n_used"] = rep.n_used;
    j["n_threshold"] = rep.n_threshold;
    j["g"] = rep.g;
    j["ell"] = rep.ell;
    j["r"] = rep.r;
    j["a"] = rep.a;
    j["s_shift"] = rep.s_shift;
    j["stabilized"] = rep.stabilized;
    ordered_json audit;
    audit["Gs"] = rep.audit.gs.satisfied ? "pass" : "fail";
    if (!rep.audit.gs.satisfied && rep.audit.gs.witness_j)
        audit["Gs_witness_j"] = *rep.audit.gs.witness_j;
    audit["height"] = rep.audit.height_ok ? "pass" : "fail";
    audit["char"] = rep.audit.char_ok ? "pass" : "fail";
    audit["depth"] = "not-checked";
    j["audit"] = std::move(audit);
    j["certification"] = certification_name(rep.certification);
    j["warnings"] = rep.warnings;
    return j;
}

struct CommandOutcome
{
    ordered_json payload;
    std::optional<TraceStep> trace;
};

static CommandOutcome run_command(const Command &cmd, size_t idx,
                                  const SessionOptions &sopt)
{
    Options opt;
    opt.seed = sopt.seed;
    opt.max_n = sopt.max_n;
    opt.trials = sopt.trials;
    opt.stability = sopt.stability;
    Rng rng = Rng::stream(sopt.seed, {(uint64_t)idx});

    CommandOutcome out;
    ordered_json &j = out.payload;
    auto trace_result = [&](TraceOp op, std::vector<IdealHandle> inputs,
                            const IdealHandle &result, unsigned exponent = 0)
    {
        TraceStep step;
        step.op = op;
        step.inputs = std::move(inputs);
        step.exponent = exponent;
        step.claimed = result;
        step.label = "[" + std::to_string(idx) + "] " + cmd.text;
        out.trace = std::move(step);
    };

    switch (cmd.kind)
    {
    case Command::Kind::core:
    {
        CoreReport rep = core_formula(cmd.args[0], cmd.with_J, rng, opt);
        j = core_report_json(rep);
        break;
    }
    case Command::Kind::colon:
    {
        IdealHandle r = colon(cmd.args[0], cmd.args[1]);
        j["ideal"] = render_ideal(r);
        trace_result(TraceOp::Colon, {cmd.args[0], cmd.args[1]}, r);
        break;
    }
    case Command::Kind::intersect:
    {
        IdealHandle r = intersect(cmd.args[0], cmd.args[1]);
        j["ideal"] = render_ideal(r);
        trace_result(TraceOp::Intersect, {cmd.args[0], cmd.args[1]}, r);
        break;
    }
    case Command::Kind::power:
    {
        IdealHandle r = power(cmd.args[0], (unsigned)cmd.ints[0]);
        j["ideal"] = render_ideal(r);
        trace_result(TraceOp::Power, {cmd.args[0]}, r, (unsigned)cmd.ints[0]);
        break;
    }
    case Command::Kind::rednum:
        j["reduction_number"] = reduction_number(cmd.args[0], cmd.args[1], opt.max_n);
        break;
    case Command::Kind::spread:
    {
        FiberReport rep = analytic_spread(cmd.args[0]);
        j["spread"] = rep.spread;
        std::vector<std::string> fiber;
        for (const auto &p : rep.fiber_ideal)
            fiber.push_back(normalize_poly(p).str());
        j["fiber_ideal"] = fiber;
        break;
    }
    case Command::Kind::gs:
    {
        GsReport rep = check_Gs(cmd.args[0], (unsigned)cmd.ints[0]);
        j["s"] = rep.s;
        j["satisfied"] = rep.satisfied;
        if (rep.witness_j)
            j["witness_j"] = *rep.witness_j;
        break;
    }
    case Command::Kind::mult:
        j["multiplicity"] = multiplicity(cmd.args[0], rng, opt);
        break;
    case Command::Kind::length:
        j["length"] = length(cmd.args[0]);
        break;
    case Command::Kind::mc_core:
    {
        SandwichReport rep = monte_carlo_core(cmd.args[0], rng, opt);
        j["equal"] = rep.equal;
        j["trials_used"] = rep.trials_used;
        j["upper"] = render_ideal(rep.upper);
        j["lower"] = render_ideal(rep.formula.core);
        j["formula"] = core_report_json(rep.formula);
        break;
    }
    case Command::Kind::balanced:
    {
        BalancedReport rep = balanced_colon(cmd.args[0], (int)cmd.ints[0], rng, 3, opt);
        j["equal"] = rep.equal;
        ordered_json ws = ordered_json::array();
        for (const auto &w : rep.witnesses)
        {
            ordered_json e;
            e["J"] = render_ideal(w.J);
            e["n"] = w.n;
            e["at_n"] = render_ideal(w.at_n);
            e["at_n1"] = render_ideal(w.at_n1);
            ws.push_back(std::move(e));
        }
        j["witnesses"] = std::move(ws);
        break;
    }
    case Command::Kind::jout:
    {
        JoutReport rep =
            jout_check(cmd.args[0], cmd.args[1], (int)cmd.ints[0], (int)cmd.ints[1]);
        j["holds"] = rep.holds;
        if (!rep.holds)
        {
            j["failing_side"] = rep.failing_side;
            j["lhs"] = render_ideal(*rep.lhs);
            j["rhs"] = render_ideal(*rep.rhs);
        }
        break;
    }
    case Command::Kind::slice:
    {
        IdealHandle r = canonical_slice(cmd.args[0], cmd.args[1], (int)cmd.ints[0],
                                        (int)cmd.ints[1], opt);
        j["ideal"] = render_ideal(r);
        break;
    }
    case Command::Kind::oracle_check:
        break; // filled in after all traced commands have run
    }
    return out;
}

static ordered_json oracle_check_json(const std::vector<TraceStep> &steps)
{
    std::vector<TraceStep> eligible;
    int skipped = 0;
    for (const auto &step : steps)
    {
        bool ok = is_m_primary(step.claimed);
        for (const auto &in : step.inputs)
            ok = ok && is_m_primary(in);
        if (ok)
            eligible.push_back(step);
        else
            ++skipped;
    }
    ordered_json j;
    j["checked"] = eligible.size();
    j["skipped"] = skipped;
    if (eligible.empty())
    {
        j["note"] = "no eligible steps: the oracle needs m-primary inputs and results";
        return j;
    }
    OracleReport rep = truncation_oracle(eligible);
    j["all_agree"] = rep.all_agree;
    j["N_start"] = rep.N_start;
    j["N_used"] = rep.N_used;
    j["escalations"] = rep.escalations;
    ordered_json arr = ordered_json::array();
    for (const auto &v : rep.steps)
    {
        ordered_json e;
        e["label"] = v.label;
        e["agree"] = v.agree;
        e["dim_claimed"] = v.model_dim_claimed;
        e["dim_computed"] = v.model_dim_computed;
        arr.push_back(std::move(e));
    }
    j["steps"] = std::move(arr);
    return j;
}

nlohmann::ordered_json run_session(const Session &s, const SessionOptions &opt)
{
    ordered_json report;
    report["schema"] = "corekit/1";
    report["seed"] = opt.seed;
    ordered_json options;
    options["max_n"] = opt.max_n;
    options["trials"] = opt.trials;
    options["stability"] = opt.stability;
    report["options"] = std::move(options);

    const ContextPtr &ctx = s.ctx;
    ordered_json ring;
    ring["name"] = s.ring_name;
    ring["field"] = ctx->ring->field.name();
    ring["variables"] = ctx->ring->vars;
    ring["order"] = s.order_name;
    std::vector<std::string> rels;
    for (const auto &r : ctx->relations)
        rels.push_back(normalize_poly(r).str());
    ring["relations"] = rels;
    ring["local"] = ctx->local;
    report["ring"] = std::move(ring);

    // rendering the declared ideals warms every basis before any
    // concurrency starts
    ordered_json decls = ordered_json::object();
    for (const auto &[name, h] : s.ideals)
        decls[name] = render_ideal(h);
    report["ideals"] = std::move(decls);
    report["warnings"] = s.notes;

    size_t n = s.commands.size();
    std::vector<ordered_json> results(n);
    std::vector<std::optional<TraceStep>> traces(n);

    auto run_one = [&](size_t i) -> ordered_json
    {
        const Command &cmd = s.commands[i];
        ordered_json entry;
        entry["index"] = i;
        entry["command"] = cmd.text;
        try
        {
            CommandOutcome out = run_command(cmd, i, opt);
            entry["ok"] = true;
            for (auto &[k, v] : out.payload.items())
                entry[k] = v;
            traces[i] = std::move(out.trace);
        }
        catch (const Error &e)
        {
            entry["ok"] = false;
            entry["error"] = e.what();
        }
        return entry;
    };

    if (opt.parallel)
    {
        std::vector<std::future<ordered_json>> futures(n);
        for (size_t i = 0; i < n; ++i)
        {
            if (s.commands[i].kind != Command::Kind::oracle_check)
                futures[i] = std::async(std::launch::async, run_one, i);
        }
        for (size_t i = 0; i < n; ++i)
        {
            if (futures[i].valid())
                results[i] = futures[i].get();
        }
    }
    else
    {
        for (size_t i = 0; i < n; ++i)
        {
            if (s.commands[i].kind != Command::Kind::oracle_check)
                results[i] = run_one(i);
        }
    }

    std::vector<TraceStep> steps;
    for (const auto &t : traces)
    {
        if (t)
            steps.push_back(*t);
    }
    for (size_t i = 0; i < n; ++i)
    {
        if (s.commands[i].kind != Command::Kind::oracle_check)
            continue;
        ordered_json entry;
        entry["index"] = i;
        entry["command"] = s.commands[i].text;
        try
        {
            ordered_json payload = oracle_check_json(steps);
            entry["ok"] = true;
            for (auto &[k, v] : payload.items())
                entry[k] = v;
        }
        catch (const Error &e)
        {
            entry["ok"] = false;
            entry["error"] = e.what();
        }
        results[i] = std::move(entry);
    }

    bool all_ok = true;
    ordered_json commands = ordered_json::array();
    for (auto &r : results)
    {
        all_ok = all_ok && r.value("ok", false);
        commands.push_back(std::move(r));
    }
    report["commands"] = std::move(commands);

    if (opt.truncation_check)
    {
        try
        {
            report["truncation_check"] = oracle_check_json(steps);
        }
        catch (const Error &e)
        {
            ordered_json err;
            err["error"] = e.what();
            report["truncation_check"] = std::move(err);
            all_ok = false;
        }
    }
    report["ok"] = all_ok;
    return report;
}

// ===== rendering =====

std::string render_json(const ordered_json &report)
{
    return report.dump(2) + "\n";
}

static bool is_ideal_key(const std::string &key)
{
    static const std::set<std::string> keys = {
        "ideal", "core",  "J",   "upper", "lower",       "at_n",
        "at_n1", "lhs",   "rhs", "fiber_ideal", "relations"};
    return keys.count(key) != 0;
}

static void emit_entry(std::ostringstream &os, const std::string &key,
                       const ordered_json &v, int indent)
{
    std::string pad(indent, ' ');
    if (v.is_array())
    {
        bool strings = std::all_of(v.begin(), v.end(),
                                   [](const ordered_json &e) { return e.is_string(); });
        if (v.empty())
        {
            os << pad << key << ": " << (is_ideal_key(key) ? "(0)" : "[]") << "\n";
            return;
        }
        if (strings)
        {
            os << pad << key << ":\n";
            for (const auto &e : v)
                os << pad << "  " << e.get<std::string>() << "\n";
            return;
        }
        os << pad << key << ":\n";
        for (const auto &e : v)
        {
            os << pad << "  -\n";
            for (const auto &[k2, v2] : e.items())
                emit_entry(os, k2, v2, indent + 4);
        }
        return;
    }
    if (v.is_object())
    {
        os << pad << key << ":\n";
        for (const auto &[k2, v2] : v.items())
            emit_entry(os, k2, v2, indent + 2);
        return;
    }
    if (v.is_string())
    {
        os << pad << key << ": " << v.get<std::string>() << "\n";
        return;
    }
    os << pad << key << ": " << v.dump() << "\n";
}

std::string render_text(const ordered_json &report)
{
    std::ostringstream os;
    os << "schema: " << report["schema"].get<std::string>() << "\n";
    os << "seed: " << report["seed"].dump() << "\n";
    const auto &ring = report["ring"];
    os << "ring " << ring["name"].get<std::string>() << " = "
       << ring["field"].get<std::string>() << "[";
    const auto &vars = ring["variables"];
    for (size_t i = 0; i < vars.size(); ++i)
        os << (i ? ", " : "") << vars[i].get<std::string>();
    os << "] order=" << ring["order"].get<std::string>()
       << " local=" << (ring["local"].get<bool>() ? "yes" : "no") << "\n";
    if (!ring["relations"].empty())
        emit_entry(os, "relations", ring["relations"], 0);
    if (!report["ideals"].empty())
    {
        os << "ideals:\n";
        for (const auto &[name, gens] : report["ideals"].items())
            emit_entry(os, name, gens, 2);
    }
    if (!report["warnings"].empty())
        emit_entry(os, "warnings", report["warnings"], 0);
    for (const auto &cmd : report["commands"])
    {
        os << "[" << cmd["index"].dump() << "] " << cmd["command"].get<std::string>()
           << "\n";
        for (const auto &[k, v] : cmd.items())
        {
            if (k == "index" || k == "command" || k == "ok")
                continue;
            emit_entry(os, k, v, 2);
        }
        if (!cmd["ok"].get<bool>())
            os << "  (command failed)\n";
    }
    if (report.contains("truncation_check"))
        emit_entry(os, "truncation-check", report["truncation_check"], 0);
    os << "ok: " << (report["ok"].get<bool>() ? "true" : "false") << "\n";
    return os.str();
}

} // namespace corekit
