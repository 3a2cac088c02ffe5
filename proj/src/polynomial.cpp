#include "corekit/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace corekit
{

Polynomial::Polynomial(RingPtr ring, std::vector<Term> terms) : ring_(std::move(ring))
{
    const auto &ord = ring_->order;
    std::sort(terms.begin(), terms.end(),
              [&](const Term &a, const Term &b) { return ord.compare(a.m, b.m) > 0; });
    const Field &F = ring_->field;
    for (auto &t : terms)
    {
        if (!terms_.empty() && terms_.back().m == t.m)
            terms_.back().c = F.add(terms_.back().c, t.c);
        else
            terms_.push_back(std::move(t));
    }
    terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                                [&](const Term &t) { return F.is_zero(t.c); }),
                 terms_.end());
}

const Term &Polynomial::leading() const
{
    if (terms_.empty())
        throw Error("leading term of zero polynomial");
    return terms_.front();
}

unsigned Polynomial::degree() const
{
    unsigned d = 0;
    for (const auto &t : terms_)
        d = std::max(d, total_degree(t.m));
    return d;
}

void Polynomial::check_ring(const Polynomial &o) const
{
    if (!ring_ || !o.ring_ || ring_->id != o.ring_->id)
        throw Error("polynomial ring mismatch");
}

Polynomial Polynomial::operator+(const Polynomial &o) const
{
    check_ring(o);
    const Field &F = ring_->field;
    const auto &ord = ring_->order;
    Polynomial r(ring_);
    size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size())
    {
        if (i == terms_.size())
        {
            r.terms_.push_back(o.terms_[j++]);
            continue;
        }
        if (j == o.terms_.size())
        {
            r.terms_.push_back(terms_[i++]);
            continue;
        }
        int c = ord.compare(terms_[i].m, o.terms_[j].m);
        if (c > 0)
            r.terms_.push_back(terms_[i++]);
        else if (c < 0)
            r.terms_.push_back(o.terms_[j++]);
        else
        {
            Coeff s = F.add(terms_[i].c, o.terms_[j].c);
            if (!F.is_zero(s))
                r.terms_.push_back({terms_[i].m, std::move(s)});
            ++i;
            ++j;
        }
    }
    return r;
}

Polynomial Polynomial::operator-() const
{
    Polynomial r(ring_);
    r.terms_.reserve(terms_.size());
    const Field &F = ring_->field;
    for (const auto &t : terms_)
        r.terms_.push_back({t.m, F.neg(t.c)});
    return r;
}

Polynomial Polynomial::operator-(const Polynomial &o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial &o) const
{
    check_ring(o);
    const Field &F = ring_->field;
    const auto &ord = ring_->order;
    auto cmp = [&](const Monomial &a, const Monomial &b) { return ord.compare(a, b) > 0; };
    std::map<Monomial, Coeff, decltype(cmp)> acc(cmp);
    for (const auto &a : terms_)
    {
        for (const auto &b : o.terms_)
        {
            Monomial m = mono_mul(a.m, b.m);
            Coeff c = F.mul(a.c, b.c);
            auto it = acc.find(m);
            if (it == acc.end())
                acc.emplace(std::move(m), std::move(c));
            else
                it->second = F.add(it->second, c);
        }
    }
    Polynomial r(ring_);
    for (auto &kv : acc)
    {
        if (!F.is_zero(kv.second))
            r.terms_.push_back({kv.first, kv.second});
    }
    return r;
}

Polynomial Polynomial::mul_term(const Monomial &m, const Coeff &c) const
{
    const Field &F = ring_->field;
    Polynomial r(ring_);
    if (F.is_zero(c))
        return r;
    r.terms_.reserve(terms_.size());
    for (const auto &t : terms_)
        r.terms_.push_back({mono_mul(t.m, m), F.mul(t.c, c)});
    return r;
}

Polynomial Polynomial::scale(const Coeff &c) const
{
    Monomial one(ring_->nvars(), 0);
    return mul_term(one, c);
}

bool Polynomial::equals(const Polynomial &o) const
{
    check_ring(o);
    if (terms_.size() != o.terms_.size())
        return false;
    const Field &F = ring_->field;
    for (size_t i = 0; i < terms_.size(); ++i)
    {
        if (terms_[i].m != o.terms_[i].m || !F.eq(terms_[i].c, o.terms_[i].c))
            return false;
    }
    return true;
}

int Polynomial::compare(const Polynomial &a, const Polynomial &b)
{
    const auto &ord = a.ring_->order;
    const Field &F = a.ring_->field;
    size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (size_t i = 0; i < n; ++i)
    {
        int c = ord.compare(a.terms_[i].m, b.terms_[i].m);
        if (c != 0)
            return c;
        if (!F.eq(a.terms_[i].c, b.terms_[i].c))
            return F.str(a.terms_[i].c) < F.str(b.terms_[i].c) ? -1 : 1;
    }
    if (a.terms_.size() != b.terms_.size())
        return a.terms_.size() > b.terms_.size() ? 1 : -1;
    return 0;
}

Polynomial zero_poly(const RingPtr &r) { return Polynomial(r); }

Polynomial constant_poly(const RingPtr &r, const Coeff &c)
{
    if (r->field.is_zero(c))
        return Polynomial(r);
    return Polynomial(r, {{Monomial(r->nvars(), 0), c}});
}

Polynomial one_poly(const RingPtr &r) { return constant_poly(r, r->field.one()); }

Polynomial var_poly(const RingPtr &r, size_t var)
{
    Monomial m(r->nvars(), 0);
    m.at(var) = 1;
    return Polynomial(r, {{std::move(m), r->field.one()}});
}

Polynomial mono_poly(const RingPtr &r, const Monomial &m)
{
    return Polynomial(r, {{m, r->field.one()}});
}

// ===== printing =====

std::string Polynomial::str() const
{
    if (terms_.empty())
        return "0";
    const Field &F = ring_->field;
    std::string out;
    bool first = true;
    for (const auto &t : terms_)
    {
        std::string c = F.str(t.c);
        bool negative = !c.empty() && c[0] == '-';
        std::string mag = negative ? c.substr(1) : c;
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;

        std::string mono;
        for (size_t i = 0; i < t.m.size(); ++i)
        {
            if (t.m[i] == 0)
                continue;
            if (!mono.empty())
                mono += "*";
            mono += ring_->vars[i];
            if (t.m[i] > 1)
                mono += "^" + std::to_string(t.m[i]);
        }
        if (mono.empty())
            out += mag;
        else if (mag == "1")
            out += mono;
        else
            out += mag + "*" + mono;
    }
    return out;
}

// ===== parsing =====

namespace
{

struct Parser
{
    const RingPtr &ring;
    const std::string &src;
    size_t pos = 0;

    void skip_ws()
    {
        while (pos < src.size() && std::isspace((unsigned char)src[pos]))
            ++pos;
    }

    bool eat(char c)
    {
        skip_ws();
        if (pos < src.size() && src[pos] == c)
        {
            ++pos;
            return true;
        }
        return false;
    }

    char peek()
    {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }

    [[noreturn]] void fail(const std::string &msg)
    {
        throw Error("polynomial parse error at position " + std::to_string(pos) + ": " + msg +
                    " in \"" + src + "\"");
    }

    Polynomial parse_expr()
    {
        Polynomial acc = parse_term();
        while (true)
        {
            char c = peek();
            if (c == '+')
            {
                ++pos;
                acc = acc + parse_term();
            }
            else if (c == '-')
            {
                ++pos;
                acc = acc - parse_term();
            }
            else
                break;
        }
        return acc;
    }

    Polynomial parse_term()
    {
        Polynomial acc = parse_unary();
        while (peek() == '*')
        {
            ++pos;
            acc = acc * parse_unary();
        }
        return acc;
    }

    // a sign binds more loosely than '^': -x^2 is -(x^2)
    Polynomial parse_unary()
    {
        char c = peek();
        if (c == '-')
        {
            ++pos;
            return -parse_unary();
        }
        if (c == '+')
        {
            ++pos;
            return parse_unary();
        }
        return parse_power();
    }

    Polynomial parse_power()
    {
        Polynomial base = parse_atom();
        if (peek() == '^')
        {
            ++pos;
            skip_ws();
            size_t start = pos;
            while (pos < src.size() && std::isdigit((unsigned char)src[pos]))
                ++pos;
            if (pos == start)
                fail("expected exponent");
            unsigned long e = std::stoul(src.substr(start, pos - start));
            Polynomial r = one_poly(ring);
            for (unsigned long i = 0; i < e; ++i)
                r = r * base;
            return r;
        }
        return base;
    }

    Polynomial parse_atom()
    {
        char c = peek();
        if (c == '(')
        {
            ++pos;
            Polynomial inner = parse_expr();
            if (!eat(')'))
                fail("expected ')'");
            return inner;
        }
        if (std::isdigit((unsigned char)c))
        {
            size_t start = pos;
            while (pos < src.size() && std::isdigit((unsigned char)src[pos]))
                ++pos;
            mpz_class v(src.substr(start, pos - start));
            return constant_poly(ring, ring->field.from_mpz(v));
        }
        if (std::isalpha((unsigned char)c) || c == '_')
        {
            size_t start = pos;
            while (pos < src.size() &&
                   (std::isalnum((unsigned char)src[pos]) || src[pos] == '_'))
                ++pos;
            std::string name = src.substr(start, pos - start);
            int idx = ring->var_index(name);
            if (idx < 0)
                fail("unknown variable '" + name + "'");
            return var_poly(ring, (size_t)idx);
        }
        fail("unexpected character");
    }
};

} // namespace

Polynomial parse_poly(const RingPtr &r, const std::string &text)
{
    Parser p{r, text};
    Polynomial result = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size())
        p.fail("trailing input");
    return result;
}

Polynomial subst(const Polynomial &p, const RingPtr &target,
                 const std::vector<Polynomial> &images)
{
    if (images.size() != p.ring()->nvars())
        throw Error("substitution image count mismatch");
    Polynomial acc(target);
    for (const auto &t : p.terms())
    {
        Polynomial prod = constant_poly(target, t.c);
        for (size_t i = 0; i < t.m.size(); ++i)
        {
            for (unsigned e = 0; e < t.m[i]; ++e)
                prod = prod * images[i];
        }
        acc = acc + prod;
    }
    return acc;
}

Polynomial inject(const Polynomial &p, const RingPtr &target,
                  const std::vector<size_t> &var_map)
{
    std::vector<Term> terms;
    terms.reserve(p.size());
    for (const auto &t : p.terms())
    {
        Monomial m(target->nvars(), 0);
        for (size_t i = 0; i < t.m.size(); ++i)
        {
            if (t.m[i] != 0)
                m.at(var_map.at(i)) = t.m[i];
        }
        terms.push_back({std::move(m), t.c});
    }
    return Polynomial(target, std::move(terms));
}

bool free_of(const Polynomial &p, const std::vector<size_t> &vars)
{
    for (const auto &t : p.terms())
    {
        for (size_t v : vars)
        {
            if (t.m[v] != 0)
                return false;
        }
    }
    return true;
}

bool is_homogeneous(const Polynomial &p)
{
    const auto &ts = p.terms();
    if (ts.empty())
        return true;
    unsigned d = total_degree(ts.front().m);
    for (const auto &t : ts)
    {
        if (total_degree(t.m) != d)
            return false;
    }
    return true;
}

} // namespace corekit
