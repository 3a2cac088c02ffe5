#include "corekit/monomial.hpp"

#include <algorithm>

namespace corekit
{

unsigned total_degree(const Monomial &m)
{
    unsigned d = 0;
    for (unsigned e : m)
        d += e;
    return d;
}

bool mono_divides(const Monomial &a, const Monomial &b)
{
    for (size_t i = 0; i < a.size(); ++i)
    {
        if (a[i] > b[i])
            return false;
    }
    return true;
}

Monomial mono_mul(const Monomial &a, const Monomial &b)
{
    Monomial r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] + b[i];
    return r;
}

Monomial mono_div(const Monomial &a, const Monomial &b)
{
    Monomial r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

Monomial mono_lcm(const Monomial &a, const Monomial &b)
{
    Monomial r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        r[i] = std::max(a[i], b[i]);
    return r;
}

bool mono_is_one(const Monomial &m)
{
    for (unsigned e : m)
    {
        if (e != 0)
            return false;
    }
    return true;
}

namespace
{

int cmp_lex(const Monomial &a, const Monomial &b, size_t lo, size_t hi)
{
    for (size_t i = lo; i < hi; ++i)
    {
        if (a[i] != b[i])
            return a[i] > b[i] ? 1 : -1;
    }
    return 0;
}

// a > b iff deg a > deg b, or degrees tie and the last nonzero entry of
// a - b is negative
int cmp_grevlex(const Monomial &a, const Monomial &b, size_t lo, size_t hi)
{
    long da = 0, db = 0;
    for (size_t i = lo; i < hi; ++i)
    {
        da += a[i];
        db += b[i];
    }
    if (da != db)
        return da > db ? 1 : -1;
    for (size_t i = hi; i-- > lo;)
    {
        if (a[i] != b[i])
            return a[i] < b[i] ? 1 : -1;
    }
    return 0;
}

} // namespace

int MonomialOrder::compare(const Monomial &a, const Monomial &b) const
{
    size_t n = a.size();
    switch (kind)
    {
    case Lex:
        return cmp_lex(a, b, 0, n);
    case GrevLex:
        return cmp_grevlex(a, b, 0, n);
    case Block:
    {
        int c = cmp_grevlex(a, b, 0, block);
        if (c != 0)
            return c;
        return cmp_grevlex(a, b, block, n);
    }
    case Weighted:
    {
        long wa = 0, wb = 0;
        for (size_t i = 0; i < n; ++i)
        {
            wa += weights[i] * (long)a[i];
            wb += weights[i] * (long)b[i];
        }
        if (wa != wb)
            return wa > wb ? 1 : -1;
        return cmp_grevlex(a, b, 0, n);
    }
    }
    return 0;
}

} // namespace corekit
