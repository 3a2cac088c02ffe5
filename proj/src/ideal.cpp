#include "corekit/ideal.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <queue>
#include <set>

#include "corekit/truncation.hpp"

namespace corekit
{

ContextPtr make_context(RingPtr ring, std::vector<Polynomial> relations,
                        std::optional<bool> local)
{
    static std::atomic<uint64_t> counter{1};
    for (const auto &r : relations)
    {
        if (r.ring()->id != ring->id)
            throw Error("relation from a different ring");
    }
    auto ctx = std::make_shared<RingContext>();
    ctx->ring = std::move(ring);
    ctx->relations = std::move(relations);
    ctx->relation_basis = groebner_basis(ctx->relations);
    if (basis_is_unit(ctx->relation_basis))
        throw Error("relations generate the unit ideal");
    ctx->local = local.value_or(!ctx->relations.empty());
    if (ctx->local)
    {
        for (const auto &r : ctx->relations)
        {
            for (const auto &t : r.terms())
            {
                if (total_degree(t.m) == 0)
                    throw Error("local mode requires relations vanishing at the origin");
            }
        }
    }
    ctx->id = counter.fetch_add(1);
    return ctx;
}

IdealHandle::IdealHandle(ContextPtr ctx, std::vector<Polynomial> gens)
    : impl_(std::make_shared<Impl>())
{
    for (const auto &g : gens)
    {
        if (g.ring()->id != ctx->ring->id)
            throw Error("generator from a different ring");
    }
    impl_->ctx = std::move(ctx);
    impl_->gens = std::move(gens);
}

const ContextPtr &IdealHandle::context() const
{
    if (!impl_)
        throw Error("empty ideal handle");
    return impl_->ctx;
}

const std::vector<Polynomial> &IdealHandle::gens() const
{
    if (!impl_)
        throw Error("empty ideal handle");
    return impl_->gens;
}

const std::vector<Polynomial> &IdealHandle::basis() const
{
    if (!impl_)
        throw Error("empty ideal handle");
    std::call_once(impl_->once,
                   [this]()
                   {
                       std::vector<Polynomial> all = impl_->gens;
                       all.insert(all.end(), impl_->ctx->relation_basis.begin(),
                                  impl_->ctx->relation_basis.end());
                       impl_->basis = groebner_basis(all);
                   });
    return impl_->basis;
}

IdealHandle make_ideal(const ContextPtr &ctx, std::vector<Polynomial> gens)
{
    return IdealHandle(ctx, std::move(gens));
}

IdealHandle ideal_from_strings(const ContextPtr &ctx, const std::vector<std::string> &gens)
{
    std::vector<Polynomial> ps;
    ps.reserve(gens.size());
    for (const auto &s : gens)
        ps.push_back(parse_poly(ctx->ring, s));
    return IdealHandle(ctx, std::move(ps));
}

IdealHandle unit_ideal(const ContextPtr &ctx)
{
    return IdealHandle(ctx, {one_poly(ctx->ring)});
}

IdealHandle zero_ideal(const ContextPtr &ctx) { return IdealHandle(ctx, {}); }

IdealHandle maximal_ideal(const ContextPtr &ctx)
{
    std::vector<Polynomial> vars;
    for (size_t i = 0; i < ctx->ring->nvars(); ++i)
        vars.push_back(var_poly(ctx->ring, i));
    return IdealHandle(ctx, std::move(vars));
}

bool is_zero_ideal(const IdealHandle &h) { return h.basis().empty(); }

bool is_unit_ideal(const IdealHandle &h) { return basis_is_unit(h.basis()); }

static void check_same_context(const IdealHandle &a, const IdealHandle &b)
{
    if (a.context()->id != b.context()->id)
        throw Error("ideal context mismatch");
}

// ===== arithmetic =====

IdealHandle sum(const IdealHandle &a, const IdealHandle &b)
{
    check_same_context(a, b);
    std::vector<Polynomial> gens = a.gens();
    gens.insert(gens.end(), b.gens().begin(), b.gens().end());
    return IdealHandle(a.context(), std::move(gens));
}

IdealHandle product(const IdealHandle &a, const IdealHandle &b)
{
    check_same_context(a, b);
    std::vector<Polynomial> gens;
    for (const auto &x : a.gens())
    {
        if (x.is_zero())
            continue;
        for (const auto &y : b.gens())
        {
            if (!y.is_zero())
                gens.push_back(x * y);
        }
    }
    return IdealHandle(a.context(), std::move(gens));
}

IdealHandle power(const IdealHandle &a, unsigned n)
{
    if (n == 0)
        return unit_ideal(a.context());
    std::vector<Polynomial> base;
    for (const auto &g : a.gens())
    {
        if (!g.is_zero())
            base.push_back(g);
    }
    size_t mu = base.size();
    if (mu == 0)
        return zero_ideal(a.context());
    double count = 1;
    for (unsigned i = 0; i < n; ++i)
        count *= (double)(mu + i) / (double)(i + 1);
    if (count > 200000.0)
        throw Error("power expansion too large");

    // non-decreasing index sequences of length n enumerate the n-fold
    // products of generators
    std::vector<Polynomial> gens;
    std::vector<size_t> idx(n, 0);
    while (true)
    {
        Polynomial p = base[idx[0]];
        for (unsigned i = 1; i < n; ++i)
            p = p * base[idx[i]];
        gens.push_back(std::move(p));
        unsigned pos = n;
        while (pos > 0 && idx[pos - 1] == mu - 1)
            --pos;
        if (pos == 0)
            break;
        size_t v = idx[pos - 1] + 1;
        for (unsigned i = pos - 1; i < n; ++i)
            idx[i] = v;
    }
    return IdealHandle(a.context(), std::move(gens));
}

// ===== elimination machinery =====

RingPtr prefix_extension(const RingPtr &R, size_t count, const std::string &stem)
{
    std::vector<std::string> vars;
    for (size_t i = 0; i < count; ++i)
        vars.push_back("#" + stem + std::to_string(i + 1));
    vars.insert(vars.end(), R->vars.begin(), R->vars.end());
    return make_ring(std::move(vars), MonomialOrder::elimination(count), R->field);
}

std::vector<Polynomial> eliminate_prefix(const RingPtr &ext, std::vector<Polynomial> polys,
                                         size_t prefix, const RingPtr &target)
{
    std::vector<Polynomial> gb = groebner_basis(polys);
    std::vector<size_t> prefix_vars;
    for (size_t i = 0; i < prefix; ++i)
        prefix_vars.push_back(i);
    std::vector<size_t> back_map(ext->nvars(), 0);
    for (size_t i = prefix; i < ext->nvars(); ++i)
        back_map[i] = i - prefix;
    std::vector<Polynomial> out;
    for (const auto &g : gb)
    {
        if (free_of(g, prefix_vars))
            out.push_back(inject(g, target, back_map));
    }
    return out;
}

std::vector<Polynomial> intersect_raw(const RingPtr &R, const std::vector<Polynomial> &A,
                                      const std::vector<Polynomial> &B)
{
    RingPtr ext = prefix_extension(R, 1, "t");
    std::vector<size_t> up(R->nvars());
    for (size_t i = 0; i < R->nvars(); ++i)
        up[i] = i + 1;
    Polynomial t = var_poly(ext, 0);
    Polynomial one_minus_t = one_poly(ext) - t;
    std::vector<Polynomial> polys;
    for (const auto &f : A)
    {
        if (!f.is_zero())
            polys.push_back(t * inject(f, ext, up));
    }
    for (const auto &f : B)
    {
        if (!f.is_zero())
            polys.push_back(one_minus_t * inject(f, ext, up));
    }
    return eliminate_prefix(ext, std::move(polys), 1, R);
}

IdealHandle intersect(const IdealHandle &a, const IdealHandle &b)
{
    check_same_context(a, b);
    return IdealHandle(a.context(),
                       intersect_raw(a.context()->ring, a.basis(), b.basis()));
}

namespace
{

// transporter (a + relations) : b for a single nonzero b, via division of
// the intersection with the principal ideal (b)
IdealHandle colon_single(const IdealHandle &a, const Polynomial &b)
{
    const RingPtr &R = a.context()->ring;
    std::vector<Polynomial> inter = intersect_raw(R, a.basis(), {b});
    std::vector<Polynomial> quotients;
    quotients.reserve(inter.size());
    for (const auto &g : inter)
        quotients.push_back(exact_divide(g, b));
    return IdealHandle(a.context(), std::move(quotients));
}

} // namespace

IdealHandle colon(const IdealHandle &a, const IdealHandle &b)
{
    check_same_context(a, b);
    // divisors that lie in the relation ideal transport everything, so only
    // the rest contribute
    std::vector<Polynomial> divisors;
    for (const auto &g : b.basis())
    {
        if (!reduces_to_zero(g, a.context()->relation_basis))
            divisors.push_back(g);
    }
    if (divisors.empty())
        return unit_ideal(a.context());
    IdealHandle acc = colon_single(a, divisors[0]);
    for (size_t i = 1; i < divisors.size(); ++i)
        acc = intersect(acc, colon_single(a, divisors[i]));
    return acc;
}

IdealHandle saturate(const IdealHandle &a, const Polynomial &f)
{
    const RingPtr &R = a.context()->ring;
    if (f.is_zero())
        throw Error("saturation by zero");
    RingPtr ext = prefix_extension(R, 1, "t");
    std::vector<size_t> up(R->nvars());
    for (size_t i = 0; i < R->nvars(); ++i)
        up[i] = i + 1;
    std::vector<Polynomial> polys;
    for (const auto &g : a.basis())
        polys.push_back(inject(g, ext, up));
    polys.push_back(one_poly(ext) - var_poly(ext, 0) * inject(f, ext, up));
    return IdealHandle(a.context(), eliminate_prefix(ext, std::move(polys), 1, R));
}

IdealHandle saturate_iterated(const IdealHandle &a, const Polynomial &f)
{
    if (f.is_zero())
        throw Error("saturation by zero");
    IdealHandle prev = a;
    IdealHandle divisor = make_ideal(a.context(), {f});
    for (int i = 0; i < 1000; ++i)
    {
        IdealHandle next = colon(prev, divisor);
        if (equals_global(next, prev))
            return next;
        prev = next;
    }
    throw Error("saturation chain failed to stabilize");
}

IdealHandle eliminate(const IdealHandle &a, const std::vector<std::string> &drop)
{
    const RingPtr &R = a.context()->ring;
    if (drop.empty())
        return a;
    std::vector<bool> dropped(R->nvars(), false);
    for (const auto &name : drop)
    {
        int idx = R->var_index(name);
        if (idx < 0)
            throw Error("eliminate: unknown variable '" + name + "'");
        if (dropped[idx])
            throw Error("eliminate: repeated variable '" + name + "'");
        dropped[idx] = true;
    }
    std::vector<std::string> vars;
    std::vector<size_t> to_perm(R->nvars());
    for (size_t i = 0; i < R->nvars(); ++i)
    {
        if (dropped[i])
        {
            to_perm[i] = vars.size();
            vars.push_back(R->vars[i]);
        }
    }
    size_t k = vars.size();
    std::vector<size_t> kept_orig;
    for (size_t i = 0; i < R->nvars(); ++i)
    {
        if (!dropped[i])
        {
            to_perm[i] = vars.size();
            vars.push_back(R->vars[i]);
            kept_orig.push_back(i);
        }
    }
    RingPtr perm = make_ring(vars, MonomialOrder::elimination(k), R->field);
    std::vector<Polynomial> polys;
    for (const auto &g : a.basis())
        polys.push_back(inject(g, perm, to_perm));
    std::vector<Polynomial> gb = groebner_basis(polys);

    std::vector<size_t> prefix_vars;
    for (size_t i = 0; i < k; ++i)
        prefix_vars.push_back(i);
    std::vector<size_t> back(perm->nvars(), 0);
    for (size_t i = k; i < perm->nvars(); ++i)
        back[i] = kept_orig[i - k];
    std::vector<Polynomial> out;
    for (const auto &g : gb)
    {
        if (free_of(g, prefix_vars))
            out.push_back(inject(g, R, back));
    }
    return IdealHandle(a.context(), std::move(out));
}

// ===== measures =====

namespace
{

int staircase_dimension(const std::vector<Polynomial> &basis, size_t nvars)
{
    if (basis_is_unit(basis))
        return -1;
    if (nvars > 24)
        throw Error("dimension: too many variables");
    std::vector<uint32_t> supports;
    for (const auto &g : basis)
    {
        uint32_t mask = 0;
        const Monomial &m = g.leading_monomial();
        for (size_t i = 0; i < nvars; ++i)
        {
            if (m[i] != 0)
                mask |= (uint32_t)1 << i;
        }
        supports.push_back(mask);
    }
    int best = 0;
    for (uint32_t S = 0; S < ((uint32_t)1 << nvars); ++S)
    {
        bool independent = true;
        for (uint32_t sup : supports)
        {
            if ((sup & ~S) == 0)
            {
                independent = false;
                break;
            }
        }
        if (independent)
            best = std::max(best, __builtin_popcount(S));
    }
    return best;
}

} // namespace

int dimension(const IdealHandle &h)
{
    return staircase_dimension(h.basis(), h.context()->ring->nvars());
}

int ring_dimension(const ContextPtr &ctx)
{
    return staircase_dimension(ctx->relation_basis, ctx->ring->nvars());
}

int height(const IdealHandle &h)
{
    int d = dimension(h);
    if (d < 0)
        throw Error("height of the unit ideal");
    return ring_dimension(h.context()) - d;
}

int height_or_infinite(const IdealHandle &h)
{
    int d = dimension(h);
    if (d < 0)
        return INT_MAX;
    return ring_dimension(h.context()) - d;
}

static long long staircase_count(const std::vector<Polynomial> &basis, size_t n)
{
    std::vector<Monomial> lts;
    for (const auto &g : basis)
        lts.push_back(g.leading_monomial());
    auto divisible = [&](const Monomial &m)
    {
        for (const auto &l : lts)
        {
            if (mono_divides(l, m))
                return true;
        }
        return false;
    };
    std::set<Monomial> seen;
    std::queue<Monomial> frontier;
    Monomial origin(n, 0);
    long long count = 0;
    if (!divisible(origin))
    {
        seen.insert(origin);
        frontier.push(origin);
    }
    while (!frontier.empty())
    {
        Monomial m = frontier.front();
        frontier.pop();
        ++count;
        for (size_t i = 0; i < n; ++i)
        {
            Monomial next = m;
            ++next[i];
            if (!divisible(next) && seen.insert(next).second)
                frontier.push(next);
        }
    }
    return count;
}

static bool vanishes_at_origin(const Polynomial &f)
{
    for (const auto &t : f.terms())
    {
        if (total_degree(t.m) == 0)
            return false;
    }
    return true;
}

// Truncation counts dim R/(h + m^N) are non-decreasing in N; agreement at
// two consecutive cutoffs forces m^N into the localization of h (Nakayama
// on (m^N + h)/h), so the count has stabilized at the local colength.
// Graded ideals short-circuit because they agree with their localizations;
// quotient contexts keep a staircase guard so that positive-dimensional
// components through the origin do not climb the schedule to the cap.
static bool generators_graded(const IdealHandle &h)
{
    for (const auto &g : h.gens())
    {
        if (!is_homogeneous(g))
            return false;
    }
    return true;
}

std::optional<long long> local_colength(const IdealHandle &h, unsigned cap)
{
    if (generators_graded(h))
    {
        if (!is_m_primary(h))
            return std::nullopt;
        return staircase_count(h.basis(), h.context()->ring->nvars());
    }
    if (!h.context()->relations.empty())
    {
        int d = dimension(h);
        if (d < 0)
            return 0;
        if (d != 0)
            return std::nullopt;
    }
    std::optional<OriginModel> om = origin_model(h.context(), h.gens(), cap);
    if (!om)
        return std::nullopt;
    return om->colength;
}

IdealHandle localize_at_origin(const IdealHandle &h, unsigned cap)
{
    if (generators_graded(h))
        return h;
    if (!h.context()->relations.empty() && dimension(h) != 0)
        return h;
    std::optional<OriginModel> om = origin_model(h.context(), h.gens(), cap);
    if (!om)
        return h;
    return IdealHandle(h.context(), space_ideal_generators(om->model, om->image));
}

// colength of the localization at the origin: truncation cutoffs are
// raised until two consecutive counts agree
static long long length_local(const IdealHandle &h)
{
    for (const auto &g : h.gens())
    {
        if (!vanishes_at_origin(g))
            throw Error("length requires an m-primary ideal");
    }
    std::optional<long long> len = local_colength(h, 256);
    if (!len)
        throw Error("length requires an m-primary ideal");
    return *len;
}

long long length(const IdealHandle &h)
{
    if (h.context()->local)
        return length_local(h);
    if (!is_m_primary(h))
        throw Error("length requires an m-primary ideal");
    return staircase_count(h.basis(), h.context()->ring->nvars());
}

unsigned staircase_top_degree(const IdealHandle &h)
{
    if (!is_m_primary(h))
        throw Error("staircase_top_degree requires an m-primary ideal");
    std::vector<Monomial> lts;
    for (const auto &g : h.basis())
        lts.push_back(g.leading_monomial());
    size_t n = h.context()->ring->nvars();
    auto divisible = [&](const Monomial &m)
    {
        for (const auto &l : lts)
        {
            if (mono_divides(l, m))
                return true;
        }
        return false;
    };
    std::set<Monomial> seen;
    std::queue<Monomial> frontier;
    Monomial origin(n, 0);
    unsigned top = 0;
    if (!divisible(origin))
    {
        seen.insert(origin);
        frontier.push(origin);
    }
    while (!frontier.empty())
    {
        Monomial m = frontier.front();
        frontier.pop();
        top = std::max(top, total_degree(m));
        for (size_t i = 0; i < n; ++i)
        {
            Monomial next = m;
            ++next[i];
            if (!divisible(next) && seen.insert(next).second)
                frontier.push(next);
        }
    }
    return top;
}

bool radical_member(const IdealHandle &h, const Polynomial &f)
{
    const RingPtr &R = h.context()->ring;
    if (f.ring()->id != R->id)
        throw Error("radical_member: ring mismatch");
    RingPtr ext = prefix_extension(R, 1, "t");
    std::vector<size_t> up(R->nvars());
    for (size_t i = 0; i < R->nvars(); ++i)
        up[i] = i + 1;
    std::vector<Polynomial> polys;
    for (const auto &g : h.basis())
        polys.push_back(inject(g, ext, up));
    polys.push_back(one_poly(ext) - var_poly(ext, 0) * inject(f, ext, up));
    return basis_is_unit(groebner_basis(polys));
}

bool is_m_primary(const IdealHandle &h)
{
    if (is_unit_ideal(h))
        return false;
    const RingPtr &R = h.context()->ring;
    for (size_t i = 0; i < R->nvars(); ++i)
    {
        if (!radical_member(h, var_poly(R, i)))
            return false;
    }
    return true;
}

// ===== containment and equality =====

bool contains_global(const IdealHandle &a, const IdealHandle &b)
{
    check_same_context(a, b);
    for (const auto &g : b.gens())
    {
        if (!reduces_to_zero(g, a.basis()))
            return false;
    }
    return true;
}

bool equals_global(const IdealHandle &a, const IdealHandle &b)
{
    check_same_context(a, b);
    const auto &x = a.basis();
    const auto &y = b.basis();
    if (x.size() != y.size())
        return false;
    for (size_t i = 0; i < x.size(); ++i)
    {
        if (!x[i].equals(y[i]))
            return false;
    }
    return true;
}

bool local_contains(const IdealHandle &a, const IdealHandle &b)
{
    check_same_context(a, b);
    for (const auto &g : b.gens())
    {
        if (g.is_zero() || reduces_to_zero(g, a.basis()))
            continue;
        // g lies in a locally iff the transporter a : g escapes m
        IdealHandle c = colon_single(a, g);
        IdealHandle with_m = sum(c, maximal_ideal(a.context()));
        if (!is_unit_ideal(with_m))
            return false;
    }
    return true;
}

bool contains(const IdealHandle &a, const IdealHandle &b)
{
    if (a.context()->local)
        return contains_global(a, b) || local_contains(a, b);
    return contains_global(a, b);
}

bool ideal_equals(const IdealHandle &a, const IdealHandle &b)
{
    if (equals_global(a, b))
        return true;
    if (a.context()->local)
        return local_contains(a, b) && local_contains(b, a);
    return false;
}

// ===== compact products =====

PowerCache::PowerCache(IdealHandle a) : a_(std::move(a))
{
    cache_.push_back(unit_ideal(a_.context()));
    cache_.push_back(a_);
}

const IdealHandle &PowerCache::get(unsigned n)
{
    while (cache_.size() <= n)
        cache_.push_back(product_compact(a_, cache_.back()));
    return cache_[n];
}

IdealHandle product_compact(const IdealHandle &a, const IdealHandle &b)
{
    check_same_context(a, b);
    std::vector<Polynomial> gens;
    for (const auto &x : a.gens())
    {
        if (x.is_zero())
            continue;
        for (const auto &y : b.basis())
            gens.push_back(x * y);
    }
    return IdealHandle(a.context(), std::move(gens));
}

} // namespace corekit
