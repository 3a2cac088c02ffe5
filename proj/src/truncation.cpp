#include "corekit/truncation.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace corekit
{

namespace
{

void fill_compositions(size_t pos, unsigned remaining, Monomial &m,
                       std::vector<Monomial> &out)
{
    if (pos + 1 == m.size())
    {
        m[pos] = remaining;
        out.push_back(m);
        m[pos] = 0;
        return;
    }
    for (unsigned k = remaining;; --k)
    {
        m[pos] = k;
        fill_compositions(pos + 1, remaining - k, m, out);
        m[pos] = 0;
        if (k == 0)
            break;
    }
}

// all monomials of total degree exactly d
std::vector<Monomial> monomials_of_degree(size_t nvars, unsigned d)
{
    std::vector<Monomial> out;
    Monomial m(nvars, 0);
    fill_compositions(0, d, m, out);
    return out;
}

} // namespace

TruncationModel::TruncationModel(ContextPtr ctx, unsigned N) : ctx_(std::move(ctx)), N_(N)
{
    const RingPtr &R = ctx_->ring;
    size_t n = R->nvars();
    pure_truncate_ = ctx_->relations.empty();
    std::vector<Monomial> lts;
    if (pure_truncate_)
    {
        for (auto &m : monomials_of_degree(n, N_))
            lts.push_back(std::move(m));
    }
    else
    {
        std::vector<Polynomial> gens = ctx_->relation_basis;
        for (auto &m : monomials_of_degree(n, N_))
            gens.push_back(mono_poly(R, m));
        modulus_ = groebner_basis(gens);
        for (const auto &g : modulus_)
            lts.push_back(g.leading_monomial());
    }

    // staircase walk below the leading terms
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
    if (!divisible(origin))
    {
        seen.insert(origin);
        frontier.push(origin);
    }
    while (!frontier.empty())
    {
        Monomial m = frontier.front();
        frontier.pop();
        basis_.push_back(m);
        for (size_t i = 0; i < n; ++i)
        {
            Monomial next = m;
            ++next[i];
            if (!divisible(next) && seen.insert(next).second)
                frontier.push(next);
        }
    }
    std::sort(basis_.begin(), basis_.end(),
              [&](const Monomial &a, const Monomial &b)
              { return R->order.compare(a, b) > 0; });
    for (size_t i = 0; i < basis_.size(); ++i)
        index_[basis_[i]] = i;
}

Polynomial TruncationModel::nf(const Polynomial &p) const
{
    if (pure_truncate_)
    {
        std::vector<Term> kept;
        for (const auto &t : p.terms())
        {
            if (total_degree(t.m) < N_)
                kept.push_back(t);
        }
        return Polynomial(ctx_->ring, std::move(kept));
    }
    return normal_form(p, modulus_);
}

SparseVec TruncationModel::to_vec(const Polynomial &p) const
{
    Polynomial r = nf(p);
    SparseVec v;
    v.reserve(r.size());
    for (const auto &t : r.terms())
        v.push_back({index_.at(t.m), t.c});
    std::sort(v.begin(), v.end(),
              [](const auto &a, const auto &b) { return a.first < b.first; });
    return v;
}

// ===== echelon spaces =====

namespace
{

// v -= c * w
void axpy_sub(const Field &F, SparseVec &v, const Coeff &c, const SparseVec &w)
{
    SparseVec out;
    out.reserve(v.size() + w.size());
    size_t i = 0, j = 0;
    while (i < v.size() || j < w.size())
    {
        if (j >= w.size() || (i < v.size() && v[i].first < w[j].first))
        {
            out.push_back(v[i]);
            ++i;
        }
        else if (i >= v.size() || w[j].first < v[i].first)
        {
            out.push_back({w[j].first, F.neg(F.mul(c, w[j].second))});
            ++j;
        }
        else
        {
            Coeff s = F.sub(v[i].second, F.mul(c, w[j].second));
            if (!F.is_zero(s))
                out.push_back({v[i].first, s});
            ++i;
            ++j;
        }
    }
    v = std::move(out);
}

const Coeff *coeff_at(const SparseVec &v, size_t col)
{
    auto it = std::lower_bound(v.begin(), v.end(), col,
                               [](const auto &e, size_t c) { return e.first < c; });
    if (it != v.end() && it->first == col)
        return &it->second;
    return nullptr;
}

} // namespace

void Space::reduce(SparseVec &v) const
{
    size_t i = 0;
    while (i < v.size())
    {
        auto it = rows_.find(v[i].first);
        if (it == rows_.end())
        {
            ++i;
            continue;
        }
        Coeff c = v[i].second;
        axpy_sub(field_, v, c, it->second);
        // entries before position i had no pivot and are untouched
    }
}

bool Space::insert(SparseVec v)
{
    reduce(v);
    if (v.empty())
        return false;
    Coeff lead = v.front().second;
    if (!field_.is_one(lead))
    {
        Coeff s = field_.inv(lead);
        for (auto &e : v)
            e.second = field_.mul(e.second, s);
    }
    size_t pivot = v.front().first;
    for (auto &[p, row] : rows_)
    {
        (void)p;
        const Coeff *c = coeff_at(row, pivot);
        if (c)
            axpy_sub(field_, row, *c, v);
    }
    rows_.emplace(pivot, std::move(v));
    return true;
}

bool Space::contains(SparseVec v) const
{
    reduce(v);
    return v.empty();
}

bool space_equal(const Space &a, const Space &b)
{
    if (a.dim() != b.dim())
        return false;
    for (const auto &[p, row] : a.rows())
    {
        (void)p;
        if (!b.contains(row))
            return false;
    }
    return true;
}

namespace
{

// least total degree of a term; multiples of g by monomials of degree
// >= N - order vanish in a model of cutoff N
unsigned poly_order(const Polynomial &p)
{
    unsigned o = UINT_MAX;
    for (const auto &t : p.terms())
        o = std::min(o, total_degree(t.m));
    return o;
}

} // namespace

Space ideal_image(const TruncationModel &model, const std::vector<Polynomial> &gens)
{
    Space s(model.context()->ring->field);
    for (const auto &g : gens)
    {
        if (g.is_zero())
            continue;
        // multiples whose terms all reach the cutoff vanish in the model
        unsigned ord = poly_order(g);
        for (const auto &mu : model.standard_monomials())
        {
            if (total_degree(mu) + ord >= model.cutoff())
                continue;
            Polynomial p = g.mul_term(mu, model.context()->ring->field.one());
            SparseVec v = model.to_vec(p);
            if (!v.empty())
                s.insert(std::move(v));
        }
    }
    return s;
}

Space space_intersect(const TruncationModel &model, const Space &a, const Space &b)
{
    const Field &F = model.context()->ring->field;
    size_t D = model.dim();
    Space work(F);
    for (const auto &[p, row] : a.rows())
    {
        (void)p;
        SparseVec v = row;
        for (const auto &e : row)
            v.push_back({e.first + D, e.second});
        work.insert(std::move(v));
    }
    for (const auto &[p, row] : b.rows())
    {
        (void)p;
        work.insert(row);
    }
    Space out(F);
    for (const auto &[p, row] : work.rows())
    {
        if (p < D)
            continue;
        SparseVec v;
        for (const auto &e : row)
            v.push_back({e.first - D, e.second});
        out.insert(std::move(v));
    }
    return out;
}

Space space_colon(const TruncationModel &model, const Space &a, const Polynomial &divisor)
{
    const Field &F = model.context()->ring->field;
    size_t D = model.dim();
    Space work(F);
    for (const auto &[p, row] : a.rows())
    {
        (void)p;
        work.insert(row);
    }
    unsigned ord = poly_order(divisor);
    for (size_t k = 0; k < D; ++k)
    {
        SparseVec v;
        if (total_degree(model.monomial_at(k)) + ord < model.cutoff())
            v = model.to_vec(divisor.mul_term(model.monomial_at(k), F.one()));
        v.push_back({D + k, F.one()});
        work.insert(std::move(v));
    }
    Space out(F);
    for (const auto &[p, row] : work.rows())
    {
        if (p < D)
            continue;
        SparseVec v;
        for (const auto &e : row)
            v.push_back({e.first - D, e.second});
        out.insert(std::move(v));
    }
    return out;
}

// ===== origin-primary models =====

namespace
{

// number of monomials of degree below N in nv variables, saturating just
// past the bound so oversized models can be refused before they are built
long long free_dimension(size_t nv, unsigned N, long long bound)
{
    long long count = 1;
    for (size_t i = 1; i <= nv; ++i)
    {
        count = count * (long long)(N - 1 + i) / (long long)i;
        if (count > bound)
            return bound + 1;
    }
    return count;
}

} // namespace

std::optional<OriginModel> origin_model(const ContextPtr &ctx,
                                        const std::vector<Polynomial> &gens, unsigned cap)
{
    const long long budget = 20000;
    size_t nv = ctx->ring->nvars();
    for (unsigned N = 6; N + 1 <= cap; N += std::max(2u, N / 2))
    {
        if (free_dimension(nv, N + 1, budget) > budget)
            return std::nullopt;
        TruncationModel small(ctx, N);
        Space simg = ideal_image(small, gens);
        TruncationModel big(ctx, N + 1);
        Space bimg = ideal_image(big, gens);
        long long c0 = (long long)small.dim() - (long long)simg.dim();
        long long c1 = (long long)big.dim() - (long long)bimg.dim();
        if (c0 == c1)
            return OriginModel{N, c0, std::move(small), std::move(simg)};
    }
    return std::nullopt;
}

std::optional<long long> colength_mod_p(const ContextPtr &ctx,
                                        const std::vector<Polynomial> &gens, unsigned N,
                                        uint64_t p)
{
    const RingPtr &R = ctx->ring;
    if (R->field.kind() != FieldKind::Rationals || !ctx->relations.empty())
        throw Error("colength_mod_p requires a relation-free rational context");
    RingPtr Rp = make_ring(R->vars, R->order, Field(p));
    const Field &F = Rp->field;
    std::vector<Polynomial> mapped;
    for (const auto &g : gens)
    {
        std::vector<Term> terms;
        for (const auto &t : g.terms())
        {
            const mpq_class &q = t.c.rat();
            Coeff den = F.from_mpz(q.get_den());
            if (F.is_zero(den))
                return std::nullopt;
            Coeff c = F.div(F.from_mpz(q.get_num()), den);
            if (!F.is_zero(c))
                terms.push_back(Term{t.m, c});
        }
        mapped.emplace_back(Rp, std::move(terms));
    }
    ContextPtr cp = make_context(Rp, {}, std::optional<bool>(true));
    TruncationModel model(cp, N);
    Space img = ideal_image(model, mapped);
    return (long long)model.dim() - (long long)img.dim();
}

std::vector<Polynomial> space_ideal_generators(const TruncationModel &model, const Space &s)
{
    const RingPtr &R = model.context()->ring;
    std::vector<Monomial> corners = monomials_of_degree(R->nvars(), model.cutoff());
    std::vector<Monomial> lts;
    for (const auto &[p, row] : s.rows())
    {
        (void)row;
        lts.push_back(model.monomial_at(p));
    }
    for (const auto &m : corners)
        lts.push_back(m);
    auto redundant = [&](const Monomial &m)
    {
        for (const auto &l : lts)
        {
            if (!(l == m) && mono_divides(l, m))
                return true;
        }
        return false;
    };
    std::vector<Polynomial> gens;
    for (const auto &[p, row] : s.rows())
    {
        if (redundant(model.monomial_at(p)))
            continue;
        std::vector<Term> terms;
        for (const auto &e : row)
            terms.push_back({model.monomial_at(e.first), e.second});
        gens.push_back(Polynomial(R, std::move(terms)));
    }
    for (const auto &m : corners)
    {
        if (!redundant(m))
            gens.push_back(mono_poly(R, m));
    }
    return gens;
}

IdealHandle local_colon(const IdealHandle &a, const IdealHandle &b)
{
    const ContextPtr &ctx = a.context();
    if (!ctx->local)
        return colon(a, b);
    bool graded = true;
    bool unit_at_origin = false;
    for (const auto &g : a.gens())
    {
        graded = graded && is_homogeneous(g);
        for (const auto &t : g.terms())
            unit_at_origin = unit_at_origin || total_degree(t.m) == 0;
    }
    // a dividend with a unit constant term is the whole local ring
    if (unit_at_origin)
        return unit_ideal(ctx);
    for (const auto &g : b.gens())
        graded = graded && is_homogeneous(g);
    // a graded colon of graded ideals equals its own contraction
    if (graded)
        return colon(a, b);
    // quotient contexts keep the staircase guard: a positive-dimensional
    // component through the origin would climb the schedule to the cap
    if (!ctx->relations.empty() && dimension(a) != 0)
        return colon(localize_at_origin(a), b);
    std::optional<OriginModel> om = origin_model(ctx, a.gens(), 128);
    if (!om)
        return colon(a, b);
    Space c(ctx->ring->field);
    bool first = true;
    for (const auto &g : b.gens())
    {
        if (g.is_zero())
            continue;
        Space piece = space_colon(om->model, om->image, g);
        if (first)
        {
            c = std::move(piece);
            first = false;
        }
        else
            c = space_intersect(om->model, c, piece);
    }
    if (first)
        return colon(a, b);
    return IdealHandle(ctx, space_ideal_generators(om->model, c));
}

// ===== scripted replay =====

namespace
{

std::vector<Polynomial> derived_generators(const TraceStep &step)
{
    switch (step.op)
    {
    case TraceOp::Power:
        return power(step.inputs.at(0), step.exponent).gens();
    case TraceOp::Product:
        return product(step.inputs.at(0), step.inputs.at(1)).gens();
    default:
        return {};
    }
}

unsigned max_generator_degree(const std::vector<Polynomial> &gens)
{
    unsigned d = 0;
    for (const auto &g : gens)
    {
        if (!g.is_zero())
            d = std::max(d, (unsigned)g.degree());
    }
    return d;
}

} // namespace

OracleReport truncation_oracle(const std::vector<TraceStep> &steps)
{
    if (steps.empty())
        throw Error("truncation oracle: empty trace");
    ContextPtr ctx = steps.front().claimed.context();

    // the ideals whose containment of m^N must be certified: every input,
    // every claimed result, and the generator sets of powers and products
    std::vector<std::vector<Polynomial>> certify;
    unsigned maxdeg = 1;
    for (const auto &step : steps)
    {
        for (const auto &in : step.inputs)
        {
            if (!is_m_primary(in))
                throw Error("truncation oracle requires m-primary ideals");
            certify.push_back(in.gens());
        }
        if (!is_m_primary(step.claimed))
            throw Error("truncation oracle requires m-primary ideals");
        certify.push_back(step.claimed.gens());
        std::vector<Polynomial> derived = derived_generators(step);
        if (!derived.empty())
            certify.push_back(std::move(derived));
    }
    for (const auto &gs : certify)
        maxdeg = std::max(maxdeg, max_generator_degree(gs));

    OracleReport report;
    report.N_start = 2 * maxdeg;

    unsigned N = report.N_start;
    for (int tries = 0;; ++tries)
    {
        if (tries > 8)
            throw Error("truncation oracle: cutoff failed to stabilize");
        TruncationModel small(ctx, N);
        TruncationModel big(ctx, 2 * N);
        bool stable = true;
        for (const auto &gs : certify)
        {
            size_t c1 = small.dim() - ideal_image(small, gs).dim();
            size_t c2 = big.dim() - ideal_image(big, gs).dim();
            if (c1 != c2)
            {
                stable = false;
                break;
            }
        }
        if (!stable)
        {
            N *= 2;
            ++report.escalations;
            continue;
        }

        report.N_used = N;
        report.all_agree = true;
        for (const auto &step : steps)
        {
            Space computed(ctx->ring->field);
            switch (step.op)
            {
            case TraceOp::Power:
            case TraceOp::Product:
                computed = ideal_image(small, derived_generators(step));
                break;
            case TraceOp::Intersect:
            {
                Space a = ideal_image(small, step.inputs.at(0).gens());
                Space b = ideal_image(small, step.inputs.at(1).gens());
                computed = space_intersect(small, a, b);
                break;
            }
            case TraceOp::Colon:
            {
                Space a = ideal_image(small, step.inputs.at(0).gens());
                bool first = true;
                for (const auto &b : step.inputs.at(1).gens())
                {
                    if (b.is_zero())
                        continue;
                    Space piece = space_colon(small, a, b);
                    if (first)
                    {
                        computed = std::move(piece);
                        first = false;
                    }
                    else
                        computed = space_intersect(small, computed, piece);
                }
                if (first)
                    throw Error("truncation oracle: colon by the zero ideal");
                break;
            }
            }
            Space claimed = ideal_image(small, step.claimed.gens());
            StepVerdict v;
            v.label = step.label;
            v.model_dim_claimed = claimed.dim();
            v.model_dim_computed = computed.dim();
            v.agree = space_equal(claimed, computed);
            if (!v.agree)
                report.all_agree = false;
            report.steps.push_back(std::move(v));
        }
        return report;
    }
}

} // namespace corekit
