#include "corekit/reduction.hpp"

#include <algorithm>

#include "corekit/syzygy.hpp"

namespace corekit
{

namespace
{

bool all_homogeneous(const std::vector<Polynomial> &polys)
{
    for (const auto &f : polys)
    {
        if (!is_homogeneous(f))
            return false;
    }
    return true;
}

// equality of I^{n+1} and J * I^n given the containment of the right side
// in the left; locally a colength comparison decides without elimination
bool certificate_holds(const IdealHandle &lhs, const IdealHandle &rhs)
{
    if (!lhs.context()->local)
        return equals_global(lhs, rhs);
    // graded ideals agree with their localizations degree by degree; the
    // generator scan avoids a basis of the dense product
    if (all_homogeneous(lhs.gens()) && all_homogeneous(rhs.gens()))
        return equals_global(lhs, rhs);
    std::optional<long long> a = local_colength(lhs);
    std::optional<long long> b = local_colength(rhs);
    if (a && b)
        return *a == *b;
    return ideal_equals(lhs, rhs);
}

} // namespace

ReductionReport is_reduction(const IdealHandle &J, const IdealHandle &I, int max_n)
{
    if (!contains(I, J))
        throw Error("is_reduction: J is not contained in I");
    ReductionReport rep;
    rep.J = J;
    rep.I = I;
    PowerCache cache(I);
    for (int n = 0; n <= max_n; ++n)
    {
        const IdealHandle &lhs = cache.get((unsigned)n + 1);
        IdealHandle rhs = product_compact(J, cache.get((unsigned)n));
        if (certificate_holds(lhs, rhs))
        {
            rep.certificate_n = n;
            rep.is_reduction = true;
            return rep;
        }
    }
    rep.inconclusive = true;
    return rep;
}

int reduction_number(const IdealHandle &J, const IdealHandle &I, int max_n)
{
    ReductionReport rep = is_reduction(J, I, max_n);
    if (!rep.is_reduction)
        throw Error("reduction_number: no certificate up to n = " + std::to_string(max_n));
    return *rep.certificate_n;
}

FiberReport analytic_spread(const IdealHandle &I)
{
    const ContextPtr &ctx = I.context();
    if (is_zero_ideal(I))
        throw Error("analytic spread of the zero ideal");
    if (is_unit_ideal(I))
        throw Error("analytic spread of the unit ideal");
    const RingPtr &R = ctx->ring;
    size_t n = R->nvars();
    const std::vector<Polynomial> &gens = I.gens();
    size_t m = gens.size();

    // base ring k[x.., #T..]; the kernel of T_i -> f_i * u is computed there
    std::vector<std::string> vars0 = R->vars;
    for (size_t i = 0; i < m; ++i)
        vars0.push_back("#T" + std::to_string(i + 1));
    RingPtr B0 = make_ring(vars0, MonomialOrder::grevlex(), R->field);
    RingPtr E1 = prefix_extension(B0, 1, "u");

    std::vector<size_t> up(n);
    for (size_t i = 0; i < n; ++i)
        up[i] = i + 1;
    Polynomial u = var_poly(E1, 0);
    std::vector<Polynomial> polys;
    for (const auto &rel : ctx->relation_basis)
        polys.push_back(inject(rel, E1, up));
    for (size_t i = 0; i < m; ++i)
        polys.push_back(var_poly(E1, 1 + n + i) - inject(gens[i], E1, up) * u);

    // saturate by u, then eliminate it
    RingPtr E2 = prefix_extension(E1, 1, "s");
    std::vector<size_t> up2(E1->nvars());
    for (size_t i = 0; i < E1->nvars(); ++i)
        up2[i] = i + 1;
    std::vector<Polynomial> sat_polys;
    for (const auto &p : polys)
        sat_polys.push_back(inject(p, E2, up2));
    sat_polys.push_back(one_poly(E2) - var_poly(E2, 0) * inject(u, E2, up2));
    std::vector<Polynomial> saturated = eliminate_prefix(E2, std::move(sat_polys), 1, E1);
    std::vector<Polynomial> kernel = eliminate_prefix(E1, std::move(saturated), 1, B0);

    // reduce modulo m: x -> 0, #T_i -> T_i
    std::vector<std::string> tvars;
    for (size_t i = 0; i < m; ++i)
        tvars.push_back("T" + std::to_string(i + 1));
    FiberReport rep;
    rep.fiber_ring = make_ring(tvars, MonomialOrder::grevlex(), R->field);
    std::vector<Polynomial> images;
    for (size_t i = 0; i < n; ++i)
        images.push_back(zero_poly(rep.fiber_ring));
    for (size_t i = 0; i < m; ++i)
        images.push_back(var_poly(rep.fiber_ring, i));
    for (const auto &g : kernel)
    {
        Polynomial f = subst(g, rep.fiber_ring, images);
        if (!f.is_zero())
            rep.fiber_ideal.push_back(std::move(f));
    }

    ContextPtr fctx = make_context(rep.fiber_ring, {});
    rep.spread = dimension(make_ideal(fctx, rep.fiber_ideal));

    int g = height(I);
    int D = ring_dimension(ctx);
    if (rep.spread < g || rep.spread > D)
        throw Error("analytic spread fell outside [height, dim]");
    return rep;
}

IdealHandle random_minimal_reduction(const IdealHandle &I, Rng rng, const Options &opt,
                                     std::vector<std::string> *warnings)
{
    const ContextPtr &ctx = I.context();
    const Field &F = ctx->ring->field;
    std::vector<Polynomial> base;
    for (const auto &g : I.gens())
    {
        if (!g.is_zero())
            base.push_back(g);
    }
    if (base.empty())
        throw Error("random_minimal_reduction: zero ideal");
    if (base.size() == 1)
        return I;

    if (F.kind() == FieldKind::Prime && F.characteristic() < 65536 && warnings)
        warnings->push_back("residue field F_" + std::to_string(F.characteristic()) +
                            " is below the sampling threshold 2^16; general-element "
                            "draws may need retries or fail");

    int ell = analytic_spread(I).spread;
    if (ell <= 0)
        throw Error("random_minimal_reduction: analytic spread is not positive");

    for (int attempt = 0; attempt < opt.retries; ++attempt)
    {
        std::vector<Polynomial> jgens;
        for (int j = 0; j < ell; ++j)
        {
            Polynomial acc = zero_poly(ctx->ring);
            for (const auto &g : base)
            {
                Coeff c;
                if (F.kind() == FieldKind::Prime)
                    c = F.from_int((long)rng.below(F.characteristic()));
                else
                    c = F.from_int((long)rng.below(20001) - 10000);
                acc = acc + g.scale(c);
            }
            jgens.push_back(std::move(acc));
        }
        IdealHandle J = make_ideal(ctx, std::move(jgens));
        ReductionReport rep = is_reduction(J, I, opt.max_n);
        if (rep.is_reduction)
            return J;
    }
    throw Error("random_minimal_reduction: retry budget exhausted");
}

namespace
{

Polynomial det_recursive(const std::vector<std::vector<const Polynomial *>> &m, size_t size,
                         std::vector<size_t> &rows, std::vector<size_t> &cols,
                         const RingPtr &R)
{
    if (size == 1)
        return *m[rows[0]][cols[0]];
    Polynomial acc = zero_poly(R);
    std::vector<size_t> subrows(rows.begin() + 1, rows.end());
    for (size_t i = 0; i < size; ++i)
    {
        std::vector<size_t> subcols;
        for (size_t j = 0; j < size; ++j)
        {
            if (j != i)
                subcols.push_back(cols[j]);
        }
        Polynomial minor = det_recursive(m, size - 1, subrows, subcols, R);
        Polynomial term = (*m[rows[0]][cols[i]]) * minor;
        if (i % 2 == 0)
            acc = acc + term;
        else
            acc = acc - term;
    }
    return acc;
}

// all k x k minors of the first `cols` columns of the syzygy rows
std::vector<Polynomial> minors_of(const SyzygyMatrix &S, size_t cols, size_t k,
                                  const RingPtr &R)
{
    std::vector<Polynomial> out;
    size_t rows = S.row_count();
    if (k == 0 || k > rows || k > cols)
        return out;
    std::vector<std::vector<const Polynomial *>> m(rows, std::vector<const Polynomial *>(cols));
    for (size_t i = 0; i < rows; ++i)
    {
        for (size_t j = 0; j < cols; ++j)
            m[i][j] = &S.rows[i][j];
    }
    std::vector<size_t> rsel(k), csel(k);
    for (size_t i = 0; i < k; ++i)
        rsel[i] = i;
    while (true)
    {
        for (size_t i = 0; i < k; ++i)
            csel[i] = i;
        while (true)
        {
            Polynomial d = det_recursive(m, k, rsel, csel, R);
            if (!d.is_zero())
                out.push_back(std::move(d));
            size_t pos = k;
            while (pos > 0 && csel[pos - 1] == cols - (k - pos) - 1)
                --pos;
            if (pos == 0)
                break;
            ++csel[pos - 1];
            for (size_t i = pos; i < k; ++i)
                csel[i] = csel[i - 1] + 1;
        }
        size_t pos = k;
        while (pos > 0 && rsel[pos - 1] == rows - (k - pos) - 1)
            --pos;
        if (pos == 0)
            break;
        ++rsel[pos - 1];
        for (size_t i = pos; i < k; ++i)
            rsel[i] = rsel[i - 1] + 1;
    }
    return out;
}

} // namespace

GsReport check_Gs(const IdealHandle &I, unsigned s, bool infinite)
{
    const ContextPtr &ctx = I.context();
    std::vector<Polynomial> gens;
    for (const auto &g : I.gens())
    {
        if (!g.is_zero())
            gens.push_back(g);
    }
    GsReport rep;
    rep.infinite = infinite;
    size_t mu = gens.size();
    if (mu == 0)
    {
        rep.s = infinite ? 0 : s;
        return rep;
    }
    unsigned s_eff = infinite ? (unsigned)mu : std::min<unsigned>(s, (unsigned)mu);
    rep.s = s_eff;

    std::vector<Polynomial> combined = gens;
    combined.insert(combined.end(), ctx->relation_basis.begin(), ctx->relation_basis.end());
    SyzygyMatrix S = syzygies(combined);

    for (unsigned j = 0; j < s_eff; ++j)
    {
        size_t k = mu - j;
        std::vector<Polynomial> fitting = minors_of(S, mu, k, ctx->ring);
        for (const auto &g : I.gens())
            fitting.push_back(g);
        int h = height_or_infinite(make_ideal(ctx, std::move(fitting)));
        if (h < (int)(j + 1))
        {
            rep.satisfied = false;
            rep.witness_j = j;
            return rep;
        }
    }
    return rep;
}

long long multiplicity(const IdealHandle &I, Rng rng, const Options &opt)
{
    if (!is_m_primary(I))
        throw Error("multiplicity requires an m-primary ideal");
    long long last_first = -1, last_second = -1;
    for (int round = 0; round < 2; ++round)
    {
        IdealHandle J1 = random_minimal_reduction(I, rng.fork(2 * round + 1), opt);
        IdealHandle J2 = random_minimal_reduction(I, rng.fork(2 * round + 2), opt);
        long long e1 = length(J1);
        long long e2 = length(J2);
        if (e1 == e2)
            return e1;
        last_first = e1;
        last_second = e2;
    }
    throw Error("multiplicity: independent samples disagree (" +
                std::to_string(last_first) + " vs " + std::to_string(last_second) + ")");
}

} // namespace corekit
