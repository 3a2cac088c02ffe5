#include "corekit/groebner.hpp"

#include <algorithm>
#include <set>

namespace corekit
{

Polynomial normal_form(const Polynomial &f, const std::vector<Polynomial> &G)
{
    if (f.is_zero())
        return f;
    const RingPtr &R = f.ring();
    const Field &F = R->field;
    Polynomial p = f;
    Polynomial remainder(R);
    while (!p.is_zero())
    {
        const Term &lt = p.leading();
        const Polynomial *red = nullptr;
        for (const auto &g : G)
        {
            if (!g.is_zero() && mono_divides(g.leading_monomial(), lt.m))
            {
                red = &g;
                break;
            }
        }
        if (red)
        {
            Monomial q = mono_div(lt.m, red->leading_monomial());
            Coeff c = F.div(lt.c, red->leading_coeff());
            p = p - red->mul_term(q, c);
        }
        else
        {
            // move the irreducible leading term to the remainder
            remainder = remainder + Polynomial(R, {lt});
            p = p - Polynomial(R, {lt});
        }
    }
    return remainder;
}

Polynomial normal_form_tracked(const Polynomial &f, const std::vector<Polynomial> &G,
                               std::vector<Polynomial> &cof)
{
    const RingPtr &R = f.ring();
    const Field &F = R->field;
    cof.assign(G.size(), Polynomial(R));
    Polynomial p = f;
    Polynomial remainder(R);
    while (!p.is_zero())
    {
        const Term &lt = p.leading();
        size_t ri = G.size();
        for (size_t i = 0; i < G.size(); ++i)
        {
            if (!G[i].is_zero() && mono_divides(G[i].leading_monomial(), lt.m))
            {
                ri = i;
                break;
            }
        }
        if (ri < G.size())
        {
            Monomial q = mono_div(lt.m, G[ri].leading_monomial());
            Coeff c = F.div(lt.c, G[ri].leading_coeff());
            p = p - G[ri].mul_term(q, c);
            cof[ri] = cof[ri] + Polynomial(R, {{q, c}});
        }
        else
        {
            remainder = remainder + Polynomial(R, {lt});
            p = p - Polynomial(R, {lt});
        }
    }
    return remainder;
}

Polynomial canonical_scale(const Polynomial &p)
{
    if (p.is_zero())
        return p;
    const Field &F = p.ring()->field;
    if (F.kind() == FieldKind::Prime)
        return p.scale(F.inv(p.leading_coeff()));

    mpz_class den_lcm(1);
    for (const auto &t : p.terms())
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
                t.c.rat().get_den().get_mpz_t());
    mpz_class content(0);
    for (const auto &t : p.terms())
    {
        mpz_class num = t.c.rat().get_num() * (den_lcm / t.c.rat().get_den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), num.get_mpz_t());
    }
    mpq_class factor(den_lcm, content);
    factor.canonicalize();
    if (p.leading_coeff().rat() < 0)
        factor = -factor;
    return p.scale(Coeff(factor));
}

bool reduces_to_zero(const Polynomial &f, const std::vector<Polynomial> &basis)
{
    return normal_form(f, basis).is_zero();
}

bool basis_is_unit(const std::vector<Polynomial> &basis)
{
    return basis.size() == 1 && !basis[0].is_zero() &&
           mono_is_one(basis[0].leading_monomial());
}

Polynomial exact_divide(const Polynomial &f, const Polynomial &g)
{
    if (g.is_zero())
        throw Error("exact division by zero");
    const RingPtr &R = f.ring();
    const Field &F = R->field;
    Polynomial p = f;
    Polynomial quotient(R);
    while (!p.is_zero())
    {
        const Term &lt = p.leading();
        if (!mono_divides(g.leading_monomial(), lt.m))
            throw Error("inexact polynomial division");
        Monomial q = mono_div(lt.m, g.leading_monomial());
        Coeff c = F.div(lt.c, g.leading_coeff());
        p = p - g.mul_term(q, c);
        quotient = quotient + Polynomial(R, {{std::move(q), std::move(c)}});
    }
    return quotient;
}

namespace
{

Polynomial s_polynomial(const Polynomial &f, const Polynomial &g)
{
    const Field &F = f.ring()->field;
    Monomial l = mono_lcm(f.leading_monomial(), g.leading_monomial());
    Polynomial a = f.mul_term(mono_div(l, f.leading_monomial()), F.inv(f.leading_coeff()));
    Polynomial b = g.mul_term(mono_div(l, g.leading_monomial()), F.inv(g.leading_coeff()));
    return a - b;
}

struct Pair
{
    unsigned deg;
    Monomial lcm;
    size_t i, j;
};

struct PairLess
{
    const MonomialOrder *ord;
    bool operator()(const Pair &a, const Pair &b) const
    {
        if (a.deg != b.deg)
            return a.deg < b.deg;
        int c = ord->compare(a.lcm, b.lcm);
        if (c != 0)
            return c < 0;
        if (a.i != b.i)
            return a.i < b.i;
        return a.j < b.j;
    }
};

} // namespace

std::vector<Polynomial> groebner_basis(const std::vector<Polynomial> &gens)
{
    RingPtr R;
    std::vector<Polynomial> basis;
    for (const auto &g : gens)
    {
        if (!R)
            R = g.ring();
        else if (g.ring()->id != R->id)
            throw Error("generators from different rings");
        if (!g.is_zero())
            basis.push_back(canonical_scale(g));
    }
    if (basis.empty())
        return {};

    std::set<Pair, PairLess> queue(PairLess{&R->order});
    std::set<std::pair<size_t, size_t>> pending;
    auto push_pairs = [&](size_t j)
    {
        for (size_t i = 0; i < j; ++i)
        {
            Monomial l = mono_lcm(basis[i].leading_monomial(), basis[j].leading_monomial());
            queue.insert({total_degree(l), l, i, j});
            pending.insert({i, j});
        }
    };
    for (size_t j = 0; j < basis.size(); ++j)
        push_pairs(j);

    while (!queue.empty())
    {
        Pair pr = *queue.begin();
        queue.erase(queue.begin());
        pending.erase({pr.i, pr.j});

        const Monomial &li = basis[pr.i].leading_monomial();
        const Monomial &lj = basis[pr.j].leading_monomial();
        if (pr.lcm == mono_mul(li, lj))
            continue; // coprime leading monomials
        bool chained = false;
        for (size_t k = 0; k < basis.size() && !chained; ++k)
        {
            if (k == pr.i || k == pr.j)
                continue;
            if (mono_divides(basis[k].leading_monomial(), pr.lcm) &&
                !pending.count({std::min(pr.i, k), std::max(pr.i, k)}) &&
                !pending.count({std::min(pr.j, k), std::max(pr.j, k)}))
                chained = true;
        }
        if (chained)
            continue;

        Polynomial r = normal_form(s_polynomial(basis[pr.i], basis[pr.j]), basis);
        if (!r.is_zero())
        {
            basis.push_back(canonical_scale(r));
            push_pairs(basis.size() - 1);
        }
    }

    // minimalize: drop elements whose leading monomial another element divides
    std::vector<Polynomial> minimal;
    for (size_t i = 0; i < basis.size(); ++i)
    {
        bool redundant = false;
        for (size_t j = 0; j < basis.size() && !redundant; ++j)
        {
            if (i == j)
                continue;
            const Monomial &li = basis[i].leading_monomial();
            const Monomial &lj = basis[j].leading_monomial();
            if (mono_divides(lj, li) && (li != lj || j < i))
                redundant = true;
        }
        if (!redundant)
            minimal.push_back(basis[i]);
    }

    // tail-reduce each element against the others
    std::vector<Polynomial> reduced;
    for (size_t i = 0; i < minimal.size(); ++i)
    {
        std::vector<Polynomial> others;
        for (size_t j = 0; j < minimal.size(); ++j)
        {
            if (j != i)
                others.push_back(minimal[j]);
        }
        reduced.push_back(canonical_scale(normal_form(minimal[i], others)));
    }
    std::sort(reduced.begin(), reduced.end(),
              [&](const Polynomial &a, const Polynomial &b)
              { return R->order.compare(a.leading_monomial(), b.leading_monomial()) > 0; });
    return reduced;
}

} // namespace corekit
