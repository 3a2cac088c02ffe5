#include "corekit/syzygy.hpp"

#include <algorithm>
#include <set>

#include "corekit/groebner.hpp"

namespace corekit
{

namespace
{

struct ModTerm
{
    size_t comp;
    Monomial m;
    Coeff c;
};

// terms sorted by: component ascending, then ring order descending; the
// leading term is front(), so lower components dominate
class ModPoly
{
public:
    ModPoly() = default;
    explicit ModPoly(RingPtr r) : ring_(std::move(r)) {}
    ModPoly(RingPtr r, std::vector<ModTerm> terms) : ring_(std::move(r))
    {
        const auto &ord = ring_->order;
        std::sort(terms.begin(), terms.end(),
                  [&](const ModTerm &a, const ModTerm &b)
                  {
                      if (a.comp != b.comp)
                          return a.comp < b.comp;
                      return ord.compare(a.m, b.m) > 0;
                  });
        const Field &F = ring_->field;
        for (auto &t : terms)
        {
            if (!terms_.empty() && terms_.back().comp == t.comp && terms_.back().m == t.m)
                terms_.back().c = F.add(terms_.back().c, t.c);
            else
                terms_.push_back(std::move(t));
        }
        terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                                    [&](const ModTerm &t) { return F.is_zero(t.c); }),
                     terms_.end());
    }

    const RingPtr &ring() const { return ring_; }
    bool is_zero() const { return terms_.empty(); }
    const std::vector<ModTerm> &terms() const { return terms_; }
    const ModTerm &leading() const { return terms_.front(); }

    ModPoly mul_term(const Monomial &m, const Coeff &c) const
    {
        const Field &F = ring_->field;
        ModPoly r(ring_);
        for (const auto &t : terms_)
            r.terms_.push_back({t.comp, mono_mul(t.m, m), F.mul(t.c, c)});
        return r;
    }

    ModPoly sub(const ModPoly &o) const
    {
        std::vector<ModTerm> all = terms_;
        const Field &F = ring_->field;
        for (const auto &t : o.terms_)
            all.push_back({t.comp, t.m, F.neg(t.c)});
        return ModPoly(ring_, std::move(all));
    }

private:
    RingPtr ring_;
    std::vector<ModTerm> terms_;
};

ModPoly mod_normal_form(const ModPoly &f, const std::vector<ModPoly> &G)
{
    const RingPtr &R = f.ring();
    const Field &F = R->field;
    ModPoly p = f;
    std::vector<ModTerm> remainder;
    while (!p.is_zero())
    {
        const ModTerm &lt = p.leading();
        const ModPoly *red = nullptr;
        for (const auto &g : G)
        {
            const ModTerm &gl = g.leading();
            if (gl.comp == lt.comp && mono_divides(gl.m, lt.m))
            {
                red = &g;
                break;
            }
        }
        if (red)
        {
            Monomial q = mono_div(lt.m, red->leading().m);
            Coeff c = F.div(lt.c, red->leading().c);
            p = p.sub(red->mul_term(q, c));
        }
        else
        {
            remainder.push_back(lt);
            p = p.sub(ModPoly(R, {lt}));
        }
    }
    return ModPoly(R, std::move(remainder));
}

struct ModPair
{
    unsigned deg;
    Monomial lcm;
    size_t i, j;
};

} // namespace

SyzygyMatrix syzygies(const std::vector<Polynomial> &gens)
{
    if (gens.empty())
        throw Error("syzygies of an empty generator list");
    RingPtr R = gens[0].ring();
    const Field &F = R->field;
    size_t n = gens.size();
    for (const auto &g : gens)
    {
        if (g.is_zero())
            throw Error("syzygies requires nonzero generators");
        if (g.ring()->id != R->id)
            throw Error("generators from different rings");
    }

    std::vector<ModPoly> basis;
    for (size_t i = 0; i < n; ++i)
    {
        std::vector<ModTerm> ts;
        for (const auto &t : gens[i].terms())
            ts.push_back({0, t.m, t.c});
        ts.push_back({i + 1, Monomial(R->nvars(), 0), F.one()});
        basis.emplace_back(R, std::move(ts));
    }

    auto pair_less = [&](const ModPair &a, const ModPair &b)
    {
        if (a.deg != b.deg)
            return a.deg < b.deg;
        int c = R->order.compare(a.lcm, b.lcm);
        if (c != 0)
            return c < 0;
        if (a.i != b.i)
            return a.i < b.i;
        return a.j < b.j;
    };
    std::set<ModPair, decltype(pair_less)> queue(pair_less);
    auto push_pairs = [&](size_t j)
    {
        for (size_t i = 0; i < j; ++i)
        {
            if (basis[i].leading().comp != basis[j].leading().comp)
                continue;
            Monomial l = mono_lcm(basis[i].leading().m, basis[j].leading().m);
            queue.insert({total_degree(l), l, i, j});
        }
    };
    for (size_t j = 0; j < basis.size(); ++j)
        push_pairs(j);

    while (!queue.empty())
    {
        ModPair pr = *queue.begin();
        queue.erase(queue.begin());
        const ModPoly &u = basis[pr.i];
        const ModPoly &v = basis[pr.j];
        ModPoly a = u.mul_term(mono_div(pr.lcm, u.leading().m), F.inv(u.leading().c));
        ModPoly b = v.mul_term(mono_div(pr.lcm, v.leading().m), F.inv(v.leading().c));
        ModPoly r = mod_normal_form(a.sub(b), basis);
        if (!r.is_zero())
        {
            basis.push_back(r);
            push_pairs(basis.size() - 1);
        }
    }

    SyzygyMatrix M;
    M.ring = R;
    for (const auto &e : basis)
    {
        if (e.leading().comp == 0)
            continue;
        std::vector<Polynomial> row(n, Polynomial(R));
        for (const auto &t : e.terms())
            row[t.comp - 1] = row[t.comp - 1] + Polynomial(R, {{t.m, t.c}});
        M.rows.push_back(std::move(row));
    }

    // canonical row scaling: over QQ clear denominators and content across
    // the whole row, sign fixed by the first nonzero entry
    for (auto &row : M.rows)
    {
        if (F.kind() == FieldKind::Prime)
        {
            for (auto &e : row)
            {
                if (!e.is_zero())
                {
                    Coeff s = F.inv(e.leading_coeff());
                    for (auto &f : row)
                        f = f.scale(s);
                    break;
                }
            }
        }
        else
        {
            mpz_class den(1), content(0);
            for (const auto &e : row)
            {
                for (const auto &t : e.terms())
                    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(),
                            t.c.rat().get_den().get_mpz_t());
            }
            for (const auto &e : row)
            {
                for (const auto &t : e.terms())
                {
                    mpz_class num = t.c.rat().get_num() * (den / t.c.rat().get_den());
                    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), num.get_mpz_t());
                }
            }
            if (content != 0)
            {
                mpq_class factor(den, content);
                factor.canonicalize();
                for (const auto &e : row)
                {
                    if (!e.is_zero())
                    {
                        if (e.leading_coeff().rat() * factor < 0)
                            factor = -factor;
                        break;
                    }
                }
                for (auto &e : row)
                    e = e.scale(Coeff(factor));
            }
        }
    }

    // canonical row order: column-wise, a nonzero entry before a zero one,
    // larger polynomials first
    std::sort(M.rows.begin(), M.rows.end(),
              [n](const std::vector<Polynomial> &a, const std::vector<Polynomial> &b)
              {
                  for (size_t i = 0; i < n; ++i)
                  {
                      bool az = a[i].is_zero();
                      bool bz = b[i].is_zero();
                      if (az != bz)
                          return !az;
                      if (!az)
                      {
                          int c = Polynomial::compare(a[i], b[i]);
                          if (c != 0)
                              return c > 0;
                      }
                  }
                  return false;
              });
    return M;
}

} // namespace corekit
