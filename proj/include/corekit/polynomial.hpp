/**
 * @file polynomial.hpp
 * @brief Sparse multivariate polynomials over a shared ring.
 *
 * Terms are kept strictly decreasing in the ring's monomial order with no
 * zero coefficients, so the leading term is terms().front().
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "corekit/ring.hpp"

namespace corekit
{

struct Term
{
    Monomial m;
    Coeff c;
};

class Polynomial
{
public:
    Polynomial() = default;
    explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

    // normalizes: sorts, merges equal monomials, strips zeros
    Polynomial(RingPtr ring, std::vector<Term> terms);

    const RingPtr &ring() const { return ring_; }
    const std::vector<Term> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    const Term &leading() const;
    const Monomial &leading_monomial() const { return leading().m; }
    const Coeff &leading_coeff() const { return leading().c; }
    unsigned degree() const; // max total degree of a term; 0 for the zero polynomial

    Polynomial operator+(const Polynomial &o) const;
    Polynomial operator-(const Polynomial &o) const;
    Polynomial operator*(const Polynomial &o) const;
    Polynomial operator-() const;

    Polynomial mul_term(const Monomial &m, const Coeff &c) const;
    Polynomial scale(const Coeff &c) const;

    bool equals(const Polynomial &o) const;

    // total order for deterministic container layouts: compares term lists
    // lexicographically by (monomial, coefficient-as-string)
    static int compare(const Polynomial &a, const Polynomial &b);

    std::string str() const;

private:
    void check_ring(const Polynomial &o) const;

    RingPtr ring_;
    std::vector<Term> terms_;
};

Polynomial zero_poly(const RingPtr &r);
Polynomial one_poly(const RingPtr &r);
Polynomial constant_poly(const RingPtr &r, const Coeff &c);
Polynomial var_poly(const RingPtr &r, size_t var);
Polynomial mono_poly(const RingPtr &r, const Monomial &m);

// parses integer-coefficient expressions over the ring's variables with
// + - * ^ and parentheses, e.g. "x^2*y - 3*(y + 1)"
Polynomial parse_poly(const RingPtr &r, const std::string &text);

// substitutes ring variables by polynomials of a target ring; images.size()
// must equal r->nvars()
Polynomial subst(const Polynomial &p, const RingPtr &target,
                 const std::vector<Polynomial> &images);

// injects along a variable map: var i of p's ring becomes var var_map[i]
// of the target ring
Polynomial inject(const Polynomial &p, const RingPtr &target,
                  const std::vector<size_t> &var_map);

// true when no term of p involves any variable from `vars`
bool free_of(const Polynomial &p, const std::vector<size_t> &vars);

// true when every term has the same total degree (the zero polynomial
// counts as homogeneous)
bool is_homogeneous(const Polynomial &p);

} // namespace corekit
