/**
 * @file groebner.hpp
 * @brief Buchberger's algorithm and normal forms.
 *
 * Pair selection follows the normal strategy: minimal lcm degree, ties
 * broken by the ring order on the lcm and then by generator index. Both
 * the coprime-lcm and the chain criterion prune pairs. Output bases are
 * reduced and canonically scaled, hence unique for the ideal and order:
 * monic over prime fields, integer-primitive with positive leading
 * coefficient over the rationals, sorted descending by leading monomial.
 */
#pragma once

#include <vector>

#include "corekit/polynomial.hpp"

namespace corekit
{

// fully reduces every term of f against G; the reducer for a term is the
// first list entry whose leading monomial divides it
Polynomial normal_form(const Polynomial &f, const std::vector<Polynomial> &G);

// additionally returns cofactors: f = sum_i cof[i]*G[i] + remainder
Polynomial normal_form_tracked(const Polynomial &f, const std::vector<Polynomial> &G,
                               std::vector<Polynomial> &cof);

// monic over F_p; over QQ clears denominators, divides by content, and
// makes the leading coefficient positive
Polynomial canonical_scale(const Polynomial &p);

std::vector<Polynomial> groebner_basis(const std::vector<Polynomial> &gens);

// membership against a Groebner basis
bool reduces_to_zero(const Polynomial &f, const std::vector<Polynomial> &basis);

// basis == {1}, i.e. the whole ring
bool basis_is_unit(const std::vector<Polynomial> &basis);

// exact division of f by g (f must be a polynomial multiple of g)
Polynomial exact_divide(const Polynomial &f, const Polynomial &g);

} // namespace corekit
