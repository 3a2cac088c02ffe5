/**
 * @file monomial.hpp
 * @brief Exponent vectors and monomial orders.
 *
 * Supported orders: lex, graded reverse lex, elimination block orders
 * (grevlex within each block, first block dominant), and weighted orders
 * with grevlex tie-break.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace corekit
{

using Monomial = std::vector<unsigned>;

unsigned total_degree(const Monomial &m);
bool mono_divides(const Monomial &a, const Monomial &b); // a | b
Monomial mono_mul(const Monomial &a, const Monomial &b);
Monomial mono_div(const Monomial &a, const Monomial &b); // a / b, requires b | a
Monomial mono_lcm(const Monomial &a, const Monomial &b);
bool mono_is_one(const Monomial &m);

struct MonomialOrder
{
    enum Kind
    {
        Lex,
        GrevLex,
        Block,   // first `block` variables dominate, grevlex inside each part
        Weighted // weight vector dominates, grevlex tie-break
    };

    Kind kind = GrevLex;
    size_t block = 0;
    std::vector<long> weights;

    static MonomialOrder lex() { return {Lex, 0, {}}; }
    static MonomialOrder grevlex() { return {GrevLex, 0, {}}; }
    static MonomialOrder elimination(size_t first_block) { return {Block, first_block, {}}; }
    static MonomialOrder weighted(std::vector<long> w) { return {Weighted, 0, std::move(w)}; }

    // -1: a < b, 0: equal, 1: a > b
    int compare(const Monomial &a, const Monomial &b) const;

    bool operator==(const MonomialOrder &o) const
    {
        return kind == o.kind && block == o.block && weights == o.weights;
    }
};

} // namespace corekit
