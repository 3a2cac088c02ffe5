/**
 * @file syzygy.hpp
 * @brief First syzygies of a generator list via a module Groebner basis.
 *
 * The graph module in R^{1+n} generated by (g_i, e_i) is completed under a
 * position-over-term order whose function component dominates; basis
 * elements with vanishing function component are exactly a generating set
 * of the syzygy module of (g_1, ..., g_n).
 */
#pragma once

#include <vector>

#include "corekit/polynomial.hpp"

namespace corekit
{

struct SyzygyMatrix
{
    RingPtr ring;
    // each row r satisfies sum_i r[i] * gens[i] = 0
    std::vector<std::vector<Polynomial>> rows;

    size_t row_count() const { return rows.size(); }
};

// gens must be nonzero and share one ring
SyzygyMatrix syzygies(const std::vector<Polynomial> &gens);

} // namespace corekit
