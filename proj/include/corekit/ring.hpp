/**
 * @file ring.hpp
 * @brief Polynomial rings: a variable list, a monomial order, a coefficient
 *        field. Rings are immutable and shared; polynomials carry a pointer
 *        to their ring so cross-ring arithmetic is caught at run time.
 */
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "corekit/field.hpp"
#include "corekit/monomial.hpp"

namespace corekit
{

struct PolyRing
{
    std::vector<std::string> vars;
    MonomialOrder order;
    Field field;
    uint64_t id = 0;

    size_t nvars() const { return vars.size(); }

    // -1 when the name is not a variable of this ring
    int var_index(const std::string &name) const
    {
        for (size_t i = 0; i < vars.size(); ++i)
        {
            if (vars[i] == name)
                return (int)i;
        }
        return -1;
    }
};

using RingPtr = std::shared_ptr<const PolyRing>;

RingPtr make_ring(std::vector<std::string> vars, MonomialOrder order, Field field);

} // namespace corekit
