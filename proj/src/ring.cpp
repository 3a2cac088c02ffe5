#include "corekit/ring.hpp"

#include <atomic>
#include <set>

namespace corekit
{

RingPtr make_ring(std::vector<std::string> vars, MonomialOrder order, Field field)
{
    static std::atomic<uint64_t> counter{1};
    std::set<std::string> seen;
    for (const auto &v : vars)
    {
        if (v.empty())
            throw Error("empty variable name");
        if (!seen.insert(v).second)
            throw Error("duplicate variable name: " + v);
    }
    if (order.kind == MonomialOrder::Weighted && order.weights.size() != vars.size())
        throw Error("weight vector length does not match variable count");
    if (order.kind == MonomialOrder::Block && order.block > vars.size())
        throw Error("block size exceeds variable count");
    auto r = std::make_shared<PolyRing>();
    r->vars = std::move(vars);
    r->order = order;
    r->field = field;
    r->id = counter.fetch_add(1);
    return r;
}

} // namespace corekit
