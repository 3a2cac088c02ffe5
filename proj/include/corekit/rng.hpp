/**
 * @file rng.hpp
 * @brief Deterministic random streams derived from a single session seed.
 *
 * Every randomized operation draws from a stream named by (seed, path...).
 * Streams are stable across platforms and thread schedules, so reports are
 * byte-identical for a fixed seed.
 */
#pragma once

#include <cstdint>
#include <initializer_list>

namespace corekit
{

inline uint64_t splitmix64(uint64_t &state)
{
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng
{
public:
    explicit Rng(uint64_t seed = 0) : state_(seed)
    {
        // burn-in decorrelates nearby seeds
        next();
        next();
    }

    static Rng stream(uint64_t seed, std::initializer_list<uint64_t> path)
    {
        uint64_t s = seed ^ 0x8f1bbcdcbfa53e0bULL;
        for (uint64_t elem : path)
        {
            s = splitmix64(s) ^ (elem * 0xd1342543de82ef95ULL);
        }
        return Rng(s);
    }

    Rng fork(uint64_t tag)
    {
        uint64_t s = splitmix64(state_) ^ (tag * 0xd1342543de82ef95ULL);
        return Rng(s);
    }

    uint64_t next() { return splitmix64(state_); }

    // uniform in [0, n), rejection sampled; n > 0
    uint64_t below(uint64_t n)
    {
        uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t v;
        do
        {
            v = next();
        } while (v >= limit);
        return v % n;
    }

    // uniform in [lo, hi] inclusive
    int64_t range(int64_t lo, int64_t hi)
    {
        return lo + (int64_t)below((uint64_t)(hi - lo + 1));
    }

private:
    uint64_t state_;
};

} // namespace corekit
