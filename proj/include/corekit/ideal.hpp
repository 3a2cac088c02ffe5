/**
 * @file ideal.hpp
 * @brief Ideals in quotients R = P/(relations), with optional local-at-the-
 *        origin semantics for containment and equality.
 *
 * An IdealHandle stores its generators and lazily caches one reduced
 * Groebner basis of generators + relations; the cache is filled at most
 * once even under concurrent access. All operations below interpret
 * handles as ideals of R, i.e. relations are always included.
 *
 * Local semantics: B is contained in A locally at the maximal ideal m of
 * the origin iff for every generator b of B the transporter A : b contains
 * an element with a unit constant term. With the local flag off,
 * containment and equality are plain (global) ideal comparisons.
 */
#pragma once

#include <climits>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "corekit/groebner.hpp"
#include "corekit/polynomial.hpp"

namespace corekit
{

struct RingContext
{
    RingPtr ring;
    std::vector<Polynomial> relations;
    std::vector<Polynomial> relation_basis; // reduced basis of the relation ideal
    bool local = false;
    uint64_t id = 0;
};

using ContextPtr = std::shared_ptr<const RingContext>;

// local defaults to "relations present"
ContextPtr make_context(RingPtr ring, std::vector<Polynomial> relations,
                        std::optional<bool> local = std::nullopt);

class IdealHandle
{
public:
    IdealHandle() = default;
    IdealHandle(ContextPtr ctx, std::vector<Polynomial> gens);

    bool valid() const { return impl_ != nullptr; }
    const ContextPtr &context() const;
    const std::vector<Polynomial> &gens() const;

    // reduced basis of gens + relations; computed on first use
    const std::vector<Polynomial> &basis() const;

private:
    struct Impl
    {
        ContextPtr ctx;
        std::vector<Polynomial> gens;
        std::once_flag once;
        std::vector<Polynomial> basis;
    };
    std::shared_ptr<Impl> impl_;
};

IdealHandle make_ideal(const ContextPtr &ctx, std::vector<Polynomial> gens);
IdealHandle ideal_from_strings(const ContextPtr &ctx, const std::vector<std::string> &gens);
IdealHandle unit_ideal(const ContextPtr &ctx);
IdealHandle zero_ideal(const ContextPtr &ctx);
IdealHandle maximal_ideal(const ContextPtr &ctx); // generated by all variables

bool is_zero_ideal(const IdealHandle &h);
bool is_unit_ideal(const IdealHandle &h);

// ===== arithmetic =====

IdealHandle sum(const IdealHandle &a, const IdealHandle &b);
IdealHandle product(const IdealHandle &a, const IdealHandle &b);

// generators of the result are all n-fold products of a's generators;
// power(a, 0) is the unit ideal
IdealHandle power(const IdealHandle &a, unsigned n);

IdealHandle intersect(const IdealHandle &a, const IdealHandle &b);
IdealHandle colon(const IdealHandle &a, const IdealHandle &b);
IdealHandle saturate(const IdealHandle &a, const Polynomial &f);

// reference implementation of saturation by iterated transporters; used to
// cross-check the extra-variable method
IdealHandle saturate_iterated(const IdealHandle &a, const Polynomial &f);

// generators of the contraction to the subring without `drop`
IdealHandle eliminate(const IdealHandle &a, const std::vector<std::string> &drop);

// ===== measures =====

// Krull dimension of P/(gens + relations) read off the leading-term
// staircase; -1 for the unit ideal
int dimension(const IdealHandle &h);
int ring_dimension(const ContextPtr &ctx);

// dimension(relations) - dimension(gens + relations); errors on the unit ideal
int height(const IdealHandle &h);

// height, with the unit ideal mapped to INT_MAX instead of an error
int height_or_infinite(const IdealHandle &h);

// k-dimension of R/h for m-primary h: the number of standard monomials
long long length(const IdealHandle &h);

// largest total degree of a standard monomial of an m-primary ideal; for
// graded h every polynomial of higher degree reduces to zero, so the
// power m^(d+1) is contained in h
unsigned staircase_top_degree(const IdealHandle &h);

// colength of the localization at the origin, certified by agreement of
// consecutive truncation cutoffs; nullopt when no certificate appears at
// or below the cap (the colength is then presumed infinite)
std::optional<long long> local_colength(const IdealHandle &h, unsigned cap = 128);

// origin-primary representative h + m^N at the certified cutoff N: the
// localization at the origin is unchanged while every component away from
// the origin is discarded. Returned unchanged when no certificate exists
// or the ideal is graded.
IdealHandle localize_at_origin(const IdealHandle &h, unsigned cap = 128);

bool radical_member(const IdealHandle &h, const Polynomial &f);
bool is_m_primary(const IdealHandle &h);

// ===== containment and equality =====

bool contains_global(const IdealHandle &a, const IdealHandle &b); // b subset of a
bool equals_global(const IdealHandle &a, const IdealHandle &b);
bool local_contains(const IdealHandle &a, const IdealHandle &b);

// context-sensitive: local semantics when the context's local flag is set
bool contains(const IdealHandle &a, const IdealHandle &b);
bool ideal_equals(const IdealHandle &a, const IdealHandle &b);

// ===== raw helpers shared with other components =====

// intersection of the P-ideals generated by the two lists
std::vector<Polynomial> intersect_raw(const RingPtr &R, const std::vector<Polynomial> &A,
                                      const std::vector<Polynomial> &B);

// an extension of R whose first variables are fresh, ordered by an
// elimination block order; fresh names are decorated to avoid clashes
RingPtr prefix_extension(const RingPtr &R, size_t count, const std::string &stem);

// drops the first `prefix` variables of ext: computes a basis of the ideal
// generated by `polys` in ext, keeps the elements free of the prefix
// block, and maps them into `target` (whose variables are ext's suffix)
std::vector<Polynomial> eliminate_prefix(const RingPtr &ext, std::vector<Polynomial> polys,
                                         size_t prefix, const RingPtr &target);

// iterated products of a's generators against the cached basis of the
// previous power; ideal-equal to power(a, n) with far fewer generators
class PowerCache
{
public:
    explicit PowerCache(IdealHandle a);
    const IdealHandle &get(unsigned n);

private:
    IdealHandle a_;
    std::vector<IdealHandle> cache_;
};

// generated by products of a's generators with basis elements of b
IdealHandle product_compact(const IdealHandle &a, const IdealHandle &b);

} // namespace corekit
