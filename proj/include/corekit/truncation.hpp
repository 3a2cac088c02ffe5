/**
 * @file truncation.hpp
 * @brief Finite-dimensional replay of ideal arithmetic: all computations
 *        happen in the vector space R/(relations + m^N), so power, product,
 *        intersection and colon reduce to exact linear algebra.
 *
 * For m-primary ideals the replay is faithful once m^N lies inside every
 *  ideal involved; that containment is certified by comparing standard-
 * monomial counts at cutoffs N and 2N, and N is doubled until the counts
 * agree. The replay shares only polynomial arithmetic and normal forms
 * with the basis-driven path, so agreement is a meaningful cross-check of
 * the elimination and division machinery.
 */
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "corekit/ideal.hpp"

namespace corekit
{

// coordinates over the model basis: (column, coefficient) sorted by column
using SparseVec = std::vector<std::pair<size_t, Coeff>>;

class TruncationModel
{
public:
    TruncationModel(ContextPtr ctx, unsigned N);

    const ContextPtr &context() const { return ctx_; }
    unsigned cutoff() const { return N_; }
    size_t dim() const { return basis_.size(); }
    const std::vector<Monomial> &standard_monomials() const { return basis_; }
    const Monomial &monomial_at(size_t i) const { return basis_[i]; }

    // remainder modulo relations + m^N; every surviving monomial is standard
    Polynomial nf(const Polynomial &p) const;
    SparseVec to_vec(const Polynomial &p) const;

private:
    ContextPtr ctx_;
    unsigned N_;
    bool pure_truncate_; // no relations: nf just drops terms of degree >= N
    std::vector<Polynomial> modulus_;
    std::vector<Monomial> basis_; // descending in the ring order
    std::map<Monomial, size_t> index_;
};

// subspace kept in reduced row-echelon form with monic pivots; the row set
// is a canonical function of the spanned space
class Space
{
public:
    explicit Space(Field field) : field_(field) {}

    // returns true when the row increased the dimension
    bool insert(SparseVec v);
    size_t dim() const { return rows_.size(); }
    bool contains(SparseVec v) const;
    const std::map<size_t, SparseVec> &rows() const { return rows_; }

private:
    void reduce(SparseVec &v) const;

    Field field_;
    std::map<size_t, SparseVec> rows_; // pivot column -> row
};

bool space_equal(const Space &a, const Space &b);

// span of the images of all standard-monomial multiples of the generators,
// i.e. the image of the generated ideal in the model
Space ideal_image(const TruncationModel &model, const std::vector<Polynomial> &gens);

Space space_intersect(const TruncationModel &model, const Space &a, const Space &b);

// {v in the model : divisor * v lies in a}
Space space_colon(const TruncationModel &model, const Space &a, const Polynomial &divisor);

// certified origin-primary model of the ideal spanned by gens: the cutoff
// is the first schedule point where the truncation colengths at N and N+1
// agree, which forces m^N into the localization at the origin (Nakayama),
// so the image is exact there. nullopt when no certificate appears at or
// below the cap or the model dimension would exceed the budget.
struct OriginModel
{
    unsigned cutoff;
    long long colength;
    TruncationModel model;
    Space image;
};

std::optional<OriginModel> origin_model(const ContextPtr &ctx,
                                        const std::vector<Polynomial> &gens, unsigned cap);

// colength of gens + m^N recomputed in a mirror ring over F_p; ranks can
// only drop under reduction, so the value is an upper bound for the
// rational colength. Requires a relation-free rational context; nullopt
// when a denominator vanishes mod p
std::optional<long long> colength_mod_p(const ContextPtr &ctx,
                                        const std::vector<Polynomial> &gens, unsigned N,
                                        uint64_t p);

// minimal generators of the ideal spanned by an echelon subspace together
// with m^cutoff: the rows and the cutoff-degree monomials form a Groebner
// basis of that ideal, and leading-term divisibility prunes it
std::vector<Polynomial> space_ideal_generators(const TruncationModel &model, const Space &s);

// colon of localizations at the origin, returned as the origin-primary
// contraction (A_m : B_m) meet R. Falls back to the plain colon when the
// context is not local, when both sides are graded (a graded colon equals
// its own contraction), or when the dividend has no certificate.
IdealHandle local_colon(const IdealHandle &a, const IdealHandle &b);

// ===== scripted replay =====

enum class TraceOp
{
    Power,
    Product,
    Intersect,
    Colon
};

struct TraceStep
{
    TraceOp op;
    std::vector<IdealHandle> inputs; // one for Power, two otherwise
    unsigned exponent = 0;           // Power only
    IdealHandle claimed;             // result of the basis-driven path
    std::string label;
};

struct StepVerdict
{
    std::string label;
    bool agree = false;
    size_t model_dim_claimed = 0;
    size_t model_dim_computed = 0;
};

struct OracleReport
{
    unsigned N_start = 0;
    unsigned N_used = 0;
    int escalations = 0;
    bool all_agree = false;
    std::vector<StepVerdict> steps;
};

// verifies every step of the trace in one model; throws on non-m-primary
// input or claimed ideals, or when the cutoff fails to stabilize
OracleReport truncation_oracle(const std::vector<TraceStep> &steps);

} // namespace corekit
