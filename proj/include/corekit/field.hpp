/**
 * @file field.hpp
 * @brief Coefficient fields: the rationals (exact, GMP-backed) and prime
 *        fields F_p for word-sized primes.
 */
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace corekit
{

class Error : public std::runtime_error
{
public:
    explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

enum class FieldKind
{
    Rationals,
    Prime
};

// A field element. Which member is active is determined by the owning
// Field; mixing elements across fields is a programming error.
class Coeff
{
public:
    Coeff() : v_(uint64_t{0}) {}
    explicit Coeff(uint64_t r) : v_(r) {}
    explicit Coeff(mpq_class q) : v_(std::move(q)) {}

    uint64_t fp() const { return std::get<uint64_t>(v_); }
    const mpq_class &rat() const { return std::get<mpq_class>(v_); }
    mpq_class &rat() { return std::get<mpq_class>(v_); }

private:
    std::variant<uint64_t, mpq_class> v_;
};

class Field
{
public:
    // Rationals
    Field() : kind_(FieldKind::Rationals), p_(0) {}

    // F_p; p must be prime and fit in 31 bits
    explicit Field(uint64_t p);

    FieldKind kind() const { return kind_; }
    uint64_t characteristic() const { return p_; }
    bool operator==(const Field &o) const { return kind_ == o.kind_ && p_ == o.p_; }

    Coeff zero() const;
    Coeff one() const;
    Coeff from_int(long v) const;
    Coeff from_mpz(const mpz_class &v) const;

    bool is_zero(const Coeff &a) const;
    bool is_one(const Coeff &a) const;
    bool eq(const Coeff &a, const Coeff &b) const;

    Coeff add(const Coeff &a, const Coeff &b) const;
    Coeff sub(const Coeff &a, const Coeff &b) const;
    Coeff mul(const Coeff &a, const Coeff &b) const;
    Coeff neg(const Coeff &a) const;
    Coeff inv(const Coeff &a) const;
    Coeff div(const Coeff &a, const Coeff &b) const { return mul(a, inv(b)); }

    // canonical rendering: F_p residues as 0..p-1, rationals as num or num/den
    std::string str(const Coeff &a) const;

    std::string name() const;

private:
    FieldKind kind_;
    uint64_t p_;
};

bool is_prime_u64(uint64_t n);

} // namespace corekit
