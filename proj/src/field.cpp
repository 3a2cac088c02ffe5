#include "corekit/field.hpp"

namespace corekit
{

bool is_prime_u64(uint64_t n)
{
    if (n < 2)
        return false;
    for (uint64_t d = 2; d * d <= n; ++d)
    {
        if (n % d == 0)
            return false;
    }
    return true;
}

Field::Field(uint64_t p) : kind_(FieldKind::Prime), p_(p)
{
    if (p >= (1ULL << 31))
        throw Error("field characteristic too large: " + std::to_string(p));
    if (!is_prime_u64(p))
        throw Error("field characteristic must be prime: " + std::to_string(p));
}

Coeff Field::zero() const
{
    return kind_ == FieldKind::Prime ? Coeff(uint64_t{0}) : Coeff(mpq_class(0));
}

Coeff Field::one() const
{
    return kind_ == FieldKind::Prime ? Coeff(uint64_t{1}) : Coeff(mpq_class(1));
}

Coeff Field::from_int(long v) const
{
    if (kind_ == FieldKind::Rationals)
        return Coeff(mpq_class(v));
    long long r = v % (long long)p_;
    if (r < 0)
        r += (long long)p_;
    return Coeff((uint64_t)r);
}

Coeff Field::from_mpz(const mpz_class &v) const
{
    if (kind_ == FieldKind::Rationals)
        return Coeff(mpq_class(v));
    mpz_class r = v % (long)p_;
    if (r < 0)
        r += (long)p_;
    return Coeff((uint64_t)r.get_ui());
}

bool Field::is_zero(const Coeff &a) const
{
    return kind_ == FieldKind::Prime ? a.fp() == 0 : a.rat() == 0;
}

bool Field::is_one(const Coeff &a) const
{
    return kind_ == FieldKind::Prime ? a.fp() == 1 : a.rat() == 1;
}

bool Field::eq(const Coeff &a, const Coeff &b) const
{
    return kind_ == FieldKind::Prime ? a.fp() == b.fp() : a.rat() == b.rat();
}

Coeff Field::add(const Coeff &a, const Coeff &b) const
{
    if (kind_ == FieldKind::Prime)
    {
        uint64_t s = a.fp() + b.fp();
        if (s >= p_)
            s -= p_;
        return Coeff(s);
    }
    return Coeff(mpq_class(a.rat() + b.rat()));
}

Coeff Field::sub(const Coeff &a, const Coeff &b) const
{
    if (kind_ == FieldKind::Prime)
    {
        uint64_t s = a.fp() + p_ - b.fp();
        if (s >= p_)
            s -= p_;
        return Coeff(s);
    }
    return Coeff(mpq_class(a.rat() - b.rat()));
}

Coeff Field::mul(const Coeff &a, const Coeff &b) const
{
    if (kind_ == FieldKind::Prime)
    {
        unsigned __int128 prod = (unsigned __int128)a.fp() * b.fp();
        return Coeff((uint64_t)(prod % p_));
    }
    return Coeff(mpq_class(a.rat() * b.rat()));
}

Coeff Field::neg(const Coeff &a) const
{
    if (kind_ == FieldKind::Prime)
        return Coeff(a.fp() == 0 ? uint64_t{0} : p_ - a.fp());
    return Coeff(mpq_class(-a.rat()));
}

Coeff Field::inv(const Coeff &a) const
{
    if (kind_ == FieldKind::Prime)
    {
        if (a.fp() == 0)
            throw Error("division by zero in F_" + std::to_string(p_));
        // extended Euclid on (a, p)
        int64_t t = 0, newt = 1;
        int64_t r = (int64_t)p_, newr = (int64_t)a.fp();
        while (newr != 0)
        {
            int64_t q = r / newr;
            int64_t tmp = t - q * newt;
            t = newt;
            newt = tmp;
            tmp = r - q * newr;
            r = newr;
            newr = tmp;
        }
        if (t < 0)
            t += (int64_t)p_;
        return Coeff((uint64_t)t);
    }
    if (a.rat() == 0)
        throw Error("division by zero in QQ");
    return Coeff(mpq_class(1 / a.rat()));
}

std::string Field::str(const Coeff &a) const
{
    if (kind_ == FieldKind::Prime)
        return std::to_string(a.fp());
    return a.rat().get_str();
}

std::string Field::name() const
{
    if (kind_ == FieldKind::Prime)
        return "FF(" + std::to_string(p_) + ")";
    return "QQ";
}

} // namespace corekit
