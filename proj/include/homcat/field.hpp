#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "homcat/error.hpp"

namespace homcat {

using Scalar = mpq_class;
using Vec = std::vector<Scalar>;

// Exact coefficient field: the rationals, or F_p for a machine-word prime p.
// Scalars are always stored as canonical mpq values; over F_p they are the
// residues 0..p-1 with denominator 1.
class Field {
public:
    static Field rationals() { return Field(0); }
    static Field prime_field(unsigned long p)
    {
        require(is_prime(p), Errc::invalid_argument,
                "PrimeField modulus must be prime, got " + std::to_string(p));
        // residue kernels run on 64-bit words with p^2 headroom
        require(p < (1ul << 31), Errc::invalid_argument, "PrimeField modulus must fit 31 bits");
        return Field(p);
    }

    bool is_rationals() const { return p_ == 0; }
    unsigned long characteristic() const { return p_; }

    bool operator==(const Field& o) const { return p_ == o.p_; }
    bool operator!=(const Field& o) const { return p_ != o.p_; }

    // canonical representative of an arbitrary rational in this field
    Scalar reduce(const Scalar& x) const
    {
        if (p_ == 0)
            return x; // mpq_class keeps fractions reduced
        mpz_class num = x.get_num(), den = x.get_den();
        mpz_class p(static_cast<unsigned long>(p_));
        num %= p;
        if (num < 0)
            num += p;
        if (den != 1) {
            mpz_class dinv;
            mpz_class d = den % p;
            if (d < 0)
                d += p;
            require(mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), p.get_mpz_t()) != 0,
                    Errc::invalid_argument, "denominator not invertible mod p");
            num = (num * dinv) % p;
        }
        return Scalar(num);
    }

    Scalar add(const Scalar& a, const Scalar& b) const { return reduce(a + b); }
    Scalar sub(const Scalar& a, const Scalar& b) const { return reduce(a - b); }
    Scalar mul(const Scalar& a, const Scalar& b) const { return reduce(a * b); }
    Scalar neg(const Scalar& a) const { return reduce(-a); }

    Scalar inv(const Scalar& a) const
    {
        require(a != 0, Errc::invalid_argument, "division by zero");
        if (p_ == 0)
            return Scalar(1) / a;
        mpz_class p(static_cast<unsigned long>(p_));
        mpz_class v = reduce(a).get_num(), r;
        mpz_invert(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
        return Scalar(r);
    }

    Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

    Scalar from_string(const std::string& s) const
    {
        try {
            Scalar x(s);
            x.canonicalize();
            return reduce(x);
        } catch (const std::invalid_argument&) {
            fail(Errc::parse_error, "bad field element: '" + s + "'");
        }
    }

    std::string to_string() const
    {
        return p_ == 0 ? std::string("Q") : "F" + std::to_string(p_);
    }

    static bool is_prime(unsigned long n)
    {
        if (n < 2)
            return false;
        for (unsigned long d = 2; d * d <= n; ++d)
            if (n % d == 0)
                return false;
        return true;
    }

private:
    explicit Field(unsigned long p) : p_(p) {}
    unsigned long p_;
};

inline std::string scalar_to_string(const Scalar& x)
{
    return x.get_str();
}

} // namespace homcat
