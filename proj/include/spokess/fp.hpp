#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spokess/error.hpp"

namespace spokess {

inline bool is_prime(std::uint32_t n)
{
    if (n < 2)
        return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

// Arithmetic mod a small prime. Values are kept in [0, p).
class PrimeField {
public:
    explicit PrimeField(std::uint32_t p = 3) : p_(p)
    {
        if (!is_prime(p) || p > 65521)
            throw config_error("modulus " + std::to_string(p) + " is not a supported prime");
        inv_.assign(p, 0);
        for (std::uint32_t x = 1; x < p; ++x)
            inv_[x] = pow(x, p - 2);
    }

    std::uint32_t p() const { return p_; }
    std::uint32_t reduce(std::int64_t x) const
    {
        std::int64_t r = x % static_cast<std::int64_t>(p_);
        return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
    }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const
    {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return a >= b ? a - b : a + p_ - b; }
    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const
    {
        return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p_);
    }
    std::uint32_t inv(std::uint32_t a) const
    {
        if (a == 0)
            throw consistency_error("inverse of zero in F_" + std::to_string(p_));
        return inv_[a];
    }
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const
    {
        std::uint64_t r = 1, b = a % p_;
        while (e) {
            if (e & 1)
                r = r * b % p_;
            b = b * b % p_;
            e >>= 1;
        }
        return static_cast<std::uint32_t>(r);
    }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }

private:
    std::uint32_t p_;
    std::vector<std::uint32_t> inv_;
};

// A scalar that carries its modulus, for API boundaries (beta, beta', coefficients).
class FpScalar {
public:
    FpScalar(std::uint32_t p, std::int64_t v) : p_(p)
    {
        if (!is_prime(p))
            throw config_error("modulus " + std::to_string(p) + " is not prime");
        std::int64_t r = v % static_cast<std::int64_t>(p);
        v_ = static_cast<std::uint32_t>(r < 0 ? r + p : r);
    }
    std::uint32_t value() const { return v_; }
    std::uint32_t modulus() const { return p_; }
    bool is_zero() const { return v_ == 0; }

    FpScalar operator+(const FpScalar& o) const { check(o); return {p_, std::int64_t(v_) + o.v_}; }
    FpScalar operator-(const FpScalar& o) const { check(o); return {p_, std::int64_t(v_) - o.v_}; }
    FpScalar operator*(const FpScalar& o) const { check(o); return {p_, std::int64_t(v_) * o.v_}; }
    FpScalar operator-() const { return {p_, -std::int64_t(v_)}; }
    FpScalar inverse() const
    {
        if (v_ == 0)
            throw consistency_error("inverse of zero");
        std::uint64_t r = 1, b = v_, e = p_ - 2;
        while (e) {
            if (e & 1)
                r = r * b % p_;
            b = b * b % p_;
            e >>= 1;
        }
        return {p_, static_cast<std::int64_t>(r)};
    }
    bool operator==(const FpScalar& o) const { return p_ == o.p_ && v_ == o.v_; }

private:
    void check(const FpScalar& o) const
    {
        if (o.p_ != p_)
            throw consistency_error("mixing scalars of different characteristic");
    }
    std::uint32_t p_;
    std::uint32_t v_;
};

// Binomial coefficient mod p by Lucas' theorem. Valid for negative top via p-adic digits
// of the residue: binom(l, i) mod p only depends on l mod p^(digits of i).
inline std::uint32_t lucas_binom(const PrimeField& F, std::int64_t l, std::int64_t i)
{
    if (i < 0)
        return 0;
    const std::int64_t p = F.p();
    std::int64_t span = 1;
    while (span <= i)
        span *= p;
    std::int64_t top = ((l % span) + span) % span;
    std::uint32_t r = 1;
    while (i > 0 || top > 0) {
        std::int64_t a = top % p, b = i % p;
        if (b > a)
            return 0;
        // small binomial mod p, a < p
        std::uint32_t num = 1, den = 1;
        for (std::int64_t t = 0; t < b; ++t) {
            num = F.mul(num, static_cast<std::uint32_t>(a - t));
            den = F.mul(den, static_cast<std::uint32_t>(t + 1));
        }
        r = F.mul(r, F.mul(num, F.inv(den)));
        top /= p;
        i /= p;
    }
    return r;
}

}  // namespace spokess
