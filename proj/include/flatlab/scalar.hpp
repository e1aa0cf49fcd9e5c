#ifndef FLATLAB_SCALAR_HPP
#define FLATLAB_SCALAR_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "error.hpp"

namespace flatlab {

// Exact rational scalar. Always kept canonical: gcd(num, den) = 1, den > 0.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(long n, long d) {
        require(d != 0, errc::domain, "rational with zero denominator");
        v_ = mpq_class(n, d);
        v_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
    explicit Rational(const mpz_class& n) : v_(n) {}

    static Rational from_string(const std::string& s) {
        mpq_class q;
        if (q.set_str(s, 10) != 0) fail(errc::parse, "bad rational literal: " + s);
        q.canonicalize();
        return Rational(q);
    }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }

    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_)); }
    Rational operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_)); }
    Rational operator*(const Rational& o) const { return Rational(mpq_class(v_ * o.v_)); }
    Rational operator/(const Rational& o) const {
        require(!o.is_zero(), errc::domain, "division by zero");
        return Rational(mpq_class(v_ / o.v_));
    }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }

    Rational inv() const {
        require(!is_zero(), errc::domain, "inverse of zero");
        return Rational(mpq_class(1 / v_));
    }

    bool operator==(const Rational& o) const { return v_ == o.v_; }
    bool operator!=(const Rational& o) const { return v_ != o.v_; }

    std::string str() const { return v_.get_str(); }

private:
    mpq_class v_;
};

// Prime-field scalar with a per-value modulus; mixing moduli is a hard error.
// The zero value with p = 0 acts as a modulus-agnostic additive identity so
// that default construction stays usable.
class GF {
public:
    GF() : v_(0), p_(0) {}
    GF(uint64_t v, uint64_t p) : v_(v % p), p_(p) {}

    static GF from_int(long long n, uint64_t p) {
        long long r = n % (long long)p;
        if (r < 0) r += (long long)p;
        return GF((uint64_t)r, p);
    }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return v_ == 0 ? 0 : 1; }
    uint64_t value() const { return v_; }
    uint64_t modulus() const { return p_; }

    GF operator-() const { return v_ == 0 ? *this : GF(p_ - v_, p_); }
    GF operator+(const GF& o) const {
        uint64_t p = join(o);
        if (p == 0) return GF();
        return GF((v_ + o.v_) % p, p);
    }
    GF operator-(const GF& o) const { return *this + (-o); }
    GF operator*(const GF& o) const {
        uint64_t p = join(o);
        if (p == 0) return GF();
        return GF((v_ * o.v_) % p, p);
    }
    GF operator/(const GF& o) const { return *this * o.inv(); }
    GF& operator+=(const GF& o) { *this = *this + o; return *this; }
    GF& operator-=(const GF& o) { *this = *this - o; return *this; }
    GF& operator*=(const GF& o) { *this = *this * o; return *this; }

    GF inv() const {
        require(v_ != 0, errc::domain, "inverse of zero");
        return GF(powmod(v_, p_ - 2, p_), p_);
    }

    bool operator==(const GF& o) const {
        if (v_ == 0 && o.v_ == 0) return true;
        return join(o) != 0 && v_ == o.v_;
    }
    bool operator!=(const GF& o) const { return !(*this == o); }

    std::string str() const { return std::to_string(v_); }

private:
    uint64_t join(const GF& o) const {
        if (p_ == 0) return o.p_;
        if (o.p_ == 0) return p_;
        require(p_ == o.p_, errc::mismatch, "mixed prime-field moduli");
        return p_;
    }

    static uint64_t powmod(uint64_t b, uint64_t e, uint64_t p) {
        uint64_t r = 1;
        b %= p;
        while (e > 0) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    }

    uint64_t v_;
    uint64_t p_;  // 0 only for the default-constructed zero
};

inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Description of the coefficient field, independent of the scalar type.
struct FieldDesc {
    bool fp = false;
    uint64_t p = 0;

    std::string str() const { return fp ? "F" + std::to_string(p) : "Q"; }
    bool operator==(const FieldDesc&) const = default;
};

// Constructs scalars of type K "from thin air" (unit vectors, literals); the
// prime-field instantiation has to remember its modulus.
template <class K>
struct FieldCtx;

template <>
struct FieldCtx<Rational> {
    FieldCtx() = default;
    explicit FieldCtx(const FieldDesc& d) {
        require(!d.fp, errc::mismatch, "rational context from prime-field descriptor");
    }
    Rational zero() const { return Rational(); }
    Rational one() const { return Rational(1); }
    Rational from_int(long long n) const { return Rational(mpz_class((long)n)); }
    Rational from_fraction(long long n, long long d) const {
        require(d != 0, errc::domain, "rational with zero denominator");
        mpq_class q(mpz_class((long)n), mpz_class((long)d));
        q.canonicalize();
        return Rational(q);
    }
    FieldDesc desc() const { return {}; }
};

template <>
struct FieldCtx<GF> {
    FieldCtx() : p_(0) {}
    explicit FieldCtx(uint64_t p) : p_(p) { check(); }
    explicit FieldCtx(const FieldDesc& d) : p_(d.p) {
        require(d.fp, errc::mismatch, "prime-field context from rational descriptor");
        check();
    }
    GF zero() const { return GF(0, p_); }
    GF one() const { return GF(1, p_); }
    GF from_int(long long n) const { return GF::from_int(n, p_); }
    GF from_fraction(long long n, long long d) const {
        GF den = from_int(d);
        require(!den.is_zero(), errc::domain, "denominator vanishes in the prime field");
        return from_int(n) / den;
    }
    FieldDesc desc() const { return {true, p_}; }
    uint64_t modulus() const { return p_; }

private:
    void check() const {
        require(p_ >= 2 && p_ < (uint64_t(1) << 31), errc::domain,
                "field characteristic out of range");
        require(is_prime_u64(p_), errc::domain,
                "field characteristic " + std::to_string(p_) + " is not prime");
    }
    uint64_t p_;
};

}  // namespace flatlab

#endif
