#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "unistab/errors.hpp"

namespace unistab {

// Exact scalar types.  Everything in the library is tolerance-free: there is
// no floating point anywhere.
using Integer = mpz_class;
using Rational = mpq_class;

// Element of the prime field F_p, p a runtime prime.  The modulus travels
// with the value; mixing moduli is a programming error.
struct Fp {
    std::uint32_t v = 0;
    std::uint32_t p = 0;

    Fp() = default;
    Fp(long long value, std::uint32_t prime) : p(prime) {
        if (prime < 2) throw ValidationError("Fp: modulus must be >= 2");
        long long m = value % static_cast<long long>(prime);
        if (m < 0) m += prime;
        v = static_cast<std::uint32_t>(m);
    }

    bool is_zero() const { return v == 0; }

    friend Fp operator+(Fp a, Fp b) {
        a.check(b);
        return Fp(static_cast<long long>(a.v) + b.v, a.p);
    }
    friend Fp operator-(Fp a, Fp b) {
        a.check(b);
        return Fp(static_cast<long long>(a.v) + a.p - b.v, a.p);
    }
    friend Fp operator*(Fp a, Fp b) {
        a.check(b);
        return Fp(static_cast<long long>(a.v) * b.v % a.p, a.p);
    }
    friend Fp operator-(Fp a) { return Fp(static_cast<long long>(a.p) - a.v, a.p); }
    friend bool operator==(const Fp& a, const Fp& b) { return a.v == b.v; }
    friend bool operator!=(const Fp& a, const Fp& b) { return a.v != b.v; }

    Fp inv() const {
        if (v == 0) throw ValidationError("Fp: inverse of zero");
        // extended Euclid
        long long t = 0, newt = 1;
        long long r = p, newr = v;
        while (newr != 0) {
            long long q = r / newr;
            long long tmp = t - q * newt; t = newt; newt = tmp;
            tmp = r - q * newr; r = newr; newr = tmp;
        }
        if (t < 0) t += p;
        return Fp(t, p);
    }

private:
    void check(const Fp& o) const {
        if (p != o.p) throw ValidationError("Fp: mixed moduli");
    }
};

inline bool scalar_is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool scalar_is_zero(const Integer& x) { return sgn(x) == 0; }
inline bool scalar_is_zero(const Fp& x) { return x.is_zero(); }

inline std::string scalar_to_string(const Rational& x) {
    Rational c(x);
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}
inline std::string scalar_to_string(const Integer& x) { return x.get_str(); }
inline std::string scalar_to_string(const Fp& x) { return std::to_string(x.v); }

// Coefficient domain descriptors.  Algorithms that synthesize matrix entries
// from integers take one of these so F_p knows its modulus.
struct QDomain {
    using Scalar = Rational;
    static constexpr bool is_field = true;
    Rational from_int(long long v) const { return Rational(static_cast<long>(v)); }
    Rational parse(const std::string& s) const {
        Rational r(s);
        r.canonicalize();
        return r;
    }
    std::string name() const { return "q"; }
};

struct ZDomain {
    using Scalar = Integer;
    static constexpr bool is_field = false;
    Integer from_int(long long v) const { return Integer(static_cast<long>(v)); }
    Integer parse(const std::string& s) const { return Integer(s); }
    std::string name() const { return "z"; }
};

struct FpDomain {
    std::uint32_t p = 2;
    using Scalar = Fp;
    static constexpr bool is_field = true;
    explicit FpDomain(std::uint32_t prime = 2) : p(prime) {}
    Fp from_int(long long v) const { return Fp(v, p); }
    Fp parse(const std::string& s) const { return Fp(std::stoll(s), p); }
    std::string name() const { return "f" + std::to_string(p); }
};

inline Rational field_inv(const Rational& x) {
    if (sgn(x) == 0) throw ValidationError("rational inverse of zero");
    return Rational(1) / x;
}
inline Fp field_inv(const Fp& x) { return x.inv(); }

} // namespace unistab
