#pragma once

// Arithmetic modulo p^2, the Morita p-adic gamma function on integer
// residues, and the instance check of the (6k+1)/4^k supercongruence.

#include <cstdint>
#include <string>

#include "hyperver/errors.hpp"
#include "hyperver/rational.hpp"

namespace hyperver {

inline bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

struct ModPSquare {
    long p = 0;
    long long r = 0; // in [0, p^2)

    long long modulus() const { return static_cast<long long>(p) * p; }

    friend ModPSquare operator+(const ModPSquare& a, const ModPSquare& b) {
        return {a.p, (a.r + b.r) % a.modulus()};
    }
    friend ModPSquare operator-(const ModPSquare& a, const ModPSquare& b) {
        return {a.p, ((a.r - b.r) % a.modulus() + a.modulus()) % a.modulus()};
    }
    friend ModPSquare operator*(const ModPSquare& a, const ModPSquare& b) {
        return {a.p, (a.r * b.r) % a.modulus()};
    }
    friend bool operator==(const ModPSquare& a, const ModPSquare& b) { return a.p == b.p && a.r == b.r; }
};

namespace detail {

inline long long mod_inverse(long long a, long long m) {
    long long old_r = a % m, r = m;
    long long old_s = 1, s = 0;
    while (r != 0) {
        const long long q = old_r / r;
        long long t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1 && old_r != -1) throw DenominatorDivisibleByP("no inverse mod p^2");
    long long inv = old_s % m;
    if (old_r == -1) inv = -inv;
    return (inv % m + m) % m;
}

} // namespace detail

inline ModPSquare embed_rational(const Rational& q, long p) {
    if (!is_prime(p)) throw NotPrime("p = " + std::to_string(p) + " is not prime");
    const long long m = static_cast<long long>(p) * p;
    const Int mi(m);
    Int n = num(q) % mi;
    if (n < 0) n += mi;
    Int d = den(q) % mi;
    if (d % p == 0) throw DenominatorDivisibleByP("denominator of " + to_string(q) + " divisible by " + std::to_string(p));
    const long long dn = d.convert_to<long long>();
    const long long nn = n.convert_to<long long>();
    return {p, (nn * detail::mod_inverse(dn, m)) % m};
}

// Morita convention on integer residues: Gamma_p(n) = (-1)^n prod_{0<j<n, p∤j} j.
// By 1-Lipschitz continuity the value mod p^2 only depends on x mod p^2.
inline ModPSquare gamma_p(const Rational& x, long p) {
    const ModPSquare e = embed_rational(x, p);
    const long long m = e.modulus();
    long long acc = 1;
    for (long long j = 1; j < e.r; ++j) {
        if (j % p == 0) continue;
        acc = (acc * j) % m;
    }
    if (e.r % 2 == 1) acc = (m - acc) % m;
    return {p, acc};
}

struct HeCongruenceReport {
    long p = 0;
    ModPSquare lhs;
    ModPSquare rhs;
    bool pass = false;
};

// sum_{k=0}^{(p-1)/2} (6k+1)/4^k (1/2)_k^3 (1/4)_k / (1)_k^4  vs
// (-1)^{(p+3)/4} p Gamma_p(1/2) Gamma_p(1/4)^2, both mod p^2.
inline HeCongruenceReport he_congruence_check(long p) {
    if (!is_prime(p) || p < 5) throw NotPrime("p must be a prime >= 5");
    if (p % 4 != 1) throw NotOneModFour("p = " + std::to_string(p) + " is not 1 mod 4");

    Rational sum(0), h(1); // h = (1/2)_k^3 (1/4)_k / (4^k (1)_k^4)
    const long upper = (p - 1) / 2;
    for (long k = 0;; ++k) {
        sum += Rational(6 * k + 1) * h;
        if (k == upper) break;
        const Rational half_k = Rational(2 * k + 1, 2);       // 1/2 + k
        const Rational quarter_k = Rational(4 * k + 1, 4);    // 1/4 + k
        h *= half_k * half_k * half_k * quarter_k;
        h /= pow_rational(Rational(k + 1), 4) * Rational(4);
    }
    HeCongruenceReport rep;
    rep.p = p;
    rep.lhs = embed_rational(sum, p);
    ModPSquare rhs = gamma_p(Rational(1, 2), p);
    const ModPSquare g4 = gamma_p(Rational(1, 4), p);
    rhs = rhs * g4 * g4;
    rhs = rhs * ModPSquare{p, p};
    if (((p + 3) / 4) % 2 == 1) rhs = ModPSquare{p, 0} - rhs;
    rep.rhs = rhs;
    rep.pass = rep.lhs == rep.rhs;
    return rep;
}

} // namespace hyperver
