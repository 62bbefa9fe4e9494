#pragma once

// Elementary functions and the basic constants, built from integer
// arithmetic alone: pi by Gauss-Legendre AGM, ln by atanh series with
// argument reduction, exp by scaled Taylor, sin/cos by reduction mod pi/2,
// Euler's gamma by the Bessel-moment (Brent-McMillan) scheme.

#include <cmath>
#include <mutex>

#include "hyperver/bigfloat.hpp"
#include "hyperver/errors.hpp"

namespace hyperver {

namespace detail {

struct ConstCache {
    std::mutex mutex;
    unsigned bits = 0;
    BigFloat value;

    template <class F>
    BigFloat get(unsigned prec, F compute) {
        std::lock_guard<std::mutex> lock(mutex);
        if (bits < prec) {
            value = compute(prec + 32);
            bits = prec + 32;
        }
        return value.rounded(prec);
    }
};

inline BigFloat agm_pi(unsigned prec) {
    const unsigned work = prec + 64;
    BigFloat a(1L, work);
    BigFloat b = divided(BigFloat(1L, work), sqrt_at(BigFloat(2L, work), work), work);
    BigFloat t = ldexp2(BigFloat(1L, work), -2);
    BigFloat p(1L, work);
    unsigned iters = 2;
    for (unsigned w = work; w > 1; w >>= 1) ++iters;
    for (unsigned i = 0; i < iters; ++i) {
        const BigFloat an = ldexp2(a + b, -1);
        const BigFloat bn = sqrt_at(a * b, work);
        const BigFloat d = a - an;
        t = t - p * d * d;
        p = ldexp2(p, 1);
        a = an;
        b = bn;
    }
    const BigFloat s = a + b;
    return divided(s * s, ldexp2(t, 2), work).rounded(prec);
}

// atanh for |x| well below 1; plain Taylor series
inline BigFloat atanh_small(const BigFloat& x, unsigned work) {
    const BigFloat x2 = x * x;
    BigFloat term = x, sum = x;
    for (long i = 1;; ++i) {
        term = term * x2;
        const BigFloat add = term / (2 * i + 1);
        sum = sum + add;
        if (add.is_zero() || add.exponent2() < -static_cast<std::int64_t>(work) + (sum.is_zero() ? 0 : sum.exponent2()))
            break;
    }
    return sum;
}

inline BigFloat ln2_value(unsigned prec) {
    const unsigned work = prec + 32;
    const BigFloat third(Rational(1, 3), work);
    return ldexp2(atanh_small(third, work), 1).rounded(prec);
}

inline ConstCache& pi_cache() { static ConstCache c; return c; }
inline ConstCache& ln2_cache() { static ConstCache c; return c; }
inline ConstCache& euler_cache() { static ConstCache c; return c; }

} // namespace detail

inline BigFloat pi_bits(unsigned prec) {
    return detail::pi_cache().get(prec, detail::agm_pi);
}

inline BigFloat ln2_bits(unsigned prec) {
    return detail::ln2_cache().get(prec, detail::ln2_value);
}

inline BigFloat ln(const BigFloat& x, unsigned prec) {
    if (x.sign() <= 0) throw DomainError("ln: argument must be positive");
    const unsigned work = prec + 48;
    std::int64_t e = x.exponent2();
    BigFloat m = ldexp2(x, -e).rounded(work); // in [1, 2)
    if (4 * m > BigFloat(6L, work)) {         // keep m near 1 to avoid cancellation
        m = ldexp2(m, -1);
        ++e;
    }
    BigFloat lnm(0L, work);
    if (m != BigFloat(1L, work)) {
        const int halvings = 5;
        BigFloat y = m;
        for (int i = 0; i < halvings; ++i) y = sqrt_at(y, work + 16);
        const BigFloat t = divided(y - 1, y + 1, work + 16);
        lnm = ldexp2(detail::atanh_small(t, work), halvings + 1);
    }
    if (e != 0) lnm = lnm + BigFloat(static_cast<long>(e), work) * ln2_bits(work + 8);
    return lnm.rounded(prec);
}

inline long nearest_long(const BigFloat& x) {
    const double d = x.to_double_approx();
    if (std::abs(d) > 9e15) throw DomainError("nearest_long: value too large");
    return static_cast<long>(std::llround(d));
}

inline BigFloat exp(const BigFloat& x, unsigned prec) {
    if (x.is_zero()) return BigFloat(1L, prec);
    if (x.exponent2() > 32) throw DomainError("exp: argument out of supported range");
    const unsigned work = prec + 64 + static_cast<unsigned>(std::max<std::int64_t>(0, x.exponent2()));
    const BigFloat l2 = ln2_bits(work + 32);
    const long n = nearest_long(x / l2);
    const BigFloat r = subbed(x.rounded(work + 32), multiplied(BigFloat(n, work + 32), l2, work + 32), work + 32);
    const int j = 16;
    const BigFloat u = ldexp2(r, -j).rounded(work);
    BigFloat term(1L, work), sum(1L, work);
    for (long i = 1;; ++i) {
        term = term * u / i;
        sum = sum + term;
        if (term.is_zero() || term.exponent2() < -static_cast<std::int64_t>(work) - j - 8) break;
    }
    for (int i = 0; i < j; ++i) sum = multiplied(sum, sum, work);
    return ldexp2(sum, n).rounded(prec);
}

namespace detail {

inline BigFloat sin_taylor(const BigFloat& r, unsigned work) {
    if (r.is_zero()) return BigFloat(0L, work);
    const BigFloat r2 = r * r;
    BigFloat term = r, sum = r;
    for (long i = 1;; ++i) {
        term = term * r2 / (-(2 * i) * (2 * i + 1));
        sum = sum + term;
        if (term.is_zero() || term.exponent2() < -static_cast<std::int64_t>(work) + std::min<std::int64_t>(0, sum.is_zero() ? 0 : sum.exponent2())) break;
    }
    return sum;
}

inline BigFloat cos_taylor(const BigFloat& r, unsigned work) {
    BigFloat term(1L, work), sum(1L, work);
    if (r.is_zero()) return sum;
    const BigFloat r2 = r * r;
    for (long i = 1;; ++i) {
        term = term * r2 / (-(2 * i - 1) * (2 * i));
        sum = sum + term;
        if (term.is_zero() || term.exponent2() < -static_cast<std::int64_t>(work)) break;
    }
    return sum;
}

inline BigFloat sin_cos_impl(const BigFloat& x, unsigned prec, bool want_sin) {
    if (x.is_zero()) return BigFloat(want_sin ? 0L : 1L, prec);
    const unsigned work = prec + 48 + static_cast<unsigned>(std::max<std::int64_t>(0, x.exponent2() + 1));
    const BigFloat half_pi = ldexp2(pi_bits(work + 32), -1);
    const long q = nearest_long(x / half_pi);
    const BigFloat r = subbed(x.rounded(work + 32), multiplied(BigFloat(q, work + 32), half_pi, work + 32), work + 32).rounded(work);
    const long quad = ((want_sin ? q : q + 1) % 4 + 4) % 4;
    BigFloat v;
    switch (quad) {
        case 0: v = sin_taylor(r, work); break;
        case 1: v = cos_taylor(r, work); break;
        case 2: v = -sin_taylor(r, work); break;
        default: v = -cos_taylor(r, work); break;
    }
    return v.rounded(prec);
}

} // namespace detail

inline BigFloat sin(const BigFloat& x, unsigned prec) { return detail::sin_cos_impl(x, prec, true); }
inline BigFloat cos(const BigFloat& x, unsigned prec) { return detail::sin_cos_impl(x, prec, false); }

inline BigFloat atan(const BigFloat& x, unsigned prec) {
    if (x.is_zero()) return BigFloat(0L, prec);
    const unsigned work = prec + 48;
    BigFloat y = abs(x).rounded(work);
    const bool invert = y > BigFloat(1L, work);
    if (invert) y = divided(BigFloat(1L, work), y, work);
    const int halvings = 8;
    for (int i = 0; i < halvings; ++i) {
        y = divided(y, BigFloat(1L, work) + sqrt_at(BigFloat(1L, work) + y * y, work), work);
    }
    const BigFloat y2 = y * y;
    BigFloat term = y, sum = y;
    for (long i = 1;; ++i) {
        term = term * y2;
        term = -term;
        const BigFloat add = term / (2 * i + 1);
        sum = sum + add;
        if (add.is_zero() || add.exponent2() < -static_cast<std::int64_t>(work) + sum.exponent2()) break;
    }
    BigFloat v = ldexp2(sum, halvings);
    if (invert) v = ldexp2(pi_bits(work), -1) - v;
    if (x.sign() < 0) v = -v;
    return v.rounded(prec);
}

// arcsin as an atan composition
inline BigFloat asin(const BigFloat& x, unsigned prec) {
    const unsigned work = prec + 48;
    const BigFloat one(1L, work);
    const BigFloat ax = abs(x);
    if (ax > one) throw DomainError("asin: |x| > 1");
    if (ax == one) {
        BigFloat v = ldexp2(pi_bits(work), -1);
        return (x.sign() < 0 ? -v : v).rounded(prec);
    }
    const BigFloat u = divided(x.rounded(work), sqrt_at(one - x * x, work), work);
    return atan(u, prec);
}

inline BigFloat euler_gamma_bits(unsigned prec) {
    return detail::euler_cache().get(prec, [](unsigned p) {
        const unsigned work = p + 32;
        const long n = static_cast<long>(0.1733 * work) + 3;
        const Int n2 = Int(n) * n;
        BigFloat t(1L, work), big_i(1L, work), big_s(0L, work), h(0L, work);
        for (long k = 1;; ++k) {
            t = divided(multiplied(t, BigFloat(n2, work), work), BigFloat(Int(k) * k, work), work);
            h = h + divided(BigFloat(1L, work), BigFloat(k, work), work);
            big_i = big_i + t;
            big_s = big_s + t * h;
            if (k > n && t.exponent2() < big_i.exponent2() - static_cast<std::int64_t>(work) - 8) break;
        }
        return subbed(divided(big_s, big_i, work), ln(BigFloat(n, work), work), work);
    });
}

enum class ElementaryFn { Sqrt, Exp, Ln, Sin };

// relative error <= 4 ulp at ctx.prec
inline BigFloat elementary(const BigFloat& x, ElementaryFn f, const EvalContext& ctx) {
    switch (f) {
        case ElementaryFn::Sqrt:
            if (x.sign() < 0) throw DomainError("sqrt: negative argument");
            return sqrt_at(x, ctx.work()).rounded(ctx.prec);
        case ElementaryFn::Exp: return exp(x, ctx.work()).rounded(ctx.prec);
        case ElementaryFn::Ln: return ln(x, ctx.work()).rounded(ctx.prec);
        case ElementaryFn::Sin: return sin(x, ctx.work()).rounded(ctx.prec);
    }
    throw Error("elementary: bad function");
}

inline BigFloat pi(const EvalContext& ctx) { return pi_bits(ctx.work()).rounded(ctx.prec); }

} // namespace hyperver
