#pragma once

// Hurwitz zeta, digamma/polygamma and the gamma function via
// Euler-Maclaurin / Stirling with exact Bernoulli weights. The summation
// cutoff and the correction depth are derived from the requested precision
// on every call; if the asymptotic tail stalls before reaching the target,
// the shift N is doubled and the evaluation retried.

#include <mutex>
#include <vector>

#include "hyperver/bigfloat.hpp"
#include "hyperver/elementary.hpp"
#include "hyperver/errors.hpp"
#include "hyperver/exact.hpp"
#include "hyperver/jet.hpp"
#include "hyperver/rational.hpp"

namespace hyperver {

// Exact Bernoulli number B_n (B_1 = -1/2); cached across calls.
inline Rational bernoulli(unsigned n) {
    static std::mutex mutex;
    static std::vector<Rational> table; // B_0, B_1, ...
    std::lock_guard<std::mutex> lock(mutex);
    while (table.size() <= n) {
        const unsigned m = static_cast<unsigned>(table.size());
        if (m == 0) {
            table.emplace_back(1);
            continue;
        }
        // sum_{k=0}^{m} C(m+1,k) B_k = 0
        Rational acc(0);
        for (unsigned k = 0; k < m; ++k) acc += Rational(binomial_int(m + 1, k)) * table[k];
        table.push_back(-acc / Rational(m + 1));
    }
    return table[n];
}

namespace detail {

// z^e for rational e with denominator 1 or 2
inline BigFloat pow_rational_exp(const BigFloat& z, const Rational& e, unsigned work) {
    const Int d = den(e);
    if (d == 1) return pow_int_at(z, to_long(num(e)), work);
    if (d == 2) {
        const long p = to_long(num(e));
        const bool neg = p < 0;
        const BigFloat v = sqrt_at(pow_int_at(z, neg ? -p : p, work + 8), work);
        return neg ? divided(BigFloat(1L, work), v, work) : v;
    }
    throw DomainError("pow_rational_exp: exponent denominator must be 1 or 2");
}

// One Euler-Maclaurin pass at shift N; returns false if the correction
// series failed to reach the target before its terms started growing.
inline bool hurwitz_em_pass(const Rational& s, const BigFloat& a, unsigned work, unsigned long n_shift, BigFloat& out) {
    BigFloat direct(0L, work);
    for (unsigned long k = 0; k < n_shift; ++k) {
        const BigFloat base = a + static_cast<long>(k);
        if (base.sign() <= 0) throw DomainError("hurwitz_zeta: a + k must stay positive");
        direct = direct + pow_rational_exp(base, -s, work);
    }
    const BigFloat z = a + static_cast<long>(n_shift);
    const Rational one_minus_s = Rational(1) - s;
    BigFloat sum = direct;
    sum = sum + divided(pow_rational_exp(z, one_minus_s, work), BigFloat(s - 1, work), work);
    const BigFloat z_minus_s = pow_rational_exp(z, -s, work);
    sum = sum + ldexp2(z_minus_s, -1);

    const BigFloat z2inv = divided(BigFloat(1L, work), z * z, work);
    BigFloat zcur = divided(z_minus_s, z, work); // z^{-s-1}
    Rational poch = s;                           // (s)_{2j-1} at j=1
    Rational fact(2);                            // (2j)! at j=1
    BigFloat prev_mag;
    bool have_prev = false;
    for (unsigned j = 1;; ++j) {
        const Rational coeff = bernoulli(2 * j) * poch / fact;
        const BigFloat term = BigFloat(coeff, work) * zcur;
        const BigFloat mag = abs(term);
        if (!mag.is_zero() && mag.exponent2() < sum.exponent2() - static_cast<std::int64_t>(work) - 4) {
            out = sum; // remainder bounded by this first omitted term
            return true;
        }
        if (have_prev && mag >= prev_mag) return false; // asymptotic tail stalled
        sum = sum + term;
        prev_mag = mag;
        have_prev = true;
        poch *= (s + 2 * j - 1) * (s + 2 * j);
        fact *= Rational((2 * j + 1) * (2 * j + 2));
        zcur = zcur * z2inv;
        if (j > 4 * work) return false;
    }
}

inline BigFloat hurwitz_zeta_impl(const Rational& s, const BigFloat& a, unsigned work) {
    if (a.sign() <= 0) throw DomainError("hurwitz_zeta: a must be positive");
    if (s <= 1) throw DomainError("hurwitz_zeta: s must exceed 1");
    unsigned long n_shift = std::max<unsigned long>(16, static_cast<unsigned long>(0.18 * work));
    for (int attempt = 0; attempt < 8; ++attempt, n_shift *= 2) {
        BigFloat out;
        if (hurwitz_em_pass(s, a, work, n_shift, out)) return out;
    }
    throw NoConvergence("hurwitz_zeta: Euler-Maclaurin did not converge");
}

} // namespace detail

inline BigFloat hurwitz_zeta(const Rational& s, const BigFloat& a, const EvalContext& ctx) {
    return detail::hurwitz_zeta_impl(s, a, ctx.work()).rounded(ctx.prec);
}

inline BigFloat hurwitz_zeta(long s, const Rational& a, const EvalContext& ctx) {
    if (s < 2) throw DomainError("hurwitz_zeta: integer s must be >= 2");
    return hurwitz_zeta(Rational(s), ctx.lift(a), ctx);
}

inline BigFloat digamma(const BigFloat& x, unsigned prec) {
    if (x.sign() <= 0) throw DomainError("digamma: x must be positive");
    const unsigned work = prec + 32;
    unsigned long shift_target = std::max<unsigned long>(12, static_cast<unsigned long>(0.13 * work));
    for (int attempt = 0; attempt < 8; ++attempt, shift_target *= 2) {
        const double x0 = x.to_double_approx();
        const unsigned long n_shift = x0 >= static_cast<double>(shift_target) ? 0 : static_cast<unsigned long>(shift_target - x0) + 1;
        BigFloat harm(0L, work);
        for (unsigned long k = 0; k < n_shift; ++k) harm = harm + divided(BigFloat(1L, work), x + static_cast<long>(k), work);
        const BigFloat z = x + static_cast<long>(n_shift);
        BigFloat sum = ln(z, work) - divided(BigFloat(1L, work), ldexp2(z, 1), work) - harm;
        const BigFloat z2inv = divided(BigFloat(1L, work), z * z, work);
        BigFloat zcur = z2inv; // z^{-2j} at j=1
        BigFloat prev_mag;
        bool have_prev = false, done = false;
        for (unsigned j = 1;; ++j) {
            const Rational coeff = bernoulli(2 * j) / Rational(2 * j);
            const BigFloat term = BigFloat(coeff, work) * zcur;
            const BigFloat mag = abs(term);
            if (!mag.is_zero() && mag.exponent2() < sum.exponent2() - static_cast<std::int64_t>(work) - 4) {
                done = true;
                break;
            }
            if (have_prev && mag >= prev_mag) break;
            sum = sum - term;
            prev_mag = mag;
            have_prev = true;
            zcur = zcur * z2inv;
            if (j > 4 * work) break;
        }
        if (done) return sum.rounded(prec);
    }
    throw NoConvergence("digamma: asymptotic series did not converge");
}

inline BigFloat digamma(const Rational& x, const EvalContext& ctx) {
    return digamma(ctx.lift(x), ctx.work()).rounded(ctx.prec);
}

// psi_m(x) = (-1)^{m+1} m! zeta(m+1, x) for m >= 1
inline BigFloat polygamma(unsigned m, const BigFloat& x, const EvalContext& ctx) {
    if (m == 0) return digamma(x, ctx.work()).rounded(ctx.prec);
    const BigFloat zeta = detail::hurwitz_zeta_impl(Rational(m + 1), x, ctx.work());
    BigFloat v = BigFloat(factorial_int(m), ctx.work()) * zeta;
    if (m % 2 == 0) v = -v;
    return v.rounded(ctx.prec);
}

inline BigFloat polygamma(unsigned m, const Rational& x, const EvalContext& ctx) {
    return polygamma(m, ctx.lift(x), ctx);
}

namespace detail {

inline BigFloat lngamma_stirling(const BigFloat& z, unsigned work) {
    // requires z large enough for the target precision; caller arranges that
    const BigFloat lnz = ln(z, work);
    BigFloat sum = (z - ldexp2(BigFloat(1L, work), -1)) * lnz - z;
    const BigFloat lnpi = ln(pi_bits(work + 8), work);
    sum = sum + ldexp2(ln2_bits(work + 8) + lnpi, -1);
    const BigFloat z2inv = divided(BigFloat(1L, work), z * z, work);
    BigFloat zcur = divided(BigFloat(1L, work), z, work); // z^{-(2j-1)} at j=1
    BigFloat prev_mag;
    bool have_prev = false;
    for (unsigned j = 1;; ++j) {
        const Rational coeff = bernoulli(2 * j) / Rational(2 * j * (2 * j - 1));
        const BigFloat term = BigFloat(coeff, work) * zcur;
        const BigFloat mag = abs(term);
        if (!mag.is_zero() && mag.exponent2() < -static_cast<std::int64_t>(work) - 4) return sum;
        if (have_prev && mag >= prev_mag) throw NoConvergence("lngamma: Stirling tail stalled");
        sum = sum + term;
        prev_mag = mag;
        have_prev = true;
        zcur = zcur * z2inv;
        if (j > 4 * work) throw NoConvergence("lngamma: Stirling tail too long");
    }
}

} // namespace detail

inline BigFloat gamma(const BigFloat& x, unsigned prec) {
    if (x.sign() <= 0) throw DomainError("gamma: x must be positive");
    const unsigned work = prec + 48;
    const unsigned long z_min = std::max<unsigned long>(12, static_cast<unsigned long>(0.13 * work) + 2);
    const double x0 = x.to_double_approx();
    const unsigned long raise = x0 >= static_cast<double>(z_min) ? 0 : static_cast<unsigned long>(z_min - x0) + 1;
    BigFloat poch(1L, work);
    for (unsigned long i = 0; i < raise; ++i) poch = poch * (x + static_cast<long>(i));
    const BigFloat z = x + static_cast<long>(raise);
    const BigFloat g = exp(detail::lngamma_stirling(z, work), work);
    return divided(g, poch, work).rounded(prec);
}

inline BigFloat gamma(const BigFloat& x, const EvalContext& ctx) { return gamma(x, ctx.work()).rounded(ctx.prec); }
inline BigFloat gamma(const Rational& x, const EvalContext& ctx) { return gamma(ctx.lift(x), ctx); }

enum class AnalyticFn { Gamma, Digamma };

// Taylor jet of gamma or digamma at x: f(x + eps) truncated at order K <= 3.
inline Jet<BigFloat> analytic_jet(AnalyticFn f, const Rational& x, int order, const EvalContext& ctx) {
    if (order < 0 || order > 3) throw DomainError("analytic_jet: order must be in [0, 3]");
    if (x <= 0) throw DomainError("analytic_jet: x must be positive");
    const unsigned work = ctx.work();
    const BigFloat xf(x, work);
    std::vector<BigFloat> psi(static_cast<size_t>(order) + 1);
    // digamma jet coefficients psi_m(x)/m!
    psi[0] = digamma(xf, work);
    Int fact = 1;
    for (int m = 1; m <= order; ++m) {
        fact *= m;
        EvalContext wctx(work, 16);
        psi[static_cast<size_t>(m)] = divided(polygamma(static_cast<unsigned>(m), xf, wctx), BigFloat(fact, work), work);
    }
    if (f == AnalyticFn::Digamma) {
        return Jet<BigFloat>::from_coeffs(0, std::move(psi));
    }
    // gamma(x + eps) = gamma(x) * exp(sum_{m>=1} psi_{m-1}(x)/m! eps^m ... )
    // log gamma jet linear+ coefficients: psi_{m-1}(x)/m
    std::vector<BigFloat> lg(static_cast<size_t>(order) + 1, BigFloat(0L, work));
    for (int m = 1; m <= order; ++m) lg[static_cast<size_t>(m)] = psi[static_cast<size_t>(m - 1)] / m;
    const Jet<BigFloat> u = Jet<BigFloat>::from_coeffs(0, std::move(lg));
    Jet<BigFloat> e = Jet<BigFloat>::constant(BigFloat(1L, work), order);
    Jet<BigFloat> upow = Jet<BigFloat>::constant(BigFloat(1L, work), order);
    Int f2 = 1;
    for (int m = 1; m <= order; ++m) {
        f2 *= m;
        upow = upow * u;
        e = e + upow * BigFloat(Rational(1, f2), work);
    }
    return e * gamma(xf, work);
}

} // namespace hyperver
