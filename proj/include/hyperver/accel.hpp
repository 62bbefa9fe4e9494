#pragma once

// Convergence acceleration: the Cohen-Rodriguez Villegas-Zagier polynomial
// scheme for alternating series and Richardson extrapolation over a
// doubling ladder of partial sums for algebraic decay.

#include <vector>

#include "hyperver/bigfloat.hpp"
#include "hyperver/errors.hpp"
#include "hyperver/series.hpp"
#include "hyperver/zeta_gamma.hpp"

namespace hyperver {

// One CRVZ stage over the absolute values a_0..a_{n-1}.
inline BigFloat crvz_stage(const std::vector<BigFloat>& a, long n, unsigned work) {
    const BigFloat x = BigFloat(3L, work) + ldexp2(sqrt_at(BigFloat(2L, work), work), 1); // 3 + sqrt(8)
    BigFloat d = pow_int_at(x, n, work);
    d = ldexp2(d + divided(BigFloat(1L, work), d, work), -1);
    BigFloat b(-1L, work), c = -d, s(0L, work);
    for (long k = 0; k < n; ++k) {
        c = b - c;
        s = s + c * a[static_cast<size_t>(k)];
        // b *= (k+n)(k-n) / ((k+1/2)(k+1))
        b = b * BigFloat(2 * (k + n) * (k - n), work);
        b = b / BigFloat((2 * k + 1) * (k + 1), work);
    }
    return s / d;
}

// Sums a strictly alternating series; error estimate is the difference
// between the n and n-1 stage results (empirical rate ~ 5.83^-n).
template <class Source>
SummationResult sum_alternating_crvz(Source&& next_term, long stages, unsigned work) {
    if (stages < 2) throw LadderTooShort("CRVZ needs at least 2 stages");
    std::vector<BigFloat> a;
    a.reserve(static_cast<size_t>(stages));
    int sign0 = 0;
    long pulled = 0;
    int expect = 0;
    while (static_cast<long>(a.size()) < stages) {
        const BigFloat u = next_term();
        ++pulled;
        if (u.is_zero()) {
            if (sign0 == 0 && a.empty()) continue; // skip a zero head
            throw NotAlternating("zero term inside alternating tail");
        }
        if (sign0 == 0) {
            sign0 = u.sign();
            expect = sign0;
        } else {
            if (u.sign() != -expect) throw NotAlternating();
            expect = -expect;
        }
        a.push_back(abs(u));
        if (pulled > stages + 16) break;
    }
    if (static_cast<long>(a.size()) < stages) throw LadderTooShort("CRVZ: not enough terms");
    const BigFloat s_full = crvz_stage(a, stages, work);
    const BigFloat s_prev = crvz_stage(a, stages - 1, work);
    SummationResult r;
    r.value = sign0 < 0 ? -s_full : s_full;
    r.error = abs(s_full - s_prev);
    r.terms = stages;
    r.strategy = "crvz";
    return r;
}

// default stage count for a target precision, plus headroom
inline long crvz_stages_for(unsigned prec) {
    return static_cast<long>(prec * 0.6931471805599453 / 1.7631094939260836) + 10; // P ln2 / ln(3+sqrt 8)
}

// Extrapolates a sequence sampled at doubling arguments N, 2N, 4N, ...
// assuming value(N) = limit + sum_j c_j N^{-(e0 + j*estep)}.
inline SummationResult richardson_table(std::vector<BigFloat> row, const Rational& e0, const Rational& estep,
                                        unsigned work) {
    if (row.size() < 2) throw LadderTooShort("Richardson needs at least two samples");
    BigFloat diag = row.back(), prev;
    const size_t cols = row.size() - 1;
    std::vector<BigFloat> cur = std::move(row);
    for (size_t j = 1; j <= cols; ++j) {
        const Rational e = e0 + estep * Rational(static_cast<long>(j - 1));
        const BigFloat f = detail::pow_rational_exp(BigFloat(2L, work), e, work);
        std::vector<BigFloat> nxt;
        for (size_t i = 1; i < cur.size(); ++i) {
            // limit ~ v_{2N} + (v_{2N} - v_N)/(2^e - 1)
            nxt.push_back(cur[i] + (cur[i] - cur[i - 1]) / (f - 1));
        }
        cur = std::move(nxt);
        prev = diag;
        diag = cur.back();
    }
    SummationResult r;
    r.value = diag;
    r.error = abs(diag - prev);
    r.strategy = "richardson";
    return r;
}

// Richardson extrapolation over partial sums S_N at N, 2N, 4N, ...
template <class Source>
SummationResult sum_richardson(Source&& next_term, const std::vector<unsigned long>& ladder, const Rational& e0,
                               const Rational& estep, unsigned work) {
    if (ladder.size() < 2) throw LadderTooShort("Richardson needs at least two partial sums");
    for (size_t i = 1; i < ladder.size(); ++i) {
        if (ladder[i] != 2 * ladder[i - 1]) throw LadderTooShort("Richardson ladder must double");
    }
    std::vector<BigFloat> row;
    BigFloat acc(0L, work);
    unsigned long k = 0;
    for (unsigned long target : ladder) {
        while (k < target) {
            acc = acc + next_term();
            ++k;
        }
        row.push_back(acc);
    }
    SummationResult r = richardson_table(std::move(row), e0, estep, work);
    r.terms = static_cast<long>(ladder.back());
    return r;
}

// Positive slowly-decaying series t_k ~ C k^sigma: extrapolate in powers of
// N^{-1/2} starting from the exponent the descriptor implies.
inline SummationResult sum_slow_positive_richardson(const TermSpec& term, const WExpr& weight, const FloatKernel& kernel,
                                                    const Params& params, const std::vector<unsigned long>& ladder) {
    const Rational sigma = term_decay_exponent(term, params) + Rational(weight.growth_degree());
    const Rational e0 = -sigma - 1;
    if (e0 <= 0) throw NoConvergence("series does not decay");
    BoundSeries<FloatKernel> s(term, weight, kernel, params);
    auto src = [&]() {
        const BigFloat u = s.current();
        s.advance();
        return u;
    };
    return sum_richardson(src, ladder, e0, Rational(1, 2), kernel.work);
}

} // namespace hyperver
