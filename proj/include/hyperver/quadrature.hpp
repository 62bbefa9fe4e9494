#pragma once

// Tanh-sinh (double exponential) quadrature on a finite interval with a
// level-doubling trapezoid rule. Integrands receive the abscissa together
// with its exact distances to both endpoints so endpoint-singular factors
// can be evaluated without cancellation.

#include <cmath>
#include <functional>

#include "hyperver/bigfloat.hpp"
#include "hyperver/elementary.hpp"
#include "hyperver/errors.hpp"
#include "hyperver/series.hpp"

namespace hyperver {

// f(x, dist_a, dist_b, work) -> BigFloat
using Integrand = std::function<BigFloat(const BigFloat&, const BigFloat&, const BigFloat&, unsigned)>;

template <class F>
SummationResult quadrature_tanh_sinh(F&& f, const BigFloat& a, const BigFloat& b, const EvalContext& ctx,
                                     const BigFloat& eps, int max_level = 11) {
    const unsigned work = ctx.work() + 16;
    const BigFloat lo = a.rounded(work), hi = b.rounded(work);
    const BigFloat width = hi - lo;
    if (width.sign() <= 0) throw DomainError("quadrature: requires a < b");
    const BigFloat half_width = ldexp2(width, -1);
    const BigFloat quarter_pi = ldexp2(pi_bits(work + 16), -2);

    const double u_max = std::asinh((work * 0.6931471805599453 + 64.0) / 3.141592653589793) + 0.25;
    long evals = 0;

    // g(u) = w(u) * f(x(u)); u = j*h
    auto point = [&](const BigFloat& u) -> BigFloat {
        const BigFloat eu = exp(u, work);
        const BigFloat y = quarter_pi * (eu - divided(BigFloat(1L, work), eu, work)); // (pi/2) sinh u
        const BigFloat ey = exp(y, work);
        const BigFloat ey2 = ey * ey;
        const BigFloat db = divided(width, BigFloat(1L, work) + ey2, work); // distance to b
        const BigFloat da = width - db;                                    // distance to a
        const BigFloat x = lo + da;
        const BigFloat cosh_u = ldexp2(eu + divided(BigFloat(1L, work), eu, work), -1);
        const BigFloat cosh_y = ldexp2(ey + divided(BigFloat(1L, work), ey, work), -1);
        const BigFloat weight = divided(ldexp2(half_width * quarter_pi, 1) * cosh_u, cosh_y * cosh_y, work);
        ++evals;
        return weight * f(x, da, db, work);
    };

    BigFloat sum = point(BigFloat(0L, work)); // j = 0, counted once
    BigFloat prev_q;
    bool have_prev = false;
    for (int level = 0; level <= max_level; ++level) {
        const int denom_pow = level;                 // h = 2^-level
        const long step = level == 0 ? 1 : 2;        // new points have odd j for level > 0
        const long j_start = level == 0 ? 1 : 1;
        const long j_end = static_cast<long>(std::ceil(u_max * std::ldexp(1.0, denom_pow)));
        for (long j = j_start; j <= j_end; j += step) {
            if (level > 0 && j % 2 == 0) continue;
            const BigFloat u = ldexp2(BigFloat(j, work), -denom_pow);
            sum = sum + point(u) + point(-u);
        }
        const BigFloat q = ldexp2(sum, -denom_pow); // h * sum
        if (have_prev) {
            const BigFloat diff = abs(q - prev_q);
            if (diff < eps) {
                SummationResult r;
                r.value = q.rounded(ctx.work());
                r.error = diff;
                r.terms = evals;
                r.strategy = "tanh-sinh";
                return r;
            }
        }
        prev_q = q;
        have_prev = true;
    }
    throw NoConvergence("tanh-sinh quadrature did not reach the target");
}

} // namespace hyperver
