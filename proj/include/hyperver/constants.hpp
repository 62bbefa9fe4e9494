#pragma once

// Closed-form constants used by the right-hand sides, computed once per
// precision and cached. Entries are rounded to the context precision.

#include <map>
#include <mutex>

#include "hyperver/bigfloat.hpp"
#include "hyperver/elementary.hpp"
#include "hyperver/zeta_gamma.hpp"

namespace hyperver {

struct ConstantsTable {
    BigFloat pi;
    BigFloat ln2;
    BigFloat euler;
    BigFloat zeta3;
    BigFloat catalan;
    BigFloat gamma_quarter;        // Gamma(1/4)
    BigFloat psi1_quarter;         // psi_1(1/4)
    BigFloat psi1_three_quarters;  // psi_1(3/4)
    BigFloat psi2_one;             // psi_2(1)
    BigFloat psi2_half;            // psi_2(1/2)
    BigFloat psi2_three_quarters;  // psi_2(3/4)

    static ConstantsTable compute(const EvalContext& ctx) {
        ConstantsTable t;
        t.pi = pi_bits(ctx.work()).rounded(ctx.prec);
        t.ln2 = ln2_bits(ctx.work()).rounded(ctx.prec);
        t.euler = euler_gamma_bits(ctx.work()).rounded(ctx.prec);
        t.zeta3 = hurwitz_zeta(3, Rational(1), ctx);
        t.psi1_quarter = polygamma(1, Rational(1, 4), ctx);
        t.psi1_three_quarters = polygamma(1, Rational(3, 4), ctx);
        t.catalan = ldexp2(t.psi1_quarter - t.psi1_three_quarters, -4).rounded(ctx.prec);
        t.gamma_quarter = gamma(Rational(1, 4), ctx);
        t.psi2_one = polygamma(2, Rational(1), ctx);
        t.psi2_half = polygamma(2, Rational(1, 2), ctx);
        t.psi2_three_quarters = polygamma(2, Rational(3, 4), ctx);
        return t;
    }

    // Two-precision contract: every entry agrees with its recomputation at
    // prec + 64 to within 2 ulp at prec.
    bool self_check(const EvalContext& ctx) const {
        const ConstantsTable hi = compute(ctx.cross());
        auto ok = [&](const BigFloat& v, const BigFloat& w) { return rel_close(v, w, ctx.prec - 2); };
        return ok(pi, hi.pi) && ok(ln2, hi.ln2) && ok(euler, hi.euler) && ok(zeta3, hi.zeta3) &&
               ok(catalan, hi.catalan) && ok(gamma_quarter, hi.gamma_quarter) &&
               ok(psi1_quarter, hi.psi1_quarter) && ok(psi1_three_quarters, hi.psi1_three_quarters) &&
               ok(psi2_one, hi.psi2_one) && ok(psi2_half, hi.psi2_half) &&
               ok(psi2_three_quarters, hi.psi2_three_quarters);
    }

    static const ConstantsTable& at(const EvalContext& ctx) {
        static std::mutex mutex;
        static std::map<unsigned, ConstantsTable> cache;
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(ctx.prec);
        if (it == cache.end()) it = cache.emplace(ctx.prec, compute(ctx)).first;
        return it->second;
    }
};

} // namespace hyperver
