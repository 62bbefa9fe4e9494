#pragma once

// The identity catalog. Every entry binds the two displayed sides of one
// identity to term/weight descriptors and a verification strategy. Free
// parameters carry sample defaults that keep all pochhammer denominators
// off the pole set; the acceptance suite additionally drives seeded random
// tuples through the exact entries.

#include <cmath>
#include <map>
#include <memory>

#include "hyperver/identity.hpp"

namespace hyperver {

namespace reg {

inline Affine A() { return sym("a"); }
inline Affine B() { return sym("b"); }
inline Affine C() { return sym("c"); }
inline Affine D() { return sym("d"); }
inline Affine E() { return sym("e"); }
inline Affine N() { return sym("n"); }

inline Rational r(long n, long d = 1) { return Rational(n, d); }

// H_k(x) as a weight node
inline WExpr hk(Affine x) { return w_h(hnum(1, 1, std::move(x))); }
// H_k^{(order)} / H_{2k}^{(order)}
inline WExpr hk_ord(int scale, unsigned order) { return w_h(hnum(scale, order)); }
// sum_{i<=k} 1/((x+i)(y+i))
inline WExpr cs(Affine x, Affine y) { return w_h(hsum(1, {{std::move(x), 1}, {std::move(y), 1}})); }
// sum_{i<=k} 1/((x+i)(y+i)^2)
inline WExpr cs2(Affine x, Affine y) { return w_h(hsum(1, {{std::move(x), 1}, {std::move(y), 2}})); }

inline Params make_params(std::initializer_list<std::pair<const char*, Rational>> kv) {
    Params p;
    for (const auto& [k, v] : kv) p.values[k] = v;
    return p;
}

// closed forms over the constants table
using CF = SeriesVsClosedIdentity::ClosedForm;

inline BigFloat gamma_at(const Affine& x, const Params& p, const EvalContext& ctx) {
    return gamma(x.eval(p.values), ctx);
}

// ---------------------------------------------------------------------------
// Chu limit identities: geometric series whose closed form carries a
// removable singularity at the limit point; verified numerically away from
// it and as float jets at base + eps.

class ChuLimitIdentity : public SeriesVsClosedIdentity {
public:
    struct LimitSpec {
        std::string var;
        Rational base;
        Rational front; // constant prefactor of the closed form
        Rational reproduction_scale;
        std::function<BigFloat(const EvalContext&)> reproduction_target;
        Rational jet_tolerance;
    };

    ChuLimitIdentity(Info info, TermSpec term, WExpr weight, LimitSpec limit)
        : SeriesVsClosedIdentity(std::move(info), std::move(term), std::move(weight), How::Direct,
                                 make_closed_form(limit), {}),
          limit_(std::move(limit)) {}

protected:
    VerificationReport do_verify_jet_limit(const Params& p, const EvalContext& ctx, int order) const override {
        const int ord = order < 0 ? 2 : order;
        if (ord > 2) throw DomainError("jet limit supports order <= 2");
        VerificationReport r = base_report();
        r.strategy = "float-jet(" + limit_.var + "=" + to_string(limit_.base) + "+eps)";
        const unsigned work = ctx.work();
        Params pj = p;
        pj.values[limit_.var] = limit_.base;
        const FloatJetKernel kernel{FloatKernel{work}, limit_.var, ord};
        const BigFloat eps = ldexp2(BigFloat(1L, 64), -static_cast<std::int64_t>(ctx.prec + 16));
        const auto lhs = sum_infinite_direct(term_, weight_, kernel, pj, eps, 200000);
        const Jet<BigFloat> rhs = rhs_jet(ord, ctx);

        r.terms = lhs.terms;
        r.lhs = lhs.value.str();
        r.rhs = rhs.str();
        const Rational tol = limit_.jet_tolerance;
        bool pass = true;
        BigFloat worst(0L, 64);
        const int through = std::min({lhs.value.hi(), rhs.hi(), ord == 0 ? 0 : 1});
        if (rhs.lo() < 0 && abs(rhs.coefficient(rhs.lo())).to_rational() > tol) {
            // pole-order mismatch between the two sides
            throw ValuationMismatch("closed form keeps a pole the series lacks");
        }
        for (int i = 0; i <= through; ++i) {
            const BigFloat d = abs(lhs.value.coefficient(i) - rhs.coefficient(i));
            if (worst < d) worst = d;
            if (d.to_rational() > tol) pass = false;
        }
        // reproduction of the limit value from the eps^1 coefficient
        if (ord >= 1) {
            const BigFloat target = limit_.reproduction_target(ctx);
            const BigFloat got = BigFloat(limit_.reproduction_scale, work) * lhs.value.coefficient(1);
            const BigFloat d = abs(got - target);
            if (worst < d) worst = d;
            if (d.to_rational() > tol) {
                pass = false;
                r.note = "limit reproduction off: " + got.str(20) + " vs " + target.str(20);
            }
        }
        r.abs_diff = worst.is_zero() ? "0" : worst.str(6);
        r.tolerance = tol;
        r.pass = pass;
        return r;
    }

private:
    // gamma(x)gamma(2-x) / (gamma(x-1/2)gamma(3/2-x)) *
    //   (psi(2-x)-psi(1)+psi(x-1/2)-psi(1/2)) / (pi (x-1)), times `front`
    static CF make_closed_form(const LimitSpec& limit) {
        const std::string var = limit.var;
        const Rational front = limit.front;
        return [var, front](const Params& p, const EvalContext& ctx) -> BigFloat {
            const Rational x = p.at(var);
            if (x == 1) throw ParamOutOfDomain("closed form has a removable singularity at 1");
            const unsigned work = ctx.work();
            const BigFloat f = gamma(x, ctx) * gamma(Rational(2) - x, ctx) /
                               (gamma(x - Rational(1, 2), ctx) * gamma(Rational(3, 2) - x, ctx));
            const BigFloat num = digamma(Rational(2) - x, ctx) - digamma(Rational(1), ctx) +
                                 digamma(x - Rational(1, 2), ctx) - digamma(Rational(1, 2), ctx);
            const BigFloat den = pi_bits(work) * BigFloat(x - 1, work);
            return BigFloat(front, work) * f * num / den;
        };
    }

    Jet<BigFloat> rhs_jet(int ord, const EvalContext& ctx) const {
        const unsigned work = ctx.work();
        const int gk = std::min(ord + 1, 3); // one extra order feeds the division by eps
        const auto g1 = analytic_jet(AnalyticFn::Gamma, Rational(1), gk, ctx);
        const auto gh = analytic_jet(AnalyticFn::Gamma, Rational(1, 2), gk, ctx);
        const auto f = (g1 * g1.rescaled_eps(BigFloat(-1L, work))) / (gh * gh.rescaled_eps(BigFloat(-1L, work)));
        const auto p1 = analytic_jet(AnalyticFn::Digamma, Rational(1), gk, ctx);
        const auto ph = analytic_jet(AnalyticFn::Digamma, Rational(1, 2), gk, ctx);
        const auto num = (p1.rescaled_eps(BigFloat(-1L, work)) - Jet<BigFloat>::constant(p1.coefficient(0), gk)) +
                         (ph - Jet<BigFloat>::constant(ph.coefficient(0), gk));
        std::vector<BigFloat> pi_eps(static_cast<size_t>(gk), BigFloat(0L, work));
        pi_eps[0] = pi_bits(work);
        const auto den = Jet<BigFloat>::from_coeffs(1, std::move(pi_eps));
        return (f * (num / den)) * BigFloat(limit_.front, work);
    }

    LimitSpec limit_;
};

// ---------------------------------------------------------------------------
// Dougall's very well poised 5F4 sum: exact when terminating (d = -n),
// numeric against the gamma quotient otherwise.

class DougallIdentity : public Identity {
public:
    explicit DougallIdentity(Info info) : Identity(std::move(info)) {}

protected:
    VerificationReport do_verify(const Params& p, const EvalContext& ctx, const Rational& tol) const override {
        if (p.has("d")) return numeric_case(p, ctx, tol); // explicit d: nonterminating instance
        return exact_case(p);                             // otherwise the d = -n specialization
    }

private:
    static TermSpec lhs_term(bool terminating) {
        TermSpec t;
        t.push_num(A()).push_num(B()).push_num(C());
        t.push_num(terminating ? Affine(-N()) : D());
        t.push_den(Affine(1)).push_den(1 + A() - B()).push_den(1 + A() - C());
        if (terminating) t.push_den(1 + A() + N());
        else t.push_den(1 + A() - D());
        return t;
    }

    static WExpr well_poised_weight() { return w_ratio({klin(A(), 2)}, {KPoly(A())}); }

    VerificationReport exact_case(const Params& p) const {
        const long n = require_small_int(p, "n");
        VerificationReport r = base_report();
        r.exact = true;
        r.strategy = "exact";
        const ExactExpr lhs = ex_sum(lhs_term(true), well_poised_weight());
        const ExactExpr rhs = (ex_poch(1 + A()) * ex_poch(1 + A() - B() - C())) /
                              (ex_poch(1 + A() - B()) * ex_poch(1 + A() - C()));
        const Rational l = lhs.eval(ExactKernel{}, p, n);
        const Rational q = rhs.eval(ExactKernel{}, p, n);
        r.lhs = to_string(l);
        r.rhs = to_string(q);
        r.pass = (l == q);
        r.abs_diff = r.pass ? "0" : to_string(l - q);
        return r;
    }

    VerificationReport numeric_case(const Params& p, const EvalContext& ctx, const Rational& tol) const {
        const Rational margin = 1 + p.at("a") - p.at("b") - p.at("c") - p.at("d");
        if (margin <= 0) throw ParamOutOfDomain("requires 1+a-b-c-d > 0");
        VerificationReport r = base_report();
        const FloatKernel kernel{ctx.work()};
        const SummationResult lhs =
            sum_slow_positive_richardson(lhs_term(false), well_poised_weight(), kernel, p, {512, 1024, 2048, 4096});
        auto g = [&](const Affine& x) { return gamma_at(x, p, ctx); };
        const BigFloat rhs = g(1 + A() - B()) * g(1 + A() - C()) * g(1 + A() - D()) * g(1 + A() - B() - C() - D()) /
                             (g(1 + A()) * g(1 + A() - B() - C()) * g(1 + A() - B() - D()) * g(1 + A() - C() - D()));
        r.strategy = lhs.strategy;
        r.terms = lhs.terms;
        numeric_compare(r, lhs.value, rhs, tol);
        return r;
    }
};

// ---------------------------------------------------------------------------
// The finite (6k+1) identity whose n -> infinity limit is the
// sqrt(2) Gamma(1/4)^2 (29 zeta(3) - pi^3) / pi^(5/2) series: the limit
// step is checked by extrapolating the closed side over a doubling n ladder.

class FiniteLimitIdentity : public TerminatingIdentity {
public:
    using Target = std::function<BigFloat(const EvalContext&)>;

    FiniteLimitIdentity(Info info, ExactExpr lhs, ExactExpr rhs, Target limit_target, Rational limit_tol)
        : TerminatingIdentity(std::move(info), std::move(lhs), rhs), rhs_(rhs), target_(std::move(limit_target)),
          limit_tol_(std::move(limit_tol)) {}

protected:
    VerificationReport do_verify_jet_limit(const Params& p, const EvalContext& ctx, int) const override {
        VerificationReport r = base_report();
        r.strategy = "limit-extrapolation";
        const FloatKernel kernel{ctx.work()};
        std::vector<BigFloat> row;
        for (long n = 64; n <= 1024; n *= 2) row.push_back(rhs_.eval(kernel, p, n));
        const SummationResult lim = richardson_table(std::move(row), Rational(1), Rational(1), ctx.work());
        const BigFloat target = target_(ctx);
        r.terms = 1024;
        numeric_compare(r, lim.value, target, limit_tol_);
        r.note = "closed side extrapolated over n = 64..1024";
        return r;
    }

private:
    ExactExpr rhs_;
    Target target_;
    Rational limit_tol_;
};

// ---------------------------------------------------------------------------
// catalog construction

inline std::shared_ptr<Identity> make_whipple_term() {
    Identity::Info info;
    info.id = "WHIPPLE_TERM";
    info.kind = "terminating-exact";
    info.source = "Whipple's 7F6 -> 4F3 transformation";
    info.defaults = make_params({{"a", r(1, 3)}, {"b", r(2, 5)}, {"c", r(-1, 2)}, {"d", r(3, 7)}, {"e", r(5, 4)}, {"n", r(7)}});
    info.param_order = {"a", "b", "c", "d", "e", "n"};
    TermSpec lt;
    lt.push_num(A()).push_num(B()).push_num(C()).push_num(D()).push_num(E()).push_num(-N());
    lt.push_den(Affine(1)).push_den(1 + A() - B()).push_den(1 + A() - C()).push_den(1 + A() - D());
    lt.push_den(1 + A() - E()).push_den(1 + A() + N());
    const WExpr lw = w_ratio({klin(A(), 2)}, {KPoly(A())});
    TermSpec rt;
    rt.push_num(1 + A() - B() - C()).push_num(D()).push_num(E()).push_num(-N());
    rt.push_den(Affine(1)).push_den(1 + A() - B()).push_den(1 + A() - C()).push_den(D() + E() - A() - N());
    const ExactExpr rhs = (ex_poch(1 + A()) * ex_poch(1 + A() - D() - E())) /
                              (ex_poch(1 + A() - D()) * ex_poch(1 + A() - E())) *
                          ex_sum(rt, WExpr{});
    return std::make_shared<TerminatingIdentity>(std::move(info), ex_sum(lt, lw), rhs);
}

inline std::shared_ptr<Identity> make_whipple_a() {
    Identity::Info info;
    info.id = "WHIPPLE_A";
    info.kind = "terminating-exact";
    info.source = "c-derivative of the b=1, d->d-c case of Whipple's transformation";
    info.defaults = make_params({{"a", r(1, 3)}, {"c", r(2, 7)}, {"d", r(5, 4)}, {"e", r(-2, 3)}, {"n", r(6)}});
    info.param_order = {"a", "c", "d", "e", "n"};

    TermSpec lt;
    lt.k0 = 1;
    lt.push_num(C()).push_num(D() - C()).push_num(E()).push_num(-N());
    lt.push_den(1 + A() - C()).push_den(1 + A() + C() - D()).push_den(1 + A() - E()).push_den(1 + A() + N());
    const WExpr lw = w_ratio({klin(A(), 2)}, {KPoly(A())}) *
                     (hk(C() - 1) - hk(D() - C() - 1) + hk(A() - C()) - hk(A() + C() - D()));

    TermSpec rt;
    rt.push_num(D() - C()).push_num(E()).push_num(-N());
    rt.push_den(Affine(1)).push_den(A()).push_den(D() + E() - A() - C() - N());
    const WExpr rw_base = w_ratio({KPoly(A() - C())}, {klin(A() - C())});
    TermSpec rt1 = rt;
    rt1.k0 = 1;
    const WExpr rw1 = rw_base * (hk(D() + E() - A() - C() - N() - 1) - hk(D() - C() - 1) -
                                 w_ratio({klin(Affine(0))}, {KPoly(A() - C()), klin(A() - C())}));
    const ExactExpr pref = (ex_poch(1 + A()) * ex_poch(1 + A() + C() - D() - E())) /
                           (ex_poch(1 + A() + C() - D()) * ex_poch(1 + A() - E()));
    const ExactExpr rhs =
        pref * (ExactExpr::harmonic_at_n(hnum(1, 1, A() + C() - D() - E())) -
                ExactExpr::harmonic_at_n(hnum(1, 1, A() + C() - D()))) *
            ex_sum(rt, rw_base) +
        pref * ex_sum(rt1, rw1);
    return std::make_shared<TerminatingIdentity>(std::move(info), ex_sum(lt, lw), rhs);
}

inline TermSpec whipple_c_lhs_term() {
    TermSpec t;
    t.k0 = 1;
    t.push_num(Affine(r(1, 2))).push_num(D() - r(1, 2)).push_num(r(3, 2) - D()).push_num(-N());
    t.push_den(Affine(1)).push_den(2 - D()).push_den(D()).push_den(r(3, 2) + N());
    return t;
}

inline TermSpec whipple_c_inner_term() {
    // (d-1/2)_k (3/2-d)_k (-n)_k / (k (1)_k (1/2)_k (1/2-n)_k), the 1/k in the weight
    TermSpec t;
    t.k0 = 1;
    t.push_num(D() - r(1, 2)).push_num(r(3, 2) - D()).push_num(-N());
    t.push_den(Affine(1)).push_den(Affine(r(1, 2))).push_den(r(1, 2) - N());
    return t;
}

inline std::shared_ptr<Identity> make_whipple_c() {
    Identity::Info info;
    info.id = "WHIPPLE_C";
    info.kind = "terminating-exact-jet";
    info.source = "Whipple descendant after dividing by 1-d and e -> 3/2-d";
    info.defaults = make_params({{"d", r(3, 5)}, {"n", r(6)}});
    info.param_order = {"d", "n"};
    info.has_jet_limit = true;

    const WExpr lw = w_poly(klin(1, 4)) * (cs(Affine(0), 1 - D()) - cs(Affine(r(-1, 2)), D() - r(3, 2)));
    const ExactExpr pref = (ex_poch(Affine(r(3, 2))) * ex_poch(Affine(r(1, 2)))) /
                           (ex_poch_len(1 - D(), 1, 1) * ex_poch(D()));
    const ExactExpr brace = ExactExpr::harmonic_at_n(hnum(1, 1, Affine(r(-1, 2)))) -
                            ExactExpr::harmonic_at_n(hnum(1, 1, 1 - D())) -
                            ex_sum(whipple_c_inner_term(), w_ratio({}, {klin(Affine(0))}));
    return std::make_shared<TerminatingIdentity>(std::move(info), ex_sum(whipple_c_lhs_term(), lw), pref * brace,
                                                 TerminatingIdentity::JetSpec{"d", Rational(1), 2});
}

inline std::shared_ptr<Identity> make_whipple_d() {
    Identity::Info info;
    info.id = "WHIPPLE_D";
    info.kind = "terminating-exact";
    info.source = "d-derivative of the divided Whipple descendant";
    info.defaults = make_params({{"d", r(3, 5)}, {"n", r(5)}});
    info.param_order = {"d", "n"};

    const WExpr bracket_h = hk(D() - r(3, 2)) - hk(r(1, 2) - D()) + hk(1 - D()) - hk(D() - 1);
    const WExpr bracket_cs = cs(Affine(0), 1 - D()) - cs(Affine(r(-1, 2)), D() - r(3, 2));
    const WExpr bracket_cs2 = cs2(Affine(0), 1 - D()) + cs2(Affine(r(-1, 2)), D() - r(3, 2));
    const WExpr lw = w_poly(klin(1, 4)) * (bracket_h * bracket_cs + bracket_cs2);

    const ExactExpr pref = (ex_poch(Affine(r(3, 2))) * ex_poch(Affine(r(1, 2)))) /
                           (ExactExpr(1 - D()) * ex_poch(2 - D()) * ex_poch(D()));
    const ExactExpr bracket1 = ExactExpr(1) / ExactExpr(1 - D()) +
                               ExactExpr::harmonic_at_n(hnum(1, 1, 1 - D())) -
                               ExactExpr::harmonic_at_n(hnum(1, 1, D() - 1));
    const ExactExpr brace1 = ExactExpr::harmonic_at_n(hnum(1, 1, Affine(r(-1, 2)))) -
                             ExactExpr::harmonic_at_n(hnum(1, 1, 1 - D())) -
                             ex_sum(whipple_c_inner_term(), w_ratio({}, {klin(Affine(0))}));
    const ExactExpr brace2 = ExactExpr::harmonic_at_n(hnum(1, 2, 1 - D())) +
                             ex_sum(whipple_c_inner_term(),
                                    w_ratio({}, {klin(Affine(0))}) * (hk(D() - r(3, 2)) - hk(r(1, 2) - D())));
    const ExactExpr rhs = pref * bracket1 * brace1 - pref * brace2;
    return std::make_shared<TerminatingIdentity>(std::move(info), ex_sum(whipple_c_lhs_term(), lw), rhs);
}

inline std::shared_ptr<Identity> make_whipple_e() {
    Identity::Info info;
    info.id = "WHIPPLE_E";
    info.kind = "terminating-exact";
    info.source = "2a=2c=d specialization: sum (e)_k(-n)_k/(k (1)_k (e-n)_k)";
    info.defaults = make_params({{"e", r(1, 3)}, {"n", r(7)}});
    info.param_order = {"e", "n"};
    TermSpec t;
    t.k0 = 1;
    t.push_num(E()).push_num(-N()).push_den(Affine(1)).push_den(E() - N());
    const ExactExpr rhs = ExactExpr::harmonic_at_n(hnum(1, 1, -E())) - ExactExpr::harmonic_at_n(hnum(1, 1));
    return std::make_shared<TerminatingIdentity>(std::move(info), ex_sum(t, w_ratio({}, {klin(Affine(0))})), rhs);
}

inline std::shared_ptr<Identity> make_finite_thm_a() {
    Identity::Info info;
    info.id = "FINITE_THM_A";
    info.kind = "terminating-exact";
    info.source = "finite (4k+1) H_{2k}^{(3)} identity from the double Whipple limit";
    info.defaults = make_params({{"n", r(8)}});
    info.param_order = {"n"};

    TermSpec lt;
    lt.k0 = 1;
    lt.push_num(Affine(r(1, 2))).push_num(Affine(r(1, 2))).push_num(Affine(r(1, 2))).push_num(-N());
    lt.push_den(Affine(1)).push_den(Affine(1)).push_den(Affine(1)).push_den(r(3, 2) + N());
    const WExpr lw = w_poly(klin(1, 4)) * hk_ord(2, 3);

    TermSpec it;
    it.k0 = 1;
    it.push_num(Affine(r(1, 2))).push_num(-N());
    it.push_den(Affine(1)).push_den(r(1, 2) - N());
    const WExpr iw = w_ratio({}, {klin(Affine(0))}) * (hk_ord(2, 2) * Rational(4) - hk_ord(1, 2));

    const ExactExpr rhs = (ex_poch(Affine(r(3, 2))) * ex_poch(Affine(r(1, 2)))) /
                          (ExactExpr(8) * ExactExpr::pow(ex_poch(Affine(1)), 2)) *
                          (ExactExpr::harmonic_at_n(hnum(1, 3)) - ex_sum(it, iw));
    return std::make_shared<TerminatingIdentity>(std::move(info), ex_sum(lt, lw), rhs);
}

inline BigFloat thm_b_closed_form(const EvalContext& ctx) {
    const unsigned work = ctx.work();
    const ConstantsTable& t = ConstantsTable::at(ctx);
    const BigFloat pi_w = pi_bits(work);
    const BigFloat num = sqrt_at(BigFloat(2L, work), work) * t.gamma_quarter.rounded(work) *
                         t.gamma_quarter.rounded(work) *
                         (BigFloat(29L, work) * t.zeta3.rounded(work) - pow_int_at(pi_w, 3, work));
    return num / (pi_w * pi_w * sqrt_at(pi_w, work));
}

inline std::shared_ptr<Identity> make_finite_thm_b() {
    Identity::Info info;
    info.id = "FINITE_THM_B";
    info.kind = "terminating-exact";
    info.source = "finite (6k+1) {64 H_{2k}^{(3)} - 7 H_k^{(3)}} identity (a=b=c=3/4 Gosper derivative)";
    info.defaults = make_params({{"n", r(8)}});
    info.param_order = {"n"};

    TermSpec lt;
    lt.k0 = 1;
    for (int i = 0; i < 3; ++i) lt.push_num(Affine(r(1, 2)));
    lt.push_num(Affine(r(1, 4))).push_num(r(3, 4) + N()).push_num(-N());
    for (int i = 0; i < 4; ++i) lt.push_den(Affine(1));
    lt.push_den(r(3, 2) + 2 * N()).push_den(-2 * N());
    const WExpr lw = w_poly(klin(1, 6)) * (hk_ord(2, 3) * Rational(64) - hk_ord(1, 3) * Rational(7));

    const ExactExpr rhs = (ExactExpr::pow(ex_poch(Affine(r(3, 4))), 3) * ex_poch(Affine(r(5, 4)))) /
                          (ExactExpr::pow(ex_poch(Affine(1)), 3) * ex_poch(Affine(r(1, 2)))) *
                          (ExactExpr::harmonic_at_n(hnum(1, 3)) + ExactExpr::harmonic_at_n(hnum(1, 3, Affine(r(-1, 4)))));
    Identity::Info info2 = info;
    return std::make_shared<FiniteLimitIdentity>(std::move(info2), ex_sum(lt, lw), rhs, thm_b_closed_form,
                                                 Rational(1, Int(10000000)) /* 1e-7 */);
}

inline std::shared_ptr<Identity> make_gosper() {
    Identity::Info info;
    info.id = "GOSPER_7F6";
    info.kind = "terminating-exact";
    info.source = "Gosper's terminating 7F6 summation (1977)";
    info.defaults = make_params({{"a", r(1, 4)}, {"b", r(1, 3)}, {"c", r(2, 5)}, {"n", r(5)}});
    info.param_order = {"a", "b", "c", "n"};
    TermSpec t;
    t.push_num(A() - r(1, 2)).push_num((2 * A() + 2) / 3).push_num(2 * B() - 1).push_num(2 * C() - 1);
    t.push_num(2 + 2 * A() - 2 * B() - 2 * C()).push_num(A() + N()).push_num(-N());
    t.push_den(Affine(1)).push_den((2 * A() - 1) / 3).push_den(1 + A() - B()).push_den(1 + A() - C());
    t.push_den(B() + C() - r(1, 2)).push_den(2 * A() + 2 * N()).push_den(-2 * N());
    const ExactExpr rhs = (ex_poch(A() + r(1, 2)) * ex_poch(B()) * ex_poch(C()) * ex_poch(A() - B() - C() + r(3, 2))) /
                          (ex_poch(Affine(r(1, 2))) * ex_poch(1 + A() - B()) * ex_poch(1 + A() - C()) *
                           ex_poch(B() + C() - r(1, 2)));
    return std::make_shared<TerminatingIdentity>(std::move(info), ex_sum(t, WExpr{}), rhs);
}

inline std::shared_ptr<Identity> make_gosper_b() {
    Identity::Info info;
    info.id = "GOSPER_B";
    info.kind = "terminating-exact";
    info.source = "b-derivative of Gosper's 7F6 summation, divided by 3/2+a-2b-c";
    info.defaults = make_params({{"a", r(1, 4)}, {"b", r(1, 3)}, {"c", r(2, 5)}, {"n", r(5)}});
    info.param_order = {"a", "b", "c", "n"};
    TermSpec t;
    t.k0 = 1;
    t.push_num(A() - r(1, 2)).push_num((2 * A() + 2) / 3).push_num(2 * B() - 1).push_num(2 * C() - 1);
    t.push_num(2 + 2 * A() - 2 * B() - 2 * C()).push_num(A() + N()).push_num(-N());
    t.push_den(Affine(1)).push_den((2 * A() - 1) / 3).push_den(1 + A() - B()).push_den(1 + A() - C());
    t.push_den(B() + C() - r(1, 2)).push_den(2 * A() + 2 * N()).push_den(-2 * N());
    const WExpr lw = cs(2 * B() - 2, 1 + 2 * A() - 2 * B() - 2 * C()) * Rational(4) - cs(A() - B(), B() + C() - r(3, 2));
    const ExactExpr pref = (ex_poch(A() + r(1, 2)) * ex_poch(B()) * ex_poch(C()) * ex_poch(A() - B() - C() + r(3, 2))) /
                           (ex_poch(Affine(r(1, 2))) * ex_poch(1 + A() - B()) * ex_poch(1 + A() - C()) *
                            ex_poch(B() + C() - r(1, 2)));
    const ExactExpr rhs = pref * (ExactExpr::harmonic_at_n(hsum(1, {{B() - 1, 1}, {A() - B() - C() + r(1, 2), 1}})) -
                                  ExactExpr::harmonic_at_n(hsum(1, {{A() - B(), 1}, {B() + C() - r(3, 2), 1}})));
    return std::make_shared<TerminatingIdentity>(std::move(info), ex_sum(t, lw), rhs);
}

inline std::shared_ptr<Identity> make_dougall() {
    Identity::Info info;
    info.id = "DOUGALL_5F4";
    info.kind = "terminating-exact";
    info.source = "Dougall's very well poised 5F4 summation";
    info.defaults = make_params({{"a", r(2, 3)}, {"b", r(1, 3)}, {"c", r(1, 4)}, {"n", r(6)}});
    info.param_order = {"a", "b", "c", "d", "n"};
    info.tolerance = Rational(1, boost::multiprecision::pow(Int(10), 10));
    return std::make_shared<DougallIdentity>(std::move(info));
}

// ---------------------------------------------------------------------------
// infinite series

inline TermSpec half_pow_term(int count, Rational z, long k0) {
    TermSpec t;
    t.z = std::move(z);
    t.k0 = k0;
    for (int i = 0; i < count; ++i) t.push_num(Affine(r(1, 2)));
    for (int i = 0; i < count; ++i) t.push_den(Affine(1));
    return t;
}

inline std::shared_ptr<Identity> make_bauer() {
    Identity::Info info;
    info.id = "BAUER";
    info.kind = "infinite-numeric";
    info.source = "Bauer's alternating (4k+1) series for 2/pi";
    info.tolerance = Rational(1, boost::multiprecision::pow(Int(10), 20));
    info.max_terms = 96;
    const CF rhs = [](const Params&, const EvalContext& ctx) {
        return divided(BigFloat(2L, ctx.work()), pi_bits(ctx.work()), ctx.work());
    };
    return std::make_shared<SeriesVsClosedIdentity>(std::move(info), half_pow_term(3, Rational(-1), 0),
                                                    w_poly(klin(1, 4)), SeriesVsClosedIdentity::How::Crvz, rhs);
}

inline std::shared_ptr<Identity> make_thm_a() {
    Identity::Info info;
    info.id = "THM_A";
    info.kind = "infinite-numeric";
    info.source = "alternating (4k+1) H_{2k}^{(3)} series: 15 zeta(3)/(4 pi) - 2G";
    info.tolerance = Rational(1, boost::multiprecision::pow(Int(10), 18));
    info.max_terms = 96;
    info.quick = false;
    const CF rhs = [](const Params&, const EvalContext& ctx) {
        const unsigned work = ctx.work();
        const ConstantsTable& t = ConstantsTable::at(ctx);
        return BigFloat(15L, work) * t.zeta3.rounded(work) / ldexp2(pi_bits(work), 2) -
               ldexp2(t.catalan.rounded(work), 1);
    };
    return std::make_shared<SeriesVsClosedIdentity>(std::move(info), half_pow_term(3, Rational(-1), 1),
                                                    w_poly(klin(1, 4)) * hk_ord(2, 3),
                                                    SeriesVsClosedIdentity::How::Crvz, rhs);
}

inline std::shared_ptr<Identity> make_thm_b() {
    Identity::Info info;
    info.id = "THM_B";
    info.kind = "infinite-numeric";
    info.source = "(6k+1){64 H_{2k}^{(3)} - 7 H_k^{(3)}} series";
    info.tolerance = Rational(1, boost::multiprecision::pow(Int(10), 30));
    info.max_terms = 120;
    TermSpec t = half_pow_term(3, r(1, 4), 1);
    t.push_num(Affine(r(1, 4)));
    t.push_den(Affine(1));
    const WExpr w = w_poly(klin(1, 6)) * (hk_ord(2, 3) * Rational(64) - hk_ord(1, 3) * Rational(7));
    const CF rhs = [](const Params&, const EvalContext& ctx) { return thm_b_closed_form(ctx); };
    return std::make_shared<SeriesVsClosedIdentity>(std::move(info), std::move(t), w,
                                                    SeriesVsClosedIdentity::How::Direct, rhs);
}

inline std::shared_ptr<Identity> make_thm_c() {
    Identity::Info info;
    info.id = "THM_C";
    info.kind = "infinite-numeric";
    info.source = "(20k^2+8k+1) H_k^{(3)} + 8/(2k+1) series: 64 zeta(3)/pi^2";
    info.tolerance = Rational(1, boost::multiprecision::pow(Int(10), 30));
    info.max_terms = 120;
    const WExpr w = w_poly(kquad(1, 8, 20)) * hk_ord(1, 3) + w_ratio({}, {klin(1, 2)}, Rational(8));
    const CF rhs = [](const Params&, const EvalContext& ctx) {
        const unsigned work = ctx.work();
        const BigFloat pi_w = pi_bits(work);
        return BigFloat(64L, work) * ConstantsTable::at(ctx).zeta3.rounded(work) / (pi_w * pi_w);
    };
    return std::make_shared<SeriesVsClosedIdentity>(std::move(info), half_pow_term(5, r(-1, 4), 0), w,
                                                    SeriesVsClosedIdentity::How::Direct, rhs);
}

inline std::shared_ptr<Identity> make_thm_d() {
    Identity::Info info;
    info.id = "THM_D";
    info.kind = "infinite-numeric";
    info.source = "(820k^2+180k+13)[9 H_{2k}^{(3)} - H_k^{(3)}] + 125/(2k+1) series: 1024 zeta(3)/pi^2";
    info.tolerance = Rational(1, boost::multiprecision::pow(Int(10), 40));
    info.max_terms = 60;
    const WExpr w = w_poly(kquad(13, 180, 820)) * (hk_ord(2, 3) * Rational(9) - hk_ord(1, 3)) +
                    w_ratio({}, {klin(1, 2)}, Rational(125));
    const CF rhs = [](const Params&, const EvalContext& ctx) {
        const unsigned work = ctx.work();
        const BigFloat pi_w = pi_bits(work);
        return BigFloat(1024L, work) * ConstantsTable::at(ctx).zeta3.rounded(work) / (pi_w * pi_w);
    };
    return std::make_shared<SeriesVsClosedIdentity>(std::move(info), half_pow_term(5, r(-1, 1024), 0), w,
                                                    SeriesVsClosedIdentity::How::Direct, rhs);
}

inline std::shared_ptr<Identity> make_guillera(int which) {
    Identity::Info info;
    info.id = which == 1 ? "GUILLERA1" : "GUILLERA2";
    info.kind = "infinite-numeric";
    info.source = which == 1 ? "Guillera's (20k^2+8k+1) binomial series for 8/pi^2"
                             : "Guillera's (820k^2+180k+13) binomial series for 128/pi^2";
    info.tolerance = Rational(1, boost::multiprecision::pow(Int(10), 30));
    info.max_terms = 200;
    const WExpr w = which == 1 ? w_poly(kquad(1, 8, 20)) : w_poly(kquad(13, 180, 820));
    const long target = which == 1 ? 8 : 128;
    const CF rhs = [target](const Params&, const EvalContext& ctx) {
        const unsigned work = ctx.work();
        const BigFloat pi_w = pi_bits(work);
        return BigFloat(target, work) / (pi_w * pi_w);
    };
    return std::make_shared<SeriesVsClosedIdentity>(std::move(info),
                                                    half_pow_term(5, which == 1 ? r(-1, 4) : r(-1, 1024), 0), w,
                                                    SeriesVsClosedIdentity::How::Direct, rhs);
}

inline BigFloat lemma21_value(const EvalContext& ctx) {
    const unsigned work = ctx.work();
    const ConstantsTable& t = ConstantsTable::at(ctx);
    return ldexp2(pi_bits(work) * t.catalan.rounded(work), 3) - BigFloat(14L, work) * t.zeta3.rounded(work);
}

inline std::shared_ptr<Identity> make_lemma21_series() {
    Identity::Info info;
    info.id = "LEMMA21_SERIES";
    info.kind = "infinite-numeric";
    info.source = "{4 H_{2k}^{(2)} - H_k^{(2)}}/k central binomial series: 8 pi G - 14 zeta(3)";
    info.tolerance = Rational(1, boost::multiprecision::pow(Int(10), 6));
    info.quick = false;
    TermSpec t;
    t.k0 = 1;
    t.push_num(Affine(r(1, 2))).push_den(Affine(1));
    const WExpr w = w_ratio({}, {klin(Affine(0))}) * (hk_ord(2, 2) * Rational(4) - hk_ord(1, 2));
    const CF rhs = [](const Params&, const EvalContext& ctx) { return lemma21_value(ctx); };
    return std::make_shared<SeriesVsClosedIdentity>(std::move(info), std::move(t), w,
                                                    SeriesVsClosedIdentity::How::Richardson, rhs,
                                                    std::vector<unsigned long>{250000, 500000, 1000000, 2000000});
}

inline std::shared_ptr<Identity> make_lemma21_integral() {
    Identity::Info info;
    info.id = "LEMMA21_INTEGRAL";
    info.kind = "integral";
    info.source = "int_0^{pi/2} 4 t^2 / sin t dt = 8 pi G - 14 zeta(3)";
    info.tolerance = Rational(1, boost::multiprecision::pow(Int(10), 30));
    info.quick = false;
    Integrand f = [](const BigFloat& x, const BigFloat&, const BigFloat&, unsigned work) {
        return ldexp2(x * x, 2) / sin(x, work);
    };
    IntegralIdentity::Bound a = [](unsigned work) { return BigFloat(0L, work); };
    IntegralIdentity::Bound b = [](unsigned work) { return ldexp2(pi_bits(work), -1); };
    const IntegralIdentity::ClosedForm rhs = [](const Params&, const EvalContext& ctx) { return lemma21_value(ctx); };
    return std::make_shared<IntegralIdentity>(std::move(info), std::move(f), std::move(a), std::move(b), rhs);
}

inline std::shared_ptr<Identity> make_sun_power_series() {
    Identity::Info info;
    info.id = "SUN_POWER_SERIES";
    info.kind = "infinite-numeric";
    info.source = "4 arcsin(x/2)^2/sqrt(4-x^2) power series at z=(x/2)^2";
    info.defaults = make_params({{"z", r(1, 4)}});
    info.param_order = {"z"};
    info.tolerance = Rational(1, boost::multiprecision::pow(Int(10), 20));
    return std::make_shared<PowerSeriesPointIdentity>(std::move(info));
}

inline std::shared_ptr<Identity> make_he_cong() {
    Identity::Info info;
    info.id = "HE_CONG";
    info.kind = "padic";
    info.source = "(6k+1)/4^k supercongruence mod p^2 at primes 1 mod 4";
    info.defaults = make_params({{"p", r(13)}});
    info.param_order = {"p"};
    return std::make_shared<PadicIdentity>(std::move(info));
}

// ---------------------------------------------------------------------------
// Chu transformation identities

inline std::shared_ptr<Identity> make_chu_t9() {
    Identity::Info info;
    info.id = "CHU_T9";
    info.kind = "infinite-numeric";
    info.source = "Chu's alpha_k transformation for very well poised 5F4 series";
    info.defaults = make_params({{"a", r(1)}, {"b", r(1, 4)}, {"c", r(1, 4)}, {"d", r(1, 4)}, {"e", r(1, 4)}});
    info.param_order = {"a", "b", "c", "d", "e"};
    info.tolerance = Rational(1, boost::multiprecision::pow(Int(10), 8));
    info.quick = false;

    TermSpec lt;
    lt.z = Rational(-1);
    lt.push_num(C()).push_num(D()).push_num(E());
    lt.push_num(1 + A() - B() - C()).push_num(1 + A() - B() - D()).push_num(1 + A() - B() - E());
    lt.push_den(1 + A() - C()).push_den(1 + A() - D()).push_den(1 + A() - E());
    lt.push_den(1 + 2 * A() - B() - C() - D() - E());
    lt.push_den(1 + A() - B(), 2);
    const WExpr alpha =
        w_ratio({klin(1 + 2 * A() - B() - C() - D(), 2), klin(A() - E())}, {klin(1 + 2 * A() - B() - C() - D() - E())}) +
        w_ratio({klin(1 + A() - B() - C()), klin(1 + A() - B() - D()), klin(E())},
                {klin(1 + A() - B(), 2), klin(1 + 2 * A() - B() - C() - D() - E())});

    TermSpec rt;
    rt.push_num(B()).push_num(C()).push_num(D()).push_num(E());
    rt.push_den(1 + A() - B()).push_den(1 + A() - C()).push_den(1 + A() - D()).push_den(1 + A() - E());
    const WExpr rw = w_poly(klin(A(), 2));
    return std::make_shared<SeriesVsSeriesIdentity>(std::move(info), std::move(lt), alpha, std::move(rt), rw,
                                                    std::vector<unsigned long>{512, 1024, 2048, 4096, 8192});
}

inline std::shared_ptr<Identity> make_chu_t9_b() {
    Identity::Info info;
    info.id = "CHU_T9_B";
    info.kind = "infinite-numeric";
    info.source = "beta_k form of Chu's transformation after b=a and parameter shifts";
    info.defaults = make_params({{"a", r(1, 2)}, {"c", r(1, 3)}, {"d", r(1, 2)}, {"e", r(3, 4)}});
    info.param_order = {"a", "c", "d", "e"};
    info.tolerance = Rational(1, boost::multiprecision::pow(Int(10), 25));
    info.max_terms = 400;

    TermSpec t;
    t.z = r(-1, 4);
    t.push_num(C()).push_num(D() - C()).push_num(E() - D());
    t.push_num(1 - C()).push_num(1 + C() - D()).push_num(1 + D() - E());
    t.push_den(Affine(r(1, 2))).push_den(Affine(1)).push_den(1 + A() - C());
    t.push_den(1 + A() + C() - D()).push_den(1 + A() + D() - E()).push_den(2 + A() - E());
    const WExpr beta = w_ratio({klin(1 + A() - D(), 2), klin(A() + D() - E())}, {}) +
                       w_ratio({klin(1 - C()), klin(1 + C() - D()), klin(E() - D())}, {klin(1, 2)});
    const CF rhs = [](const Params& p, const EvalContext& ctx) {
        auto g = [&](const Affine& x) { return gamma_at(x, p, ctx); };
        return g(1 + A() - C()) * g(1 + A() + C() - D()) * g(1 + A() + D() - E()) * g(2 + A() - E()) /
               (g(A()) * g(1 + A() - D()) * g(1 + A() + C() - E()) * g(1 + A() - C() + D() - E()));
    };
    return std::make_shared<SeriesVsClosedIdentity>(std::move(info), std::move(t), beta,
                                                    SeriesVsClosedIdentity::How::Direct, rhs);
}

inline std::shared_ptr<Identity> make_chu_t9_c() {
    Identity::Info info;
    info.id = "CHU_T9_C";
    info.kind = "infinite-numeric-jet";
    info.source = "c-derivative descendant with the psi-quotient closed form (d near 1)";
    info.defaults = make_params({{"d", r(4, 3)}});
    info.param_order = {"d"};
    info.tolerance = Rational(1, boost::multiprecision::pow(Int(10), 25));
    info.max_terms = 400;
    info.has_jet_limit = true;

    TermSpec t;
    t.z = r(-1, 4);
    t.push_num(Affine(r(1, 2)));
    t.push_num(D() - r(1, 2)).push_num(D() - r(1, 2)).push_num(r(3, 2) - D()).push_num(r(3, 2) - D());
    t.push_den(Affine(1)).push_den(Affine(1)).push_den(Affine(1));
    t.push_den(D()).push_den(2 - D());
    const WExpr bracket = cs(Affine(r(-1, 2)), D() - r(3, 2)) + cs(Affine(r(-1, 2)), r(1, 2) - D()) -
                          cs(Affine(0), 1 - D());
    const WExpr w = w_ratio({klin(r(3, 2) - D())}, {klin(1, 2)}) +
                    (w_poly(kquad(0, 1, r(5, 2))) +
                     w_ratio({KPoly(2 * D() - 1), KPoly(2 * D() - 3)}, {}, r(-1, 8))) *
                        bracket;

    ChuLimitIdentity::LimitSpec limit;
    limit.var = "d";
    limit.base = Rational(1);
    limit.front = Rational(1);
    limit.reproduction_scale = Rational(-8);
    limit.reproduction_target = [](const EvalContext& ctx) {
        const unsigned work = ctx.work();
        const BigFloat pi_w = pi_bits(work);
        return BigFloat(64L, work) * ConstantsTable::at(ctx).zeta3.rounded(work) / (pi_w * pi_w);
    };
    limit.jet_tolerance = Rational(1, boost::multiprecision::pow(Int(10), 15));
    return std::make_shared<ChuLimitIdentity>(std::move(info), std::move(t), w, std::move(limit));
}

inline std::shared_ptr<Identity> make_chu_t31() {
    Identity::Info info;
    info.id = "CHU_T31";
    info.kind = "infinite-numeric";
    info.source = "Chu's mu_k (stride-2) transformation for very well poised 5F4 series";
    info.defaults = make_params({{"a", r(1)}, {"b", r(1, 4)}, {"c", r(1, 4)}, {"d", r(1, 4)}, {"e", r(1, 4)}});
    info.param_order = {"a", "b", "c", "d", "e"};
    info.tolerance = Rational(1, boost::multiprecision::pow(Int(10), 8));
    info.quick = false;

    TermSpec lt;
    lt.z = Rational(-1);
    lt.push_num(B()).push_num(C()).push_num(D()).push_num(E());
    lt.push_num(1 + A() - B() - C()).push_num(1 + A() - B() - D()).push_num(1 + A() - B() - E());
    lt.push_num(1 + A() - C() - D()).push_num(1 + A() - C() - E()).push_num(1 + A() - D() - E());
    lt.push_den(1 + A() - B(), 2).push_den(1 + A() - C(), 2).push_den(1 + A() - D(), 2).push_den(1 + A() - E(), 2);
    lt.push_den(1 + 2 * A() - B() - C() - D() - E(), 2);

    const Affine s1 = 1 + 2 * A() - B() - C() - D() - E();
    const WExpr mu1 = w_ratio({klin(1 + 2 * A() - B() - C() - D(), 3), klin(A() - E(), 2)}, {klin(s1, 2)});
    const WExpr mu2 = w_ratio({klin(E()), klin(1 + A() - B() - C()), klin(1 + A() - B() - D()),
                               klin(1 + A() - C() - D()), klin(2 + 2 * A() - B() - D() - E(), 3)},
                              {klin(1 + A() - B(), 2), klin(1 + A() - D(), 2), klin(s1, 2), klin(1 + s1, 2)});
    const WExpr mu3 = w_ratio({klin(C()), klin(E()), klin(1 + A() - B() - C()), klin(1 + A() - B() - D()),
                               klin(1 + A() - B() - E()), klin(1 + A() - C() - D()), klin(1 + A() - D() - E())},
                              {klin(1 + A() - B(), 2), klin(1 + A() - C(), 2), klin(1 + A() - D(), 2),
                               klin(1 + A() - E(), 2), klin(s1, 2), klin(1 + s1, 2)});

    TermSpec rt;
    rt.push_num(B()).push_num(C()).push_num(D()).push_num(E());
    rt.push_den(1 + A() - B()).push_den(1 + A() - C()).push_den(1 + A() - D()).push_den(1 + A() - E());
    const WExpr rw = w_poly(klin(A(), 2));
    return std::make_shared<SeriesVsSeriesIdentity>(std::move(info), std::move(lt), mu1 + mu2 + mu3, std::move(rt),
                                                    rw, std::vector<unsigned long>{512, 1024, 2048, 4096, 8192});
}

inline std::shared_ptr<Identity> make_chu_t31_e() {
    Identity::Info info;
    info.id = "CHU_T31_E";
    info.kind = "infinite-numeric";
    info.source = "theta_k form of the stride-2 transformation after e=a and shifts";
    info.defaults = make_params({{"a", r(1, 2)}, {"b", r(1, 3)}, {"c", r(3, 4)}, {"d", r(1, 5)}});
    info.param_order = {"a", "b", "c", "d"};
    info.tolerance = Rational(1, boost::multiprecision::pow(Int(10), 25));
    info.max_terms = 200;

    TermSpec t;
    t.z = Rational(-1);
    t.push_num(A()).push_num(B()).push_num(C() - B()).push_num(D() - C());
    t.push_num(1 - B()).push_num(1 + B() - C()).push_num(1 + C() - D());
    t.push_num(1 + A() - C()).push_num(1 + A() - B() + C() - D()).push_num(1 + A() + B() - D());
    t.push_den(Affine(1), 2).push_den(1 + A() - B(), 2).push_den(1 + A() + B() - C(), 2);
    t.push_den(1 + A() + C() - D(), 2).push_den(2 + A() - D(), 2);

    const WExpr th1 = w_ratio({klin(Affine(0)), klin(1 + 2 * A() - D(), 3)}, {KPoly(A())}, Rational(2));
    const WExpr th2 = w_ratio({klin(A()), klin(1 + A() - C()), klin(1 + A() - B() + C() - D()),
                               klin(1 + A() + B() - D()), klin(2 + A() - B() + C() - D(), 3)},
                              {KPoly(A()), klin(1 + A() - B(), 2), klin(1 + A() + C() - D(), 2), klin(2 + A() - D(), 2)});
    const WExpr th3 = w_ratio({klin(A()), klin(C() - B()), klin(1 - B()), klin(1 + C() - D()), klin(1 + A() - C()),
                               klin(1 + A() - B() + C() - D()), klin(1 + A() + B() - D())},
                              {KPoly(A()), klin(1, 2), klin(1 + A() - B(), 2), klin(1 + A() + B() - C(), 2),
                               klin(1 + A() + C() - D(), 2), klin(2 + A() - D(), 2)});
    const CF rhs = [](const Params& p, const EvalContext& ctx) {
        auto g = [&](const Affine& x) { return gamma_at(x, p, ctx); };
        return g(1 + A() - B()) * g(1 + A() + B() - C()) * g(1 + A() + C() - D()) * g(2 + A() - D()) /
               (g(1 + A()) * g(1 + A() - C()) * g(1 + A() - B() + C() - D()) * g(1 + A() + B() - D()));
    };
    return std::make_shared<SeriesVsClosedIdentity>(std::move(info), std::move(t), th1 + th2 + th3,
                                                    SeriesVsClosedIdentity::How::Direct, rhs);
}

inline std::shared_ptr<Identity> make_chu_t31_f() {
    Identity::Info info;
    info.id = "CHU_T31_F";
    info.kind = "infinite-numeric-jet";
    info.source = "b-derivative descendant with the psi-quotient closed form (c near 1)";
    info.defaults = make_params({{"c", r(4, 3)}});
    info.param_order = {"c"};
    info.tolerance = Rational(1, boost::multiprecision::pow(Int(10), 20));
    info.max_terms = 200;
    info.has_jet_limit = true;

    TermSpec t;
    t.z = Rational(-1);
    for (int i = 0; i < 4; ++i) t.push_num(Affine(r(1, 2)));
    for (int i = 0; i < 3; ++i) t.push_num(C() - r(1, 2));
    for (int i = 0; i < 3; ++i) t.push_num(r(3, 2) - C());
    for (int i = 0; i < 3; ++i) t.push_den(Affine(1), 2);
    t.push_den(C(), 2).push_den(2 - C(), 2);

    const WExpr lam = w_ratio({klin(Affine(0)), klin(1, 6)}, {}, Rational(2)) +
                      w_ratio({klin(3 - 2 * C(), 2), klin(2 * C() - 1, 2), klin(1 + 2 * C(), 6)},
                              {klin(C(), 2)}, r(1, 16)) +
                      w_ratio({klin(3 - 2 * C(), 2), klin(2 * C() - 1, 2), klin(2 * C() - 1, 2), klin(2 * C() - 1, 2)},
                              {klin(C(), 2), klin(2 - C(), 2)}, r(1, 64));
    const std::vector<KPoly> om_den = {klin(1, 2), klin(C(), 2), klin(2 - C(), 2), klin(2 - C(), 2)};
    const WExpr om = w_ratio({klin(3 - 2 * C(), 2), klin(3 - 2 * C(), 2), kquad(19, 164, 172)}, om_den, r(1, 64)) +
                     w_ratio({klin(3 - 2 * C(), 2), klin(3 - 2 * C(), 2), KPoly(C()), klin(44, 8)}, om_den, r(1, 64)) +
                     w_ratio({klin(3 - 2 * C(), 2), klin(3 - 2 * C(), 2), KPoly(C()), KPoly(C())}, om_den, r(-20, 64));
    const WExpr bracket = cs(Affine(r(-1, 2)), C() - r(3, 2)) * Rational(2) - cs(Affine(r(-1, 2)), r(1, 2) - C()) -
                          w_h(hsum(2, {{Affine(0), 1}, {1 - C(), 1}}));
    const WExpr w = lam + om * bracket;

    ChuLimitIdentity::LimitSpec limit;
    limit.var = "c";
    limit.base = Rational(1);
    limit.front = Rational(2);
    limit.reproduction_scale = Rational(-64);
    limit.reproduction_target = [](const EvalContext& ctx) {
        const unsigned work = ctx.work();
        const BigFloat pi_w = pi_bits(work);
        return BigFloat(1024L, work) * ConstantsTable::at(ctx).zeta3.rounded(work) / (pi_w * pi_w);
    };
    limit.jet_tolerance = Rational(1, boost::multiprecision::pow(Int(10), 12));
    return std::make_shared<ChuLimitIdentity>(std::move(info), std::move(t), w, std::move(limit));
}

} // namespace reg

// ---------------------------------------------------------------------------

inline const std::map<std::string, std::shared_ptr<Identity>>& registry() {
    static const std::map<std::string, std::shared_ptr<Identity>> reg_map = [] {
        std::map<std::string, std::shared_ptr<Identity>> m;
        auto add = [&](std::shared_ptr<Identity> id) { m[id->info().id] = std::move(id); };
        add(reg::make_bauer());
        add(reg::make_guillera(1));
        add(reg::make_guillera(2));
        add(reg::make_he_cong());
        add(reg::make_thm_a());
        add(reg::make_thm_b());
        add(reg::make_thm_c());
        add(reg::make_thm_d());
        add(reg::make_lemma21_series());
        add(reg::make_lemma21_integral());
        add(reg::make_sun_power_series());
        add(reg::make_whipple_term());
        add(reg::make_whipple_a());
        add(reg::make_whipple_c());
        add(reg::make_whipple_d());
        add(reg::make_whipple_e());
        add(reg::make_finite_thm_a());
        add(reg::make_finite_thm_b());
        add(reg::make_gosper());
        add(reg::make_gosper_b());
        add(reg::make_dougall());
        add(reg::make_chu_t9());
        add(reg::make_chu_t9_b());
        add(reg::make_chu_t9_c());
        add(reg::make_chu_t31());
        add(reg::make_chu_t31_e());
        add(reg::make_chu_t31_f());
        return m;
    }();
    return reg_map;
}

inline const Identity& find_identity(const std::string& id) {
    const auto& m = registry();
    const auto it = m.find(id);
    if (it == m.end()) throw UnknownIdentity("unknown identity: " + id);
    return *it->second;
}

inline VerificationReport verify(const std::string& id, const Params& params, const EvalContext& ctx,
                                 std::optional<Rational> tol = {}) {
    return find_identity(id).verify(params, ctx, std::move(tol));
}

inline VerificationReport verify_jet_limit(const std::string& id, const Params& params, const EvalContext& ctx,
                                           int order = -1) {
    return find_identity(id).verify_jet_limit(params, ctx, order);
}

// quick profile: every exact identity at its default n plus the
// geometric-ratio series (and the p-adic instance) at 1e-15
inline std::vector<VerificationReport> verify_all_quick(const EvalContext& ctx) {
    std::vector<VerificationReport> out;
    const Rational quick_tol(1, boost::multiprecision::pow(Int(10), 15));
    for (const auto& [id, ident] : registry()) {
        if (!ident->info().quick) continue;
        const bool exactish = ident->info().tolerance == 0;
        try {
            out.push_back(ident->verify(Params{}, ctx, exactish ? std::optional<Rational>{} : quick_tol));
        } catch (const Error& e) {
            VerificationReport r;
            r.id = id;
            r.kind = ident->info().kind;
            r.pass = false;
            r.note = e.what();
            out.push_back(std::move(r));
        }
    }
    return out;
}

} // namespace hyperver
