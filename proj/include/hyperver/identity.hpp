#pragma once

// Identity descriptors and the verification drivers. Each identity knows
// how to evaluate both of its sides (exact, jet, numeric, integral, or
// mod p^2) and produces a structured report.

#include <chrono>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperver/accel.hpp"
#include "hyperver/constants.hpp"
#include "hyperver/exactexpr.hpp"
#include "hyperver/padic.hpp"
#include "hyperver/quadrature.hpp"
#include "hyperver/series.hpp"

namespace hyperver {

struct VerificationReport {
    std::string id;
    std::string kind;
    std::string strategy;
    std::vector<std::pair<std::string, std::string>> params; // rendered, ordered
    bool pass = false;
    bool exact = false;
    std::string lhs, rhs;
    std::string abs_diff; // "0" for exact matches
    Rational tolerance{0};
    long terms = 0;
    unsigned precision = 0;
    double ms = 0.0;
    std::string note;
};

class Identity {
public:
    struct Info {
        std::string id;
        std::string kind;
        std::string source; // where the identity comes from in the literature
        Params defaults;
        std::vector<std::string> param_order;
        Rational tolerance{0}; // 0 means exact equality
        long max_terms = 0;
        bool quick = true;
        bool has_jet_limit = false;
    };

    explicit Identity(Info info) : info_(std::move(info)) {}
    virtual ~Identity() = default;

    const Info& info() const { return info_; }

    VerificationReport verify(const Params& overrides, const EvalContext& ctx,
                              std::optional<Rational> tol_override = {}) const {
        const auto t0 = std::chrono::steady_clock::now();
        VerificationReport r = do_verify(merged(overrides), ctx, tol_override.value_or(info_.tolerance));
        finish(r, overrides, ctx, t0);
        return r;
    }

    // Evaluates the identity with one parameter replaced by base + epsilon
    // (or the designated limit procedure) and compares jet coefficients.
    VerificationReport verify_jet_limit(const Params& overrides, const EvalContext& ctx, int order = -1) const {
        const auto t0 = std::chrono::steady_clock::now();
        VerificationReport r = do_verify_jet_limit(merged(overrides), ctx, order);
        finish(r, overrides, ctx, t0);
        return r;
    }

protected:
    virtual VerificationReport do_verify(const Params& p, const EvalContext& ctx, const Rational& tol) const = 0;

    virtual VerificationReport do_verify_jet_limit(const Params&, const EvalContext&, int) const {
        throw UnknownIdentity("identity " + info_.id + " has no jet-limit form");
    }

    Params merged(const Params& overrides) const {
        Params p = info_.defaults;
        for (const auto& [k, v] : overrides.values) p.values[k] = v;
        return p;
    }

    VerificationReport base_report() const {
        VerificationReport r;
        r.id = info_.id;
        r.kind = info_.kind;
        return r;
    }

private:
    void finish(VerificationReport& r, const Params& overrides, const EvalContext& ctx,
                std::chrono::steady_clock::time_point t0) const {
        const Params p = merged(overrides);
        for (const auto& name : info_.param_order) {
            if (p.has(name)) r.params.emplace_back(name, to_string(p.at(name)));
        }
        r.precision = ctx.prec;
        r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }

    Info info_;
};

// ---------------------------------------------------------------------------
// helpers shared by the drivers

inline long require_small_int(const Params& p, const std::string& name) {
    const Rational v = p.at(name);
    if (!is_integer(v)) throw ParamOutOfDomain(name + " must be an integer");
    return to_long(v);
}

inline void numeric_compare(VerificationReport& r, const BigFloat& lhs, const BigFloat& rhs, const Rational& tol) {
    const BigFloat diff = abs(lhs - rhs);
    r.lhs = lhs.str();
    r.rhs = rhs.str();
    r.abs_diff = diff.is_zero() ? "0" : diff.str(6);
    r.tolerance = tol;
    r.pass = diff.to_rational() <= tol;
}

// ---------------------------------------------------------------------------
// Terminating identities: exact rational equality, optional exact-jet limit.

class TerminatingIdentity : public Identity {
public:
    struct JetSpec {
        std::string var;
        Rational base;
        int order = 2;
    };

    TerminatingIdentity(Info info, ExactExpr lhs, ExactExpr rhs, std::optional<JetSpec> jet = {})
        : Identity(std::move(info)), lhs_(std::move(lhs)), rhs_(std::move(rhs)), jet_(std::move(jet)) {}

    Rational eval_lhs(const Params& p, long n) const { return lhs_.eval(ExactKernel{}, p, n); }
    Rational eval_rhs(const Params& p, long n) const { return rhs_.eval(ExactKernel{}, p, n); }

    BigFloat eval_lhs_float(const Params& p, long n, unsigned work) const {
        return lhs_.eval(FloatKernel{work}, p, n);
    }

protected:
    VerificationReport do_verify(const Params& p, const EvalContext&, const Rational&) const override {
        const long n = require_small_int(p, "n");
        VerificationReport r = base_report();
        r.exact = true;
        r.strategy = "exact";
        const Rational l = lhs_.eval(ExactKernel{}, p, n);
        const Rational q = rhs_.eval(ExactKernel{}, p, n);
        r.lhs = to_string(l);
        r.rhs = to_string(q);
        r.pass = (l == q);
        r.abs_diff = r.pass ? "0" : to_string(l - q);
        return r;
    }

    VerificationReport do_verify_jet_limit(const Params& p, const EvalContext&, int order) const override {
        if (!jet_) return Identity::do_verify_jet_limit(p, EvalContext(), order);
        const long n = require_small_int(p, "n");
        const int ord = order < 0 ? jet_->order : order;
        Params pj = p;
        pj.values[jet_->var] = jet_->base;
        const ExactJetKernel kernel{ExactKernel{}, jet_->var, ord};
        VerificationReport r = base_report();
        r.exact = true;
        r.strategy = "exact-jet(" + jet_->var + "=" + to_string(jet_->base) + "+eps)";
        const RationalJet l = lhs_.eval(kernel, pj, n);
        const RationalJet q = rhs_.eval(kernel, pj, n);
        r.lhs = l.str();
        r.rhs = q.str();
        const int through = std::min({l.hi(), q.hi(), ord});
        const int required = std::min(ord, 1);
        if (through < required) {
            r.pass = false;
            r.note = "jet windows too narrow";
            return r;
        }
        r.pass = agree_through(l, q, through);
        r.abs_diff = r.pass ? "0" : "coefficient mismatch";
        r.note = "coefficients compared through eps^" + std::to_string(through);
        return r;
    }

private:
    ExactExpr lhs_, rhs_;
    std::optional<JetSpec> jet_;
};

// ---------------------------------------------------------------------------
// Infinite series against a closed form.

class SeriesVsClosedIdentity : public Identity {
public:
    enum class How { Direct, Crvz, Richardson };

    using ClosedForm = std::function<BigFloat(const Params&, const EvalContext&)>;

    SeriesVsClosedIdentity(Info info, TermSpec term, WExpr weight, How how, ClosedForm rhs,
                           std::vector<unsigned long> ladder = {})
        : Identity(std::move(info)), term_(std::move(term)), weight_(std::move(weight)), how_(how),
          rhs_(std::move(rhs)), ladder_(std::move(ladder)) {}

    const TermSpec& term() const { return term_; }
    const WExpr& weight() const { return weight_; }

    SummationResult eval_lhs(const Params& p, const EvalContext& ctx, const Rational& tol) const {
        const FloatKernel kernel{ctx.work()};
        switch (how_) {
            case How::Direct: {
                const BigFloat eps = BigFloat(tol, 64) / 8;
                return sum_infinite_direct(term_, weight_, kernel, p, eps,
                                           info().max_terms > 0 ? info().max_terms : 100000);
            }
            case How::Crvz: {
                BoundSeries<FloatKernel> s(term_, weight_, kernel, p);
                auto src = [&]() {
                    const BigFloat u = s.current();
                    s.advance();
                    return u;
                };
                long stages = static_cast<long>(std::ceil(std::log(1.0 / BigFloat(tol, 64).to_double_approx()) /
                                                          1.7631094939260836)) + 10;
                if (info().max_terms > 0 && stages > info().max_terms) stages = info().max_terms;
                return sum_alternating_crvz(src, stages, ctx.work());
            }
            case How::Richardson:
                return sum_slow_positive_richardson(term_, weight_, kernel, p, ladder_);
        }
        throw Error("bad strategy");
    }

protected:
    VerificationReport do_verify(const Params& p, const EvalContext& ctx, const Rational& tol) const override {
        VerificationReport r = base_report();
        const SummationResult lhs = eval_lhs(p, ctx, tol);
        const BigFloat rhs = rhs_(p, ctx);
        r.strategy = lhs.strategy;
        r.terms = lhs.terms;
        numeric_compare(r, lhs.value, rhs, tol);
        return r;
    }

    TermSpec term_;
    WExpr weight_;
    How how_;
    ClosedForm rhs_;
    std::vector<unsigned long> ladder_;
};

// ---------------------------------------------------------------------------
// Two series against each other (transformation formulas at sample points).

class SeriesVsSeriesIdentity : public Identity {
public:
    SeriesVsSeriesIdentity(Info info, TermSpec lt, WExpr lw, TermSpec rt, WExpr rw, std::vector<unsigned long> ladder)
        : Identity(std::move(info)), lt_(std::move(lt)), lw_(std::move(lw)), rt_(std::move(rt)), rw_(std::move(rw)),
          ladder_(std::move(ladder)) {}

protected:
    VerificationReport do_verify(const Params& p, const EvalContext& ctx, const Rational& tol) const override {
        VerificationReport r = base_report();
        const FloatKernel kernel{ctx.work()};
        const BigFloat eps = BigFloat(tol, 64) / 16;
        const SummationResult lhs = sum_infinite_direct(lt_, lw_, kernel, p, eps, 200000);
        const SummationResult rhs = sum_slow_positive_richardson(rt_, rw_, kernel, p, ladder_);
        r.strategy = lhs.strategy + "/" + rhs.strategy;
        r.terms = lhs.terms + rhs.terms;
        numeric_compare(r, lhs.value, rhs.value, tol);
        return r;
    }

    TermSpec lt_, rt_;
    WExpr lw_, rw_;
    std::vector<unsigned long> ladder_;
};

// ---------------------------------------------------------------------------
// Integral identities via tanh-sinh quadrature.

class IntegralIdentity : public Identity {
public:
    using Bound = std::function<BigFloat(unsigned)>; // work -> endpoint
    using ClosedForm = std::function<BigFloat(const Params&, const EvalContext&)>;

    IntegralIdentity(Info info, Integrand f, Bound a, Bound b, ClosedForm rhs)
        : Identity(std::move(info)), f_(std::move(f)), a_(std::move(a)), b_(std::move(b)), rhs_(std::move(rhs)) {}

protected:
    VerificationReport do_verify(const Params& p, const EvalContext& ctx, const Rational& tol) const override {
        VerificationReport r = base_report();
        const BigFloat eps = BigFloat(tol, 64) / 8;
        const SummationResult lhs = quadrature_tanh_sinh(f_, a_(ctx.work()), b_(ctx.work()), ctx, eps);
        r.strategy = lhs.strategy;
        r.terms = lhs.terms;
        numeric_compare(r, lhs.value, rhs_(p, ctx), tol);
        return r;
    }

private:
    Integrand f_;
    Bound a_, b_;
    ClosedForm rhs_;
};

// ---------------------------------------------------------------------------
// Power series identity checked at a point: z is the rational value (x/2)^2.

class PowerSeriesPointIdentity : public Identity {
public:
    explicit PowerSeriesPointIdentity(Info info) : Identity(std::move(info)) {}

protected:
    VerificationReport do_verify(const Params& p, const EvalContext& ctx, const Rational& tol) const override {
        VerificationReport r = base_report();
        const Rational z = p.at("z");
        if (z <= 0 || z >= 1) throw ParamOutOfDomain("z must lie in (0, 1)");
        TermSpec t;
        t.z = z;
        t.k0 = 1;
        t.push_num(Affine(Rational(1, 2))).push_den(Affine(1));
        const WExpr w = w_h(hnum(2, 2)) * Rational(4) - w_h(hnum(1, 2));
        const FloatKernel kernel{ctx.work()};
        const BigFloat eps = BigFloat(tol, 64) / 8;
        const SummationResult lhs = sum_infinite_direct(t, w, kernel, Params{}, eps, 100000);
        // closed form 4 arcsin(x/2)^2 / sqrt(4 - x^2) with x = 2 sqrt(z):
        // equals 2 asin(sqrt z)^2 / sqrt(1 - z)
        const unsigned work = ctx.work();
        const BigFloat sz = sqrt_at(BigFloat(z, work), work);
        const BigFloat as = asin(sz, work);
        const BigFloat rhs = ldexp2(as * as, 1) / sqrt_at(BigFloat(Rational(1) - z, work), work);
        r.strategy = lhs.strategy;
        r.terms = lhs.terms;
        numeric_compare(r, lhs.value, rhs, tol);
        return r;
    }
};

// direct form of the op: z = (x/2)^2 with x in (0, 2); the returned
// error field is |series - closed form|.
inline SummationResult check_power_series_point(const Rational& z_of_x, const EvalContext& ctx) {
    if (z_of_x <= 0 || z_of_x >= 1) throw DomainError("check_power_series_point: (x/2)^2 must lie in (0, 1)");
    TermSpec t;
    t.z = z_of_x;
    t.k0 = 1;
    t.push_num(Affine(Rational(1, 2))).push_den(Affine(1));
    const WExpr w = w_h(hnum(2, 2)) * Rational(4) - w_h(hnum(1, 2));
    const FloatKernel kernel{ctx.work()};
    const BigFloat eps = ldexp2(BigFloat(1L, 64), -static_cast<std::int64_t>(ctx.prec));
    SummationResult s = sum_infinite_direct(t, w, kernel, Params{}, eps, 100000);
    const unsigned work = ctx.work();
    const BigFloat sz = sqrt_at(BigFloat(z_of_x, work), work);
    const BigFloat as = asin(sz, work);
    const BigFloat rhs = ldexp2(as * as, 1) / sqrt_at(BigFloat(Rational(1) - z_of_x, work), work);
    s.error = abs(s.value - rhs);
    s.strategy = "power-series-point";
    return s;
}

// ---------------------------------------------------------------------------
// The supercongruence instance check.

class PadicIdentity : public Identity {
public:
    explicit PadicIdentity(Info info) : Identity(std::move(info)) {}

protected:
    VerificationReport do_verify(const Params& p, const EvalContext&, const Rational&) const override {
        const long prime = require_small_int(p, "p");
        VerificationReport r = base_report();
        r.exact = true;
        r.strategy = "mod-p^2";
        const HeCongruenceReport rep = he_congruence_check(prime);
        r.lhs = std::to_string(rep.lhs.r) + " (mod " + std::to_string(rep.lhs.modulus()) + ")";
        r.rhs = std::to_string(rep.rhs.r) + " (mod " + std::to_string(rep.rhs.modulus()) + ")";
        r.pass = rep.pass;
        r.abs_diff = rep.pass ? "0" : std::to_string((rep.lhs.r - rep.rhs.r + rep.lhs.modulus()) % rep.lhs.modulus());
        r.terms = (prime - 1) / 2 + 1;
        return r;
    }
};

} // namespace hyperver
