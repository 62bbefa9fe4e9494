#pragma once

// Data-driven weighted hypergeometric sums. A term is described by its
// ratio t_{k+1}/t_k (pochhammer factors of stride 1 or 2 plus a constant
// z), a weight by an expression tree over rational functions of k and
// incremental harmonic-type sums. Descriptors bind to any scalar kernel:
// exact rationals, big floats, or jets of either.

#include <memory>
#include <string>
#include <vector>

#include "hyperver/affine.hpp"
#include "hyperver/bigfloat.hpp"
#include "hyperver/errors.hpp"
#include "hyperver/exact.hpp"
#include "hyperver/jet.hpp"

namespace hyperver {

// ---------------------------------------------------------------------------
// Terms

struct TermFactor {
    Affine offset;
    int stride = 1; // (offset)_{stride*k}
};

struct TermSpec {
    Rational z = Rational(1); // constant part of the step ratio
    std::vector<TermFactor> num;
    std::vector<TermFactor> den;
    long k0 = 0;

    TermSpec& push_num(Affine offset, int stride = 1) {
        num.push_back({std::move(offset), stride});
        return *this;
    }
    TermSpec& push_den(Affine offset, int stride = 1) {
        den.push_back({std::move(offset), stride});
        return *this;
    }
};

// |limit of t_{k+1}/t_k| for balanced factor counts; 0 when the denominator
// strides dominate; NotGeometric when the numerator strides dominate.
inline Rational geometric_ratio_limit(const TermSpec& t) {
    long sn = 0, sd = 0;
    Rational l = abs(t.z);
    for (const auto& f : t.num) {
        sn += f.stride;
        for (int r = 1; r < f.stride; ++r) l *= f.stride; // stride^stride
        l *= f.stride;
    }
    for (const auto& f : t.den) {
        sd += f.stride;
        for (int r = 0; r < f.stride; ++r) l /= f.stride;
    }
    if (sn > sd) throw NotGeometric("term ratio diverges");
    if (sn < sd) return Rational(0);
    return l;
}

// exponent sigma with t_k ~ C * L^k * k^sigma (balanced strides)
inline Rational term_decay_exponent(const TermSpec& t, const Params& p) {
    Rational sigma(0);
    long cn = 0, cd = 0;
    for (const auto& f : t.num) {
        sigma += f.offset.eval(p.values);
        ++cn;
    }
    for (const auto& f : t.den) {
        sigma -= f.offset.eval(p.values);
        ++cd;
    }
    sigma -= Rational(cn - cd, 2);
    return sigma;
}

template <class S>
struct BoundTerm {
    S z;
    std::vector<std::pair<S, int>> num, den;
    long k = 0;
    S t;

    const S& current() const { return t; }

    void advance() {
        S rn = one_like(z), rd = one_like(z);
        for (const auto& [off, stride] : num)
            for (int r = 0; r < stride; ++r) rn = rn * (off + (stride * k + r));
        for (const auto& [off, stride] : den) {
            for (int r = 0; r < stride; ++r) {
                const S f = off + (stride * k + r);
                if (is_scalar_zero(f)) throw PoleAtIndex("term denominator vanishes at k=" + std::to_string(k));
                rd = rd * f;
            }
        }
        t = t * z * rn / rd;
        ++k;
    }
};

template <class K>
BoundTerm<typename K::Scalar> bind_term(const TermSpec& spec, const K& kernel, const Params& params) {
    using S = typename K::Scalar;
    BoundTerm<S> b;
    b.z = kernel.lift(spec.z);
    for (const auto& f : spec.num) b.num.emplace_back(kernel.eval(f.offset, params), f.stride);
    for (const auto& f : spec.den) b.den.emplace_back(kernel.eval(f.offset, params), f.stride);
    // direct value at k0
    S tn = one_like(b.z), td = one_like(b.z);
    for (const auto& [off, stride] : b.num) tn = tn * pochhammer(off, static_cast<unsigned long>(stride * spec.k0));
    for (const auto& [off, stride] : b.den) {
        const S d = pochhammer(off, static_cast<unsigned long>(stride * spec.k0));
        if (is_scalar_zero(d)) throw PoleAtIndex("term denominator vanishes at start index");
        td = td * d;
    }
    S zp = one_like(b.z);
    for (long i = 0; i < spec.k0; ++i) zp = zp * b.z;
    b.t = zp * tn / td;
    b.k = spec.k0;
    return b;
}

// ---------------------------------------------------------------------------
// Weights

// sum_{i=1}^{scale*k} prod_j (offset_j + i)^{-power_j}
struct HarmonicSumSpec {
    int upper_scale = 1;
    struct Factor {
        Affine offset;
        unsigned power = 1;
    };
    std::vector<Factor> factors;
};

inline HarmonicSumSpec hsum(int upper_scale, std::vector<HarmonicSumSpec::Factor> factors) {
    HarmonicSumSpec h;
    h.upper_scale = upper_scale;
    h.factors = std::move(factors);
    return h;
}

// classic H_{scale*k}^{(order)}(x)
inline HarmonicSumSpec hnum(int upper_scale, unsigned order, Affine x = Affine()) {
    return hsum(upper_scale, {{std::move(x), order}});
}

class WExpr {
public:
    enum class Kind { RationalFn, Harmonic, Sum, Product };

    struct Node {
        Kind kind = Kind::RationalFn;
        Rational scale = Rational(1);
        std::vector<KPoly> num, den; // RationalFn
        HarmonicSumSpec hs;          // Harmonic
        std::vector<WExpr> kids;     // Sum / Product
    };

    WExpr() : node_(std::make_shared<Node>()) {} // the constant 1

    static WExpr rational_fn(Rational scale, std::vector<KPoly> num = {}, std::vector<KPoly> den = {}) {
        auto n = std::make_shared<Node>();
        n->scale = std::move(scale);
        n->num = std::move(num);
        n->den = std::move(den);
        return WExpr(std::move(n));
    }

    static WExpr harmonic_sum(HarmonicSumSpec hs) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Harmonic;
        n->hs = std::move(hs);
        return WExpr(std::move(n));
    }

    friend WExpr operator+(const WExpr& a, const WExpr& b) { return combine(Kind::Sum, a, b); }
    friend WExpr operator-(const WExpr& a, const WExpr& b) { return combine(Kind::Sum, a, b * Rational(-1)); }
    friend WExpr operator*(const WExpr& a, const WExpr& b) { return combine(Kind::Product, a, b); }
    friend WExpr operator-(const WExpr& a) { return a * Rational(-1); }

    friend WExpr operator*(const WExpr& a, const Rational& s) {
        if (a.node_->kind == Kind::RationalFn || a.node_->kind == Kind::Product) {
            auto n = std::make_shared<Node>(*a.node_);
            if (n->kind == Kind::Product) {
                if (n->kids.empty()) throw Error("empty product");
                n->kids[0] = n->kids[0] * s;
            } else {
                n->scale *= s;
            }
            return WExpr(std::move(n));
        }
        return rational_fn(s) * a;
    }

    const Node& node() const { return *node_; }

    long growth_degree() const {
        const Node& n = *node_;
        switch (n.kind) {
            case Kind::RationalFn: {
                long d = 0;
                for (const auto& p : n.num) d += p.degree();
                for (const auto& p : n.den) d -= p.degree();
                return d;
            }
            case Kind::Harmonic:
                return 0; // bounded for total power >= 2; at most log-growth otherwise
            case Kind::Sum: {
                long d = 0;
                for (const auto& k : n.kids) d = std::max(d, k.growth_degree());
                return d;
            }
            case Kind::Product: {
                long d = 0;
                for (const auto& k : n.kids) d += k.growth_degree();
                return d;
            }
        }
        return 0;
    }

private:
    explicit WExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    static WExpr combine(Kind kind, const WExpr& a, const WExpr& b) {
        auto n = std::make_shared<Node>();
        n->kind = kind;
        auto absorb = [&](const WExpr& e) {
            if (e.node_->kind == kind && e.node_->scale == 1) {
                for (const auto& k : e.node_->kids) n->kids.push_back(k);
            } else {
                n->kids.push_back(e);
            }
        };
        absorb(a);
        absorb(b);
        return WExpr(std::move(n));
    }

    std::shared_ptr<const Node> node_;
};

inline WExpr w_const(Rational v) { return WExpr::rational_fn(std::move(v)); }
inline WExpr w_poly(KPoly p, Rational scale = Rational(1)) {
    return WExpr::rational_fn(std::move(scale), {std::move(p)});
}
inline WExpr w_ratio(std::vector<KPoly> num, std::vector<KPoly> den, Rational scale = Rational(1)) {
    return WExpr::rational_fn(std::move(scale), std::move(num), std::move(den));
}
inline WExpr w_h(HarmonicSumSpec hs) { return WExpr::harmonic_sum(std::move(hs)); }

template <class K>
class BoundWeight {
public:
    using S = typename K::Scalar;

    BoundWeight(const WExpr& e, const K& kernel, const Params& params) : root_(bind(e, kernel, params)) {}

    S eval(long k) { return eval_node(root_, k); }

private:
    struct BNode {
        WExpr::Kind kind;
        S scale{};
        std::vector<BoundKPoly<S>> num, den;
        // harmonic state
        int upper_scale = 1;
        std::vector<std::pair<S, unsigned>> hfac;
        long hm = 0;
        S hval{};
        std::vector<BNode> kids;
    };

    static BNode bind(const WExpr& e, const K& kernel, const Params& params) {
        const auto& n = e.node();
        BNode b;
        b.kind = n.kind;
        b.scale = kernel.lift(n.scale);
        for (const auto& p : n.num) b.num.push_back(bind_kpoly(p, kernel, params));
        for (const auto& p : n.den) b.den.push_back(bind_kpoly(p, kernel, params));
        if (n.kind == WExpr::Kind::Harmonic) {
            b.upper_scale = n.hs.upper_scale;
            for (const auto& f : n.hs.factors) b.hfac.emplace_back(kernel.eval(f.offset, params), f.power);
        }
        for (const auto& k : n.kids) b.kids.push_back(bind(k, kernel, params));
        return b;
    }

    static S eval_node(BNode& b, long k) {
        switch (b.kind) {
            case WExpr::Kind::RationalFn: {
                S v = b.scale;
                for (const auto& p : b.num) v = v * p.eval(k);
                for (const auto& p : b.den) {
                    const S d = p.eval(k);
                    if (is_scalar_zero(d)) throw PoleAtIndex("weight denominator vanishes at k=" + std::to_string(k));
                    v = v / d;
                }
                return v;
            }
            case WExpr::Kind::Harmonic: {
                const long target = b.upper_scale * k;
                if (target < b.hm) throw Error("harmonic sum rewound");
                if (b.hfac.empty()) throw Error("harmonic sum without factors");
                while (b.hm < target) {
                    ++b.hm;
                    S summand;
                    bool first = true;
                    for (const auto& [off, power] : b.hfac) {
                        const S base = off + b.hm;
                        if (!invertible_at_order_zero(base)) throw PoleAtIndex("harmonic summand pole at i=" + std::to_string(b.hm));
                        const S p = int_pow(base, power);
                        summand = first ? p : S(summand * p);
                        first = false;
                    }
                    b.hval += scalar_inverse(summand);
                }
                return b.hval;
            }
            case WExpr::Kind::Sum: {
                S v{};
                for (auto& kid : b.kids) v += eval_node(kid, k);
                return v;
            }
            case WExpr::Kind::Product: {
                S v = b.scale;
                for (auto& kid : b.kids) v = v * eval_node(kid, k);
                return v;
            }
        }
        throw Error("BoundWeight: bad node");
    }

    BNode root_;
};

// ---------------------------------------------------------------------------
// Bound series: weight(k) * t_k walked index by index.

template <class K>
struct BoundSeries {
    using S = typename K::Scalar;

    BoundTerm<S> term;
    BoundWeight<K> weight;

    BoundSeries(const TermSpec& t, const WExpr& w, const K& kernel, const Params& params)
        : term(bind_term(t, kernel, params)), weight(w, kernel, params) {}

    long k() const { return term.k; }
    S current() { return weight.eval(term.k) * term.current(); }
    void advance() { term.advance(); }
};

// Exact finite summation from k0 through n inclusive.
template <class K>
typename K::Scalar sum_terminating(const TermSpec& t, const WExpr& w, long n, const K& kernel, const Params& params) {
    BoundSeries<K> s(t, w, kernel, params);
    typename K::Scalar acc{};
    for (long k = t.k0; k <= n; ++k) {
        acc += s.current();
        s.advance();
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Infinite summation with a geometric tail certificate.

template <class V>
struct SummationResultT {
    V value{};
    BigFloat error;
    long terms = 0;
    std::string strategy;
};

using SummationResult = SummationResultT<BigFloat>;

inline BigFloat scalar_magnitude(const BigFloat& v) { return abs(v); }
inline BigFloat scalar_magnitude(const Jet<BigFloat>& j) {
    BigFloat m;
    for (int r = j.lo(); r <= j.hi(); ++r) {
        const BigFloat a = abs(j.coefficient(r));
        if (m < a) m = a;
    }
    return m;
}

// Partial sum plus tail bound |u_N| * rho/(1-rho) once the empirical ratio
// stays under rho = (L+1)/2, L the certified limit ratio of the bare term.
template <class K>
SummationResultT<typename K::Scalar> sum_infinite_direct(const TermSpec& t, const WExpr& w, const K& kernel,
                                                         const Params& params, const BigFloat& eps,
                                                         long max_terms = 100000) {
    const Rational l = geometric_ratio_limit(t);
    if (l >= 1) throw NotGeometric("no geometric certificate: |ratio| -> " + to_string(l));
    const Rational rho_q = (l + 1) / 2;
    const BigFloat rho(rho_q, 64);
    const BigFloat tail_factor = rho / (BigFloat(1L, 64) - rho);

    BoundSeries<K> s(t, w, kernel, params);
    typename K::Scalar acc{};
    BigFloat prev_mag;
    bool have_prev = false;
    for (long steps = 0;; ++steps) {
        if (steps > max_terms) throw NoConvergence("sum_infinite_direct: term cap exceeded");
        const auto u = s.current();
        acc += u;
        const BigFloat mag = scalar_magnitude(u);
        const bool ratio_ok = have_prev && !prev_mag.is_zero() && mag <= rho * prev_mag;
        if (!mag.is_zero()) {
            prev_mag = mag;
            have_prev = true;
        }
        if (ratio_ok && steps >= 4) {
            const BigFloat bound = mag * tail_factor;
            if (bound < eps) {
                SummationResultT<typename K::Scalar> r;
                r.value = std::move(acc);
                r.error = bound;
                r.terms = steps + 1;
                r.strategy = "direct";
                return r;
            }
        }
        s.advance();
    }
}

} // namespace hyperver
