#pragma once

// Expression trees for the closed sides of terminating identities:
// products of pochhammers of length n, harmonic sums at n, and embedded
// finite hypergeometric sums. One tree, evaluated over any scalar kernel.

#include <memory>
#include <vector>

#include "hyperver/series.hpp"

namespace hyperver {

class ExactExpr {
public:
    enum class Kind { Const, Poch, HarmonicAtN, TermSum, Sum, Prod, Div, Pow };

    struct Node {
        Kind kind = Kind::Const;
        Affine value;       // Const
        Affine offset;      // Poch
        long n_mult = 1;    // Poch length = n_mult*n + n_add
        long n_add = 0;
        HarmonicSumSpec hs; // HarmonicAtN (upper_scale applies to n)
        TermSpec term;      // TermSum
        WExpr weight;
        int exponent = 1; // Pow
        std::vector<ExactExpr> kids;
    };

    ExactExpr() : node_(std::make_shared<Node>()) {}
    ExactExpr(Affine constant) : node_(std::make_shared<Node>()) {
        auto n = std::make_shared<Node>();
        n->value = std::move(constant);
        node_ = std::move(n);
    }
    ExactExpr(long constant) : ExactExpr(Affine(constant)) {}
    ExactExpr(Rational constant) : ExactExpr(Affine(std::move(constant))) {}

    static ExactExpr poch(Affine offset, long n_mult = 1, long n_add = 0) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Poch;
        n->offset = std::move(offset);
        n->n_mult = n_mult;
        n->n_add = n_add;
        return ExactExpr(std::move(n));
    }

    static ExactExpr harmonic_at_n(HarmonicSumSpec hs) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::HarmonicAtN;
        n->hs = std::move(hs);
        return ExactExpr(std::move(n));
    }

    static ExactExpr term_sum(TermSpec t, WExpr w) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::TermSum;
        n->term = std::move(t);
        n->weight = std::move(w);
        return ExactExpr(std::move(n));
    }

    static ExactExpr pow(ExactExpr base, int e) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Pow;
        n->exponent = e;
        n->kids.push_back(std::move(base));
        return ExactExpr(std::move(n));
    }

    friend ExactExpr operator+(const ExactExpr& a, const ExactExpr& b) { return combine(Kind::Sum, a, b); }
    friend ExactExpr operator-(const ExactExpr& a, const ExactExpr& b) {
        return combine(Kind::Sum, a, ExactExpr(Rational(-1)) * b);
    }
    friend ExactExpr operator*(const ExactExpr& a, const ExactExpr& b) { return combine(Kind::Prod, a, b); }
    friend ExactExpr operator/(const ExactExpr& a, const ExactExpr& b) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Div;
        n->kids = {a, b};
        return ExactExpr(std::move(n));
    }
    friend ExactExpr operator-(const ExactExpr& a) { return ExactExpr(Rational(-1)) * a; }

    template <class K>
    typename K::Scalar eval(const K& kernel, const Params& params, long n) const {
        const Node& nd = *node_;
        using S = typename K::Scalar;
        switch (nd.kind) {
            case Kind::Const:
                return kernel.eval(nd.value, params);
            case Kind::Poch: {
                const long len = nd.n_mult * n + nd.n_add;
                if (len < 0) throw DomainError("pochhammer of negative length");
                return pochhammer(kernel.eval(nd.offset, params), static_cast<unsigned long>(len));
            }
            case Kind::HarmonicAtN: {
                S acc{};
                const long upper = nd.hs.upper_scale * n;
                for (long i = 1; i <= upper; ++i) {
                    S prod;
                    bool first = true;
                    for (const auto& f : nd.hs.factors) {
                        const S base = kernel.eval(f.offset, params) + i;
                        if (!invertible_at_order_zero(base)) throw PoleInSum("harmonic pole at i=" + std::to_string(i));
                        const S p = int_pow(base, f.power);
                        prod = first ? p : S(prod * p);
                        first = false;
                    }
                    acc += scalar_inverse(prod);
                }
                return acc;
            }
            case Kind::TermSum:
                return sum_terminating(nd.term, nd.weight, n, kernel, params);
            case Kind::Sum: {
                S acc{};
                for (const auto& k : nd.kids) acc += k.eval(kernel, params, n);
                return acc;
            }
            case Kind::Prod: {
                S acc = kernel.lift(Rational(1));
                for (const auto& k : nd.kids) acc = acc * k.eval(kernel, params, n);
                return acc;
            }
            case Kind::Div: {
                const S d = nd.kids[1].eval(kernel, params, n);
                if (is_scalar_zero(d)) throw PoleAtIndex("closed-form denominator vanishes");
                return nd.kids[0].eval(kernel, params, n) / d;
            }
            case Kind::Pow: {
                const S base = nd.kids[0].eval(kernel, params, n);
                if (nd.exponent >= 0) return int_pow(base, static_cast<unsigned>(nd.exponent));
                if (is_scalar_zero(base)) throw PoleAtIndex("closed-form denominator vanishes");
                return scalar_inverse(int_pow(base, static_cast<unsigned>(-nd.exponent)));
            }
        }
        throw Error("ExactExpr: bad node");
    }

private:
    explicit ExactExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    static ExactExpr combine(Kind kind, const ExactExpr& a, const ExactExpr& b) {
        auto n = std::make_shared<Node>();
        n->kind = kind;
        auto absorb = [&](const ExactExpr& e) {
            if (e.node_->kind == kind) {
                for (const auto& k : e.node_->kids) n->kids.push_back(k);
            } else {
                n->kids.push_back(e);
            }
        };
        absorb(a);
        absorb(b);
        return ExactExpr(std::move(n));
    }

    std::shared_ptr<const Node> node_;
};

inline ExactExpr ex_poch(Affine offset) { return ExactExpr::poch(std::move(offset)); }
inline ExactExpr ex_poch_len(Affine offset, long n_mult, long n_add) {
    return ExactExpr::poch(std::move(offset), n_mult, n_add);
}
inline ExactExpr ex_hn(unsigned order, Affine x = Affine(), int upper_scale = 1) {
    return ExactExpr::harmonic_at_n(hnum(upper_scale, order, std::move(x)));
}
inline ExactExpr ex_sum(TermSpec t, WExpr w) { return ExactExpr::term_sum(std::move(t), std::move(w)); }

} // namespace hyperver
