#pragma once

// Affine expressions in the free parameters of an identity (e.g. 1+a-b-c),
// plus polynomials in the summation index k with affine coefficients.
// Descriptors are written in terms of these and bound to concrete scalars
// (rationals, floats, or jets) at evaluation time.

#include <map>
#include <string>
#include <vector>

#include "hyperver/bigfloat.hpp"
#include "hyperver/errors.hpp"
#include "hyperver/exact.hpp"
#include "hyperver/jet.hpp"
#include "hyperver/rational.hpp"

namespace hyperver {

class Affine {
public:
    Affine() = default;
    Affine(long v) : c0_(v) {}
    Affine(Rational v) : c0_(std::move(v)) {}

    static Affine symbol(const std::string& name) {
        Affine a;
        a.terms_[name] = 1;
        return a;
    }

    const Rational& constant_part() const { return c0_; }
    const std::map<std::string, Rational>& terms() const { return terms_; }
    bool is_constant() const { return terms_.empty(); }

    friend Affine operator+(const Affine& a, const Affine& b) {
        Affine r = a;
        r.c0_ += b.c0_;
        for (const auto& [k, v] : b.terms_) {
            auto& c = r.terms_[k];
            c += v;
            if (c == 0) r.terms_.erase(k);
        }
        return r;
    }

    friend Affine operator-(const Affine& a) {
        Affine r = a;
        r.c0_ = -r.c0_;
        for (auto& [k, v] : r.terms_) v = -v;
        return r;
    }

    friend Affine operator-(const Affine& a, const Affine& b) { return a + (-b); }

    friend Affine operator*(const Affine& a, const Rational& s) {
        if (s == 0) return Affine();
        Affine r = a;
        r.c0_ *= s;
        for (auto& [k, v] : r.terms_) v *= s;
        return r;
    }
    friend Affine operator*(const Rational& s, const Affine& a) { return a * s; }
    friend Affine operator*(const Affine& a, long s) { return a * Rational(s); }
    friend Affine operator*(long s, const Affine& a) { return a * Rational(s); }
    friend Affine operator/(const Affine& a, long s) { return a * Rational(1, s); }

    Rational eval(const std::map<std::string, Rational>& values) const {
        Rational acc = c0_;
        for (const auto& [name, coeff] : terms_) {
            auto it = values.find(name);
            if (it == values.end()) throw ParamOutOfDomain("unbound parameter: " + name);
            acc += coeff * it->second;
        }
        return acc;
    }

    Rational coefficient_of(const std::string& name) const {
        auto it = terms_.find(name);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    std::string str() const {
        std::string out = to_string(c0_);
        for (const auto& [name, coeff] : terms_) out += " + " + to_string(coeff) + "*" + name;
        return out;
    }

private:
    Rational c0_;
    std::map<std::string, Rational> terms_;
};

inline Affine sym(const std::string& name) { return Affine::symbol(name); }

// Parameter bindings for one verification run.
struct Params {
    std::map<std::string, Rational> values;

    const Rational& at(const std::string& name) const {
        auto it = values.find(name);
        if (it == values.end()) throw ParamOutOfDomain("missing parameter: " + name);
        return it->second;
    }
    bool has(const std::string& name) const { return values.count(name) != 0; }
};

// ---------------------------------------------------------------------------
// Scalar kernels: how descriptors get bound to a concrete scalar type.

struct ExactKernel {
    using Scalar = Rational;
    Scalar lift(const Rational& q) const { return q; }
    Scalar eval(const Affine& a, const Params& p) const { return a.eval(p.values); }
};

struct FloatKernel {
    unsigned work = 192;
    using Scalar = BigFloat;
    Scalar lift(const Rational& q) const { return BigFloat(q, work); }
    Scalar eval(const Affine& a, const Params& p) const { return lift(a.eval(p.values)); }
};

// Evaluates with one parameter replaced by (base + epsilon).
template <class Base>
struct JetKernel {
    Base base;
    std::string eps_var;
    int order = 2;

    using Scalar = Jet<typename Base::Scalar>;

    Scalar lift(const Rational& q) const { return Scalar::constant(base.lift(q), order); }

    Scalar eval(const Affine& a, const Params& p) const {
        // p carries the base value of eps_var
        const Rational v0 = a.eval(p.values);
        const Rational c1 = a.coefficient_of(eps_var);
        std::vector<typename Base::Scalar> coeffs(static_cast<size_t>(order) + 1, typename Base::Scalar());
        coeffs[0] = base.lift(v0);
        if (order >= 1) coeffs[1] = base.lift(c1);
        return Scalar::from_coeffs(0, std::move(coeffs));
    }
};

using ExactJetKernel = JetKernel<ExactKernel>;
using FloatJetKernel = JetKernel<FloatKernel>;

// ---------------------------------------------------------------------------
// Polynomials in k with affine coefficients. Weights never multiply these
// symbolically; products stay as factor lists and are multiplied only after
// binding, where the coefficients have become plain scalars.

struct KPoly {
    std::vector<Affine> c; // c[j] is the coefficient of k^j

    KPoly() : c{Affine()} {}
    KPoly(Affine constant) : c{std::move(constant)} {}
    KPoly(long constant) : c{Affine(constant)} {}

    static KPoly with_coeffs(std::vector<Affine> coeffs) {
        KPoly p;
        p.c = std::move(coeffs);
        if (p.c.empty()) p.c.emplace_back();
        return p;
    }

    long degree() const { return static_cast<long>(c.size()) - 1; }
};

// offset + coeff*k, the building block of the displayed weights
inline KPoly klin(Affine offset, long kcoeff = 1) {
    return KPoly::with_coeffs({std::move(offset), Affine(kcoeff)});
}

inline KPoly kquad(Affine c0, Affine c1, Affine c2) {
    return KPoly::with_coeffs({std::move(c0), std::move(c1), std::move(c2)});
}

template <class S>
struct BoundKPoly {
    std::vector<S> c;

    S eval(long k) const {
        S acc = c.back();
        for (size_t i = c.size() - 1; i-- > 0;) acc = acc * k + c[i];
        return acc;
    }
};

template <class K>
BoundKPoly<typename K::Scalar> bind_kpoly(const KPoly& p, const K& kernel, const Params& params) {
    BoundKPoly<typename K::Scalar> b;
    b.c.reserve(p.c.size());
    for (const auto& a : p.c) b.c.push_back(kernel.eval(a, params));
    return b;
}

} // namespace hyperver
