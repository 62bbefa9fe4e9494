#pragma once

// Shifted factorials and generalized harmonic numbers over any of the
// scalar kinds (rationals, big floats, jets of either).

#include <type_traits>
#include <vector>

#include "hyperver/errors.hpp"
#include "hyperver/jet.hpp"
#include "hyperver/rational.hpp"

namespace hyperver {

template <class S>
struct is_jet : std::false_type {};
template <class S>
struct is_jet<Jet<S>> : std::true_type {};

template <class S>
S one_like(const S& exemplar) {
    if constexpr (is_jet<S>::value) {
        using Base = std::decay_t<decltype(exemplar.coefficient(exemplar.hi()))>;
        const int order = exemplar.hi() >= S::inf_order ? 8 : std::max(exemplar.hi(), 0);
        return S::constant(Base(1), order);
    } else {
        (void)exemplar;
        return S(1);
    }
}

// x must be invertible without a valuation shift (jets: nonzero constant term).
template <class S>
bool invertible_at_order_zero(const S& x) {
    if constexpr (is_jet<S>::value) {
        return !x.is_zero() && x.valuation() == 0;
    } else {
        return !is_scalar_zero(x);
    }
}

// (x)_m = x (x+1) ... (x+m-1); empty product for m = 0.
template <class S>
S pochhammer(const S& x, unsigned long m) {
    S acc = one_like(x);
    for (unsigned long i = 0; i < m; ++i) acc = acc * (x + static_cast<long>(i));
    return acc;
}

template <class S>
S int_pow(const S& x, unsigned e) {
    S acc = one_like(x);
    for (unsigned i = 0; i < e; ++i) acc = acc * x;
    return acc;
}

// H_n^{(order)}(x) = sum_{k=1..n} (x+k)^{-order}
template <class S>
S harmonic(unsigned long n, unsigned order, const S& x) {
    if (order == 0) throw DomainError("harmonic: order must be positive");
    S acc{};
    for (unsigned long k = 1; k <= n; ++k) {
        const S shifted = x + static_cast<long>(k);
        if (!invertible_at_order_zero(shifted)) throw PoleInSum("harmonic: x + " + std::to_string(k) + " vanishes");
        acc += scalar_inverse(int_pow(shifted, order));
    }
    return acc;
}

inline Rational harmonic_number(unsigned long n, unsigned order = 1) {
    return harmonic<Rational>(n, order, Rational(0));
}

// Incrementally extended ladder of H_j^{(order)}(x), j = 1..N.
template <class S>
class HarmonicCache {
public:
    HarmonicCache(S x, unsigned order) : x_(std::move(x)), order_(order) {
        if (order_ == 0) throw DomainError("HarmonicCache: order must be positive");
    }

    const S& value(unsigned long n) {
        extend(n);
        if (n == 0) return zero_;
        return values_[n - 1];
    }

    unsigned order() const { return order_; }

private:
    void extend(unsigned long n) {
        while (values_.size() < n) {
            const unsigned long j = values_.size() + 1;
            const S shifted = x_ + static_cast<long>(j);
            if (!invertible_at_order_zero(shifted)) throw PoleInSum("HarmonicCache: pole at index " + std::to_string(j));
            S next = scalar_inverse(int_pow(shifted, order_));
            if (!values_.empty()) next += values_.back();
            values_.push_back(std::move(next));
        }
    }

    S x_;
    unsigned order_;
    S zero_{};
    std::vector<S> values_;
};

} // namespace hyperver
