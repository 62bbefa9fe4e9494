#pragma once

// Truncated Laurent jets: finite windows of a Laurent expansion in a formal
// epsilon around a base point. A jet knows its coefficients on [lo, hi] and
// nothing above hi; coefficients below lo are exactly zero. Division shifts
// the valuation, which is what turns L'Hopital limits into plain arithmetic.

#include <algorithm>
#include <string>
#include <vector>

#include "hyperver/errors.hpp"
#include "hyperver/rational.hpp"

namespace hyperver {

inline bool is_scalar_zero(const Rational& q) { return q.is_zero(); }
inline Rational scalar_inverse(const Rational& q) {
    if (q.is_zero()) throw DomainError("scalar_inverse: zero rational");
    return Rational(1) / q;
}

template <class S>
class Jet {
public:
    // window order of an exact zero / exact constant, effectively infinite
    static constexpr int inf_order = 1 << 28;

    // default: the exact zero, known to all orders
    Jet() : lo_(inf_order), hi_(inf_order), c_{S()} {}

    static Jet constant(S value, int order) {
        Jet j;
        j.lo_ = 0;
        j.hi_ = order;
        j.c_.assign(static_cast<size_t>(order) + 1, S());
        j.c_[0] = std::move(value);
        j.normalize();
        return j;
    }

    // base + epsilon, truncated at `order`
    static Jet variable(S base, int order) {
        if (order < 1) throw OrderOutOfRange("jet variable needs order >= 1");
        Jet j = constant(std::move(base), order);
        j.c_[1] = S(1);
        return j;
    }

    static Jet from_coeffs(int lo, std::vector<S> coeffs) {
        if (coeffs.empty()) throw OrderOutOfRange("jet needs at least one coefficient");
        Jet j;
        j.lo_ = lo;
        j.hi_ = lo + static_cast<int>(coeffs.size()) - 1;
        j.c_ = std::move(coeffs);
        j.normalize();
        return j;
    }

    int lo() const { return lo_; }
    int hi() const { return hi_; }

    bool is_zero() const { return c_.size() == 1 && is_scalar_zero(c_[0]); }
    bool is_exact_zero() const { return is_zero() && hi_ >= inf_order; }

    // valuation of a nonzero jet; the head coefficient is nonzero by normal form
    int valuation() const {
        if (is_zero()) throw DivisionByZeroJet("valuation of zero jet");
        return lo_;
    }

    // Known coefficient of epsilon^r: zero below the window, error above it.
    const S coefficient(int r) const {
        if (r > hi_) throw OrderOutOfRange("jet coefficient above truncation order");
        if (r < lo_) return S();
        return c_[static_cast<size_t>(r - lo_)];
    }

    friend Jet operator-(const Jet& a) {
        Jet r = a;
        for (auto& c : r.c_) c = -c;
        return r;
    }

    friend Jet operator+(const Jet& a, const Jet& b) { return add_sub(a, b, false); }
    friend Jet operator-(const Jet& a, const Jet& b) { return add_sub(a, b, true); }

    friend Jet operator*(const Jet& a, const Jet& b) {
        if (a.is_exact_zero() || b.is_exact_zero()) return Jet();
        const int lo = a.lo_ + b.lo_;
        const int hi = std::min(a.lo_ + b.hi_, b.lo_ + a.hi_);
        std::vector<S> c(static_cast<size_t>(hi - lo) + 1, S());
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (is_scalar_zero(a.c_[i])) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) {
                const int k = a.lo_ + static_cast<int>(i) + b.lo_ + static_cast<int>(j);
                if (k > hi) break;
                c[static_cast<size_t>(k - lo)] += a.c_[i] * b.c_[j];
            }
        }
        return from_coeffs(lo, std::move(c));
    }

    friend Jet operator/(const Jet& a, const Jet& b) {
        if (b.is_zero()) throw DivisionByZeroJet();
        if (a.is_exact_zero()) return Jet();
        const int vb = b.lo_;       // head coefficient nonzero by normal form
        const int mb = b.hi_ - vb;  // unit part known to this order
        // invert the unit part of b
        std::vector<S> inv(static_cast<size_t>(mb) + 1, S());
        const S b0inv = scalar_inverse(b.c_[0]);
        inv[0] = b0inv;
        for (int j = 1; j <= mb; ++j) {
            S acc{};
            for (int i = 1; i <= j; ++i) acc += b.c_[static_cast<size_t>(i)] * inv[static_cast<size_t>(j - i)];
            inv[static_cast<size_t>(j)] = -(acc * b0inv);
        }
        Jet u = from_coeffs(-vb, std::move(inv));
        // knowledge window of the quotient: [a.lo - vb, min(a.hi, a.lo + mb) - vb]
        Jet q = a * u;
        const int hi = std::min(a.hi_, a.lo_ + mb) - vb;
        return q.truncated(hi);
    }

    friend Jet operator+(const Jet& a, const S& s) { return a + constant_like(a, s); }
    friend Jet operator+(const S& s, const Jet& a) { return a + s; }
    friend Jet operator-(const Jet& a, const S& s) { return a + (-s); }
    friend Jet operator-(const S& s, const Jet& a) { return constant_like(a, s) - a; }
    friend Jet operator+(const Jet& a, long v) { return a + S(v); }
    friend Jet operator-(const Jet& a, long v) { return a + S(-v); }

    friend Jet operator*(const Jet& a, const S& s) {
        Jet r = a;
        for (auto& c : r.c_) c = c * s;
        r.normalize();
        return r;
    }
    friend Jet operator*(const S& s, const Jet& a) { return a * s; }

    Jet& operator+=(const Jet& o) { return *this = *this + o; }
    Jet& operator-=(const Jet& o) { return *this = *this - o; }
    Jet& operator*=(const Jet& o) { return *this = *this * o; }
    Jet& operator/=(const Jet& o) { return *this = *this / o; }

    // drop knowledge above new_hi (no-op if already narrower)
    Jet truncated(int new_hi) const {
        if (new_hi >= hi_) return *this;
        Jet r = *this;
        r.hi_ = new_hi;
        if (new_hi < lo_) { // all retained coefficients are zero
            r.lo_ = new_hi;
            r.c_.assign(1, S());
        } else {
            r.c_.resize(static_cast<size_t>(new_hi - lo_) + 1);
            r.normalize();
        }
        return r;
    }

    // multiply by epsilon^m (exact shift)
    Jet shifted(int m) const {
        if (is_exact_zero()) return *this;
        Jet r = *this;
        r.lo_ += m;
        r.hi_ += m;
        return r;
    }

    // substitute epsilon -> s * epsilon
    Jet rescaled_eps(const S& s) const {
        if (is_zero()) return *this;
        Jet r = *this;
        for (size_t i = 0; i < r.c_.size(); ++i) {
            const int pw = r.lo_ + static_cast<int>(i);
            S f(1);
            for (int k = 0; k < pw; ++k) f = f * s;
            if (pw < 0) {
                S g(1);
                for (int k = 0; k < -pw; ++k) g = g * s;
                f = scalar_inverse(g);
            }
            r.c_[i] = r.c_[i] * f;
        }
        r.normalize();
        return r;
    }

    // exact jets only: equality of the known windows where they overlap,
    // requiring both windows to reach `through` at least
    friend bool agree_through(const Jet& a, const Jet& b, int through) {
        if (a.hi_ < through || b.hi_ < through) return false;
        const int lo = std::min(a.lo_, b.lo_);
        for (int r = lo; r <= through; ++r) {
            if (!(a.coefficient(r) == b.coefficient(r))) return false;
        }
        return true;
    }

    std::string str() const {
        std::string out;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (!out.empty()) out += " + ";
            out += scalar_str(c_[i]) + "*e^" + std::to_string(lo_ + static_cast<int>(i));
        }
        return out + " + O(e^" + std::to_string(hi_ + 1) + ")";
    }

private:
    // window order used when an exact constant meets an exact zero
    static constexpr int wide_order = 8;

    static Jet constant_like(const Jet& a, const S& s) {
        // a constant participates with knowledge window [0, a.hi]
        Jet j;
        j.hi_ = a.hi_ >= inf_order ? wide_order : a.hi_;
        j.lo_ = std::min(0, j.hi_);
        j.c_.assign(static_cast<size_t>(j.hi_ - j.lo_) + 1, S());
        if (j.lo_ <= 0 && 0 <= j.hi_) j.c_[static_cast<size_t>(-j.lo_)] = s;
        return j;
    }

    static Jet add_sub(const Jet& a, const Jet& b, bool sub) {
        const int hi = std::min(a.hi_, b.hi_);
        const int lo = std::min({a.lo_, b.lo_, hi});
        std::vector<S> c(static_cast<size_t>(hi - lo) + 1, S());
        for (int r = lo; r <= hi; ++r) {
            S av = (r < a.lo_ || r > a.hi_) ? S() : a.c_[static_cast<size_t>(r - a.lo_)];
            S bv = (r < b.lo_ || r > b.hi_) ? S() : b.c_[static_cast<size_t>(r - b.lo_)];
            c[static_cast<size_t>(r - lo)] = sub ? S(av - bv) : S(av + bv);
        }
        return from_coeffs(lo, std::move(c));
    }

    template <class T>
    static std::string scalar_str(const T& v) {
        if constexpr (std::is_same_v<T, Rational>) return to_string(v);
        else return v.str();
    }

    void normalize() {
        while (c_.size() > 1 && is_scalar_zero(c_.front())) {
            c_.erase(c_.begin());
            ++lo_;
        }
        if (c_.size() == 1 && is_scalar_zero(c_[0])) lo_ = hi_;
    }

    int lo_;
    int hi_;
    std::vector<S> c_;
};

template <class S>
bool is_scalar_zero(const Jet<S>& j) { return j.is_zero(); }

template <class S>
Jet<S> scalar_inverse(const Jet<S>& j) {
    if (j.is_zero()) throw DivisionByZeroJet();
    const Jet<S> one = Jet<S>::constant(S(1), std::max(0, j.hi() - j.lo()));
    return one / j;
}

enum class JetOp { Add, Sub, Mul, Div };

template <class S>
Jet<S> jet_combine(const Jet<S>& a, const Jet<S>& b, JetOp op) {
    switch (op) {
        case JetOp::Add: return a + b;
        case JetOp::Sub: return a - b;
        case JetOp::Mul: return a * b;
        case JetOp::Div: return a / b;
    }
    throw Error("jet_combine: bad op");
}

// Coefficient of epsilon^r, i.e. D^r f / r! at the base point.
template <class S>
S taylor_coefficient(const Jet<S>& j, int r) {
    return j.coefficient(r);
}

using RationalJet = Jet<Rational>;

} // namespace hyperver
