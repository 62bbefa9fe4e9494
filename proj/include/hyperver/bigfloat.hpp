#pragma once

// Arbitrary-precision binary floating point over cpp_int mantissas.
// Values are sign * mant * 2^exp with round-to-nearest-even; every value
// carries the precision it was rounded to, and mixed-operand arithmetic
// rounds to the larger of the two precisions.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "hyperver/errors.hpp"
#include "hyperver/rational.hpp"

namespace hyperver {

class BigFloat {
public:
    BigFloat() = default;

    explicit BigFloat(long v, unsigned prec = 64) : prec_(prec) {
        if (v != 0) {
            sign_ = v < 0 ? -1 : 1;
            mant_ = v < 0 ? -Int(v) : Int(v);
            normalize(false);
        }
    }

    BigFloat(const Int& v, unsigned prec) : prec_(prec) {
        if (v != 0) {
            sign_ = v < 0 ? -1 : 1;
            mant_ = v < 0 ? Int(-v) : v;
            normalize(false);
        }
    }

    BigFloat(const Rational& q, unsigned prec) : prec_(prec) {
        *this = divided(BigFloat(num(q), prec + 8), BigFloat(den(q), prec + 8), prec);
    }

    static BigFloat from_parts(int sign, Int mant, std::int64_t exp, unsigned prec, bool sticky = false) {
        BigFloat r;
        r.sign_ = mant == 0 ? 0 : sign;
        r.mant_ = std::move(mant);
        r.exp_ = exp;
        r.prec_ = prec;
        if (r.sign_ != 0) r.normalize(sticky);
        else { r.mant_ = 0; r.exp_ = 0; }
        return r;
    }

    int sign() const { return sign_; }
    bool is_zero() const { return sign_ == 0; }
    unsigned precision() const { return prec_; }

    // floor(log2 |x|); only valid for nonzero values
    std::int64_t exponent2() const {
        if (sign_ == 0) throw DomainError("exponent2 of zero");
        return exp_ + static_cast<std::int64_t>(boost::multiprecision::msb(mant_));
    }

    Rational to_rational() const {
        if (sign_ == 0) return Rational(0);
        Rational r(mant_);
        if (exp_ >= 0) r *= Rational(Int(1) << static_cast<unsigned long>(exp_));
        else r /= Rational(Int(1) << static_cast<unsigned long>(-exp_));
        return sign_ < 0 ? Rational(-r) : r;
    }

    double to_double_approx() const {
        if (sign_ == 0) return 0.0;
        const unsigned bl = bit_length(mant_);
        const unsigned sh = bl > 53 ? bl - 53 : 0;
        const double m = Int(mant_ >> sh).convert_to<double>();
        return sign_ * std::ldexp(m, static_cast<int>(exp_ + sh));
    }

    BigFloat rounded(unsigned prec) const {
        BigFloat r = *this;
        r.prec_ = prec;
        if (r.sign_ != 0) r.normalize(false);
        return r;
    }

    friend BigFloat operator-(const BigFloat& a) {
        BigFloat r = a;
        r.sign_ = -r.sign_;
        return r;
    }

    friend BigFloat abs(const BigFloat& a) {
        BigFloat r = a;
        r.sign_ = r.sign_ == 0 ? 0 : 1;
        return r;
    }

    // scale by 2^k, exact
    friend BigFloat ldexp2(const BigFloat& a, std::int64_t k) {
        BigFloat r = a;
        if (r.sign_ != 0) r.exp_ += k;
        return r;
    }

    friend BigFloat added(const BigFloat& a, const BigFloat& b, unsigned prec) {
        if (a.sign_ == 0) return b.rounded(prec);
        if (b.sign_ == 0) return a.rounded(prec);
        const std::int64_t ta = a.exponent2(), tb = b.exponent2();
        const std::int64_t margin = static_cast<std::int64_t>(prec) + 64;
        if (ta - tb > margin) return a.rounded(prec);
        if (tb - ta > margin) return b.rounded(prec);
        const std::int64_t e = std::min(a.exp_, b.exp_);
        Int ma = a.mant_ << static_cast<unsigned long>(a.exp_ - e);
        Int mb = b.mant_ << static_cast<unsigned long>(b.exp_ - e);
        if (a.sign_ < 0) ma = -ma;
        if (b.sign_ < 0) mb = -mb;
        Int m = ma + mb;
        const int s = m == 0 ? 0 : (m < 0 ? -1 : 1);
        if (s < 0) m = -m;
        return from_parts(s, std::move(m), e, prec);
    }

    friend BigFloat subbed(const BigFloat& a, const BigFloat& b, unsigned prec) { return added(a, -b, prec); }

    friend BigFloat multiplied(const BigFloat& a, const BigFloat& b, unsigned prec) {
        if (a.sign_ == 0 || b.sign_ == 0) return BigFloat(0L, prec);
        return from_parts(a.sign_ * b.sign_, a.mant_ * b.mant_, a.exp_ + b.exp_, prec);
    }

    friend BigFloat divided(const BigFloat& a, const BigFloat& b, unsigned prec) {
        if (b.sign_ == 0) throw DomainError("BigFloat division by zero");
        if (a.sign_ == 0) return BigFloat(0L, prec);
        std::int64_t sh = static_cast<std::int64_t>(prec) + 3 + bit_length(b.mant_) - bit_length(a.mant_);
        if (sh < 0) sh = 0;
        Int q, r;
        boost::multiprecision::divide_qr(Int(a.mant_ << static_cast<unsigned long>(sh)), b.mant_, q, r);
        return from_parts(a.sign_ * b.sign_, std::move(q), a.exp_ - b.exp_ - sh, prec, r != 0);
    }

    friend BigFloat sqrt_at(const BigFloat& a, unsigned prec) {
        if (a.sign_ < 0) throw DomainError("sqrt of negative value");
        if (a.sign_ == 0) return BigFloat(0L, prec);
        std::int64_t sh = 2 * (static_cast<std::int64_t>(prec) + 3) - bit_length(a.mant_);
        if (sh < 0) sh = 0;
        if ((a.exp_ - sh) & 1) ++sh;
        Int r;
        Int s = boost::multiprecision::sqrt(Int(a.mant_ << static_cast<unsigned long>(sh)), r);
        return from_parts(1, std::move(s), (a.exp_ - sh) / 2, prec, r != 0);
    }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) { return added(a, b, std::max(a.prec_, b.prec_)); }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) { return subbed(a, b, std::max(a.prec_, b.prec_)); }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) { return multiplied(a, b, std::max(a.prec_, b.prec_)); }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) { return divided(a, b, std::max(a.prec_, b.prec_)); }

    friend BigFloat operator+(const BigFloat& a, long v) { return a + BigFloat(v, a.prec_); }
    friend BigFloat operator+(long v, const BigFloat& a) { return a + v; }
    friend BigFloat operator-(const BigFloat& a, long v) { return a - BigFloat(v, a.prec_); }
    friend BigFloat operator-(long v, const BigFloat& a) { return BigFloat(v, a.prec_) - a; }
    friend BigFloat operator*(const BigFloat& a, long v) { return a * BigFloat(v, a.prec_); }
    friend BigFloat operator*(long v, const BigFloat& a) { return a * v; }
    friend BigFloat operator/(const BigFloat& a, long v) { return a / BigFloat(v, a.prec_); }
    friend BigFloat operator/(long v, const BigFloat& a) { return BigFloat(v, a.prec_) / a; }

    BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
    BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
    BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }
    BigFloat& operator/=(const BigFloat& o) { return *this = *this / o; }

    friend int cmp(const BigFloat& a, const BigFloat& b) {
        if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
        if (a.sign_ == 0) return 0;
        const std::int64_t ta = a.exponent2(), tb = b.exponent2();
        if (ta != tb) return (ta < tb ? -1 : 1) * a.sign_;
        const std::int64_t e = std::min(a.exp_, b.exp_);
        const Int ma = a.mant_ << static_cast<unsigned long>(a.exp_ - e);
        const Int mb = b.mant_ << static_cast<unsigned long>(b.exp_ - e);
        if (ma == mb) return 0;
        return (ma < mb ? -1 : 1) * a.sign_;
    }

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return cmp(a, b) < 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return cmp(a, b) > 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return cmp(a, b) >= 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const BigFloat& a, const BigFloat& b) { return cmp(a, b) != 0; }

    // scientific notation with the given number of significant digits
    std::string str(size_t digits10 = 0) const {
        if (digits10 == 0) digits10 = decimal_digits_for(prec_);
        if (sign_ == 0) return "0";
        // estimate the decimal exponent, then correct
        std::int64_t d10 = static_cast<std::int64_t>(std::floor(static_cast<double>(exponent2()) * 0.3010299956639812));
        for (int pass = 0; pass < 4; ++pass) {
            const std::int64_t k = static_cast<std::int64_t>(digits10) - 1 - d10;
            Int scaled = scaled_integer(k);
            const Int low = boost::multiprecision::pow(Int(10), static_cast<unsigned long>(digits10 - 1));
            const Int high = low * 10;
            if (scaled < low) { --d10; continue; }
            if (scaled >= high) { ++d10; continue; }
            std::string ds = scaled.str();
            std::string out = sign_ < 0 ? "-" : "";
            out += ds.substr(0, 1);
            if (ds.size() > 1) out += "." + ds.substr(1);
            out += "e";
            out += (d10 < 0 ? "-" : "+") + std::to_string(d10 < 0 ? -d10 : d10);
            return out;
        }
        throw Error("BigFloat::str: exponent estimate failed");
    }

    static size_t decimal_digits_for(unsigned prec) {
        return static_cast<size_t>(std::max(1.0, std::floor(prec * 0.3010299956639812)));
    }

private:
    static unsigned bit_length(const Int& v) { return v == 0 ? 0 : boost::multiprecision::msb(v) + 1; }

    // round(|x| * 10^k) as an integer, round-half-even
    Int scaled_integer(std::int64_t k) const {
        Int n = mant_;
        Int d = 1;
        if (k >= 0) n *= boost::multiprecision::pow(Int(10), static_cast<unsigned long>(k));
        else d *= boost::multiprecision::pow(Int(10), static_cast<unsigned long>(-k));
        if (exp_ >= 0) n <<= static_cast<unsigned long>(exp_);
        else d <<= static_cast<unsigned long>(-exp_);
        Int q, r;
        boost::multiprecision::divide_qr(n, d, q, r);
        const Int twice = r * 2;
        if (twice > d || (twice == d && boost::multiprecision::bit_test(q, 0))) ++q;
        return q;
    }

    void normalize(bool sticky) {
        unsigned bl = bit_length(mant_);
        if (bl > prec_) {
            const unsigned shift = bl - prec_;
            const bool half = boost::multiprecision::bit_test(mant_, shift - 1);
            bool rest = sticky;
            if (!rest && shift >= 2) {
                const Int low = mant_ & ((Int(1) << (shift - 1)) - 1);
                rest = low != 0;
            }
            mant_ >>= shift;
            exp_ += shift;
            if (half && (rest || boost::multiprecision::bit_test(mant_, 0))) {
                ++mant_;
                if (bit_length(mant_) > prec_) {
                    mant_ >>= 1;
                    ++exp_;
                }
            }
        }
        if (mant_ == 0) {
            sign_ = 0;
            exp_ = 0;
            return;
        }
        const unsigned tz = boost::multiprecision::lsb(mant_);
        if (tz > 0) {
            mant_ >>= tz;
            exp_ += tz;
        }
    }

    int sign_ = 0;
    Int mant_;
    std::int64_t exp_ = 0;
    unsigned prec_ = 64;
};

inline bool is_scalar_zero(const BigFloat& x) { return x.is_zero(); }
inline BigFloat scalar_inverse(const BigFloat& x) { return divided(BigFloat(1L, x.precision()), x, x.precision()); }

inline BigFloat pow_int_at(const BigFloat& x, long e, unsigned prec) {
    if (e == 0) return BigFloat(1L, prec);
    unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
    unsigned extra = 4;
    for (unsigned long t = n; t > 1; t >>= 1) extra += 2;
    const unsigned work = prec + extra;
    BigFloat base = x.rounded(work), acc(1L, work);
    while (n > 0) {
        if (n & 1) acc = multiplied(acc, base, work);
        base = multiplied(base, base, work);
        n >>= 1;
    }
    if (e < 0) acc = divided(BigFloat(1L, work), acc, work);
    return acc.rounded(prec);
}

// |a - b| <= 2^-bits * 2^floor(log2 max(|a|,|b|)) (relative closeness test)
inline bool rel_close(const BigFloat& a, const BigFloat& b, unsigned bits) {
    const BigFloat d = a - b;
    if (d.is_zero()) return true;
    if (a.is_zero() && b.is_zero()) return true;
    std::int64_t scale;
    if (a.is_zero()) scale = b.exponent2();
    else if (b.is_zero()) scale = a.exponent2();
    else scale = std::max(a.exponent2(), b.exponent2());
    return d.exponent2() <= scale - static_cast<std::int64_t>(bits);
}

// Evaluation context: target precision plus guard bits for internal work.
struct EvalContext {
    unsigned prec;
    unsigned guard;

    explicit EvalContext(unsigned p = 192, unsigned g = 32) : prec(p), guard(g) {
        if (p < 64) throw DomainError("EvalContext: precision must be >= 64 bits");
    }

    unsigned work() const { return prec + guard; }
    EvalContext cross() const { return EvalContext(prec + 64, guard); }

    BigFloat lift(const Rational& q) const { return BigFloat(q, work()); }
    BigFloat lift(long v) const { return BigFloat(v, work()); }
};

} // namespace hyperver
