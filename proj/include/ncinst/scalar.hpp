#pragma once

#include <map>
#include <optional>
#include <sstream>

#include "ncinst/base_number.hpp"

namespace ncinst {

// Laurent polynomial in the formal unimodular deformation parameter q with
// coefficients in Q(i, sqrt2). The conventions mu = q^2 and lambda = q^4 make
// every exponent appearing in the twisted algebras an integer.
//
// conj() models |q| = 1: coefficients are conjugated and q |-> q^{-1}.
class Scalar {
  public:
    Scalar() = default;
    Scalar(std::int64_t n) { set(0, BaseNumber(n)); }
    Scalar(Rational r) { set(0, BaseNumber(r)); }
    Scalar(BaseNumber b) { set(0, std::move(b)); }

    static Scalar q_power(int e) {
        Scalar s;
        s.set(e, BaseNumber(1));
        return s;
    }
    static Scalar mu() { return q_power(2); }
    static Scalar mu_bar() { return q_power(-2); }
    static Scalar lambda() { return q_power(4); }
    static Scalar lambda_bar() { return q_power(-4); }
    static Scalar i() { return Scalar(BaseNumber::i()); }
    static Scalar sqrt2() { return Scalar(BaseNumber::sqrt2()); }
    static Scalar inv_sqrt2() { return Scalar(BaseNumber::inv_sqrt2()); }
    static Scalar half() { return Scalar(Rational(1, 2)); }

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const {
        return terms_.size() == 1 && terms_.begin()->first == 0 &&
               terms_.begin()->second.is_one();
    }
    const std::map<int, BaseNumber>& terms() const { return terms_; }

    // The coefficient of q^e (zero if absent).
    BaseNumber coeff(int e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? BaseNumber() : it->second;
    }

    friend Scalar operator+(const Scalar& x, const Scalar& y) {
        Scalar r = x;
        for (const auto& [e, c] : y.terms_)
            r.add(e, c);
        return r;
    }
    friend Scalar operator-(const Scalar& x, const Scalar& y) {
        Scalar r = x;
        for (const auto& [e, c] : y.terms_)
            r.add(e, -c);
        return r;
    }
    Scalar operator-() const {
        Scalar r;
        for (const auto& [e, c] : terms_)
            r.set(e, -c);
        return r;
    }
    friend Scalar operator*(const Scalar& x, const Scalar& y) {
        Scalar r;
        for (const auto& [e1, c1] : x.terms_)
            for (const auto& [e2, c2] : y.terms_)
                r.add(e1 + e2, c1 * c2);
        return r;
    }
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    friend bool operator==(const Scalar& x, const Scalar& y) {
        return x.terms_ == y.terms_;
    }
    friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

    Scalar conj() const {
        Scalar r;
        for (const auto& [e, c] : terms_)
            r.set(-e, c.conj());
        return r;
    }

    // q = 1 specialization; the only supported classical point.
    BaseNumber specialize_q1() const {
        BaseNumber s;
        for (const auto& [e, c] : terms_)
            s += c;
        return s;
    }

    // Exact division in Q(i,sqrt2)[q,q^-1]; nullopt if y does not divide x.
    static std::optional<Scalar> divide_exact(const Scalar& x, const Scalar& y) {
        if (y.is_zero())
            return std::nullopt;
        if (x.is_zero())
            return Scalar();
        Scalar rem = x, quot;
        const auto ylead = std::prev(y.terms_.end());
        while (!rem.is_zero()) {
            const auto rlead = std::prev(rem.terms_.end());
            int e = rlead->first - ylead->first;
            BaseNumber c = rlead->second * ylead->second.inverse();
            Scalar t;
            t.set(e, c);
            quot += t;
            rem -= t * y;
            if (!rem.is_zero() && std::prev(rem.terms_.end())->first >= rlead->first)
                return std::nullopt; // no progress; not exactly divisible
        }
        return quot;
    }

    std::string str() const {
        if (terms_.empty())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            std::string cs = c.str();
            bool composite = cs.find(" + ") != std::string::npos ||
                             cs.find(" - ") != std::string::npos;
            if (!first)
                os << " + ";
            if (e == 0) {
                os << (composite ? "(" + cs + ")" : cs);
            } else {
                if (!c.is_one())
                    os << (composite ? "(" + cs + ")" : cs) << "*";
                os << "q^" << e;
            }
            first = false;
        }
        return os.str();
    }
    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) {
        return os << s.str();
    }

  private:
    void set(int e, BaseNumber c) {
        if (!c.is_zero())
            terms_[e] = std::move(c);
    }
    void add(int e, const BaseNumber& c) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (!c.is_zero())
                terms_.emplace(e, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }

    std::map<int, BaseNumber> terms_;
};

} // namespace ncinst
