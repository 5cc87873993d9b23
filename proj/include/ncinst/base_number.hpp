#pragma once

#include <array>
#include <ostream>
#include <sstream>

#include "ncinst/rational.hpp"

namespace ncinst {

// Element of the number field Q(i, sqrt2), stored as a + b*i + c*sqrt2 + d*i*sqrt2.
// Multiplication uses i^2 = -1 and (sqrt2)^2 = 2. conj() flips the sign of i.
class BaseNumber {
  public:
    BaseNumber() = default;
    BaseNumber(Rational a) : c_{a, 0, 0, 0} {}
    BaseNumber(std::int64_t a) : c_{Rational(a), 0, 0, 0} {}
    BaseNumber(Rational a, Rational b, Rational c, Rational d) : c_{a, b, c, d} {}

    static BaseNumber i() { return BaseNumber(0, 1, 0, 0); }
    static BaseNumber sqrt2() { return BaseNumber(0, 0, 1, 0); }
    static BaseNumber inv_sqrt2() { return BaseNumber(0, 0, Rational(1, 2), 0); }

    const Rational& re() const { return c_[0]; }
    const Rational& im() const { return c_[1]; }
    const Rational& re_sqrt2() const { return c_[2]; }
    const Rational& im_sqrt2() const { return c_[3]; }

    bool is_zero() const {
        return c_[0].is_zero() && c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero();
    }
    bool is_one() const {
        return c_[0].is_one() && c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero();
    }
    bool is_rational() const {
        return c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero();
    }

    friend BaseNumber operator+(const BaseNumber& x, const BaseNumber& y) {
        return BaseNumber(x.c_[0] + y.c_[0], x.c_[1] + y.c_[1], x.c_[2] + y.c_[2],
                          x.c_[3] + y.c_[3]);
    }
    friend BaseNumber operator-(const BaseNumber& x, const BaseNumber& y) {
        return BaseNumber(x.c_[0] - y.c_[0], x.c_[1] - y.c_[1], x.c_[2] - y.c_[2],
                          x.c_[3] - y.c_[3]);
    }
    BaseNumber operator-() const {
        return BaseNumber(-c_[0], -c_[1], -c_[2], -c_[3]);
    }

    // (a1 + b1 i + c1 s + d1 is)(a2 + b2 i + c2 s + d2 is), s = sqrt2.
    friend BaseNumber operator*(const BaseNumber& x, const BaseNumber& y) {
        const Rational &a1 = x.c_[0], &b1 = x.c_[1], &c1 = x.c_[2], &d1 = x.c_[3];
        const Rational &a2 = y.c_[0], &b2 = y.c_[1], &c2 = y.c_[2], &d2 = y.c_[3];
        Rational two(2);
        Rational a = a1 * a2 - b1 * b2 + two * (c1 * c2 - d1 * d2);
        Rational b = a1 * b2 + b1 * a2 + two * (c1 * d2 + d1 * c2);
        Rational c = a1 * c2 + c1 * a2 - b1 * d2 - d1 * b2;
        Rational d = a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2;
        return BaseNumber(a, b, c, d);
    }
    BaseNumber& operator+=(const BaseNumber& o) { return *this = *this + o; }
    BaseNumber& operator-=(const BaseNumber& o) { return *this = *this - o; }
    BaseNumber& operator*=(const BaseNumber& o) { return *this = *this * o; }

    friend bool operator==(const BaseNumber& x, const BaseNumber& y) {
        return x.c_ == y.c_;
    }
    friend bool operator!=(const BaseNumber& x, const BaseNumber& y) { return !(x == y); }

    BaseNumber conj() const { return BaseNumber(c_[0], -c_[1], c_[2], -c_[3]); }
    BaseNumber conj_sqrt2() const { return BaseNumber(c_[0], c_[1], -c_[2], -c_[3]); }

    // Field inverse: rationalize over i first, then over sqrt2.
    BaseNumber inverse() const {
        if (is_zero())
            throw std::domain_error("BaseNumber: inverse of zero");
        BaseNumber w = (*this) * conj();          // lies in Q(sqrt2)
        BaseNumber n = w * w.conj_sqrt2();        // lies in Q
        return conj() * w.conj_sqrt2() * BaseNumber(Rational(1) / n.c_[0]);
    }

    double to_double_re() const {
        const double s = 1.4142135623730951;
        return c_[0].to_double() + s * c_[2].to_double();
    }
    double to_double_im() const {
        const double s = 1.4142135623730951;
        return c_[1].to_double() + s * c_[3].to_double();
    }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        auto emit = [&](const Rational& r, const char* sym) {
            if (r.is_zero())
                return;
            if (!first)
                os << (r < Rational(0) ? " - " : " + ");
            else if (r < Rational(0))
                os << "-";
            Rational a = r < Rational(0) ? -r : r;
            if (sym[0] == '\0') {
                os << a.str();
            } else {
                if (!a.is_one())
                    os << a.str() << "*";
                os << sym;
            }
            first = false;
        };
        emit(c_[0], "");
        emit(c_[1], "i");
        emit(c_[2], "sqrt2");
        emit(c_[3], "i*sqrt2");
        if (first)
            os << "0";
        return os.str();
    }
    friend std::ostream& operator<<(std::ostream& os, const BaseNumber& z) {
        return os << z.str();
    }

  private:
    std::array<Rational, 4> c_{};
};

} // namespace ncinst
