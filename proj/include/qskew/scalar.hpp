#pragma once

#include <gmpxx.h>

#include <string>

#include "qskew/error.hpp"

namespace qskew {

using Q = mpq_class;
using Z = mpz_class;

enum class Field { Rational, Float64 };

const char* field_name(Field f);
Field parse_field(const std::string& s);

// Parses "p", "-p" or "p/q" into a canonical rational.
Q parse_rational(const std::string& s);
std::string to_string(const Q& q);

// Exact double -> rational conversion (every finite double is dyadic).
Q rational_from_double(double d);

// A value that is either an exact rational or a binary64 float. Arithmetic
// between the two modes throws ModeMismatch.
class Scalar {
public:
    Scalar() : mode_(Field::Rational) {}
    Scalar(const Q& q) : mode_(Field::Rational), q_(q) { q_.canonicalize(); }
    Scalar(long v) : mode_(Field::Rational), q_(v) {}
    Scalar(int v) : mode_(Field::Rational), q_(v) {}
    static Scalar real(double d);
    static Scalar zero(Field f) { return f == Field::Rational ? Scalar(0) : real(0.0); }
    static Scalar one(Field f) { return f == Field::Rational ? Scalar(1) : real(1.0); }

    Field mode() const { return mode_; }
    const Q& rational() const;
    double to_double() const;
    bool is_zero() const;
    int sign() const;
    std::string str() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // Square root; float mode only.
    Scalar sqrt() const;

private:
    void check(const Scalar& o) const;

    Field mode_;
    Q q_;
    double d_ = 0.0;
};

} // namespace qskew
