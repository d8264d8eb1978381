#include "qskew/scalar.hpp"

#include <cmath>
#include <cstdio>

namespace qskew {

const char* field_name(Field f) { return f == Field::Rational ? "rational" : "float64"; }

Field parse_field(const std::string& s)
{
    if (s == "rational") return Field::Rational;
    if (s == "float64") return Field::Float64;
    throw ValidationError("unknown field '" + s + "'");
}

Q parse_rational(const std::string& s)
{
    if (s.empty()) throw ValidationError("empty rational literal");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    bool slash = false;
    if (start == s.size()) throw ValidationError("bad rational literal '" + s + "'");
    for (std::size_t i = start; i < s.size(); ++i) {
        char c = s[i];
        if (c == '/') {
            if (slash || i == start || i + 1 == s.size())
                throw ValidationError("bad rational literal '" + s + "'");
            slash = true;
        } else if (c < '0' || c > '9') {
            throw ValidationError("bad rational literal '" + s + "'");
        }
    }
    Q q;
    if (q.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0)
        throw ValidationError("bad rational literal '" + s + "'");
    if (q.get_den() == 0) throw ValidationError("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

std::string to_string(const Q& q) { return q.get_str(); }

Q rational_from_double(double d)
{
    if (!std::isfinite(d)) throw ValidationError("non-finite float value");
    Q q(d);  // exact for binary64
    q.canonicalize();
    return q;
}

Scalar Scalar::real(double d)
{
    Scalar s;
    s.mode_ = Field::Float64;
    s.d_ = d;
    return s;
}

void Scalar::check(const Scalar& o) const
{
    if (mode_ != o.mode_) throw ModeMismatch("rational and float64 scalars mixed");
}

const Q& Scalar::rational() const
{
    if (mode_ != Field::Rational) throw ModeMismatch("rational value requested from float64 scalar");
    return q_;
}

double Scalar::to_double() const { return mode_ == Field::Rational ? q_.get_d() : d_; }

bool Scalar::is_zero() const { return mode_ == Field::Rational ? sgn(q_) == 0 : d_ == 0.0; }

int Scalar::sign() const
{
    if (mode_ == Field::Rational) return sgn(q_);
    return (d_ > 0) - (d_ < 0);
}

std::string Scalar::str() const
{
    if (mode_ == Field::Rational) return q_.get_str();
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", d_);
    return buf;
}

Scalar Scalar::operator-() const
{
    Scalar r = *this;
    if (mode_ == Field::Rational) r.q_ = -q_;
    else r.d_ = -d_;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o)
{
    check(o);
    if (mode_ == Field::Rational) q_ += o.q_;
    else d_ += o.d_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o)
{
    check(o);
    if (mode_ == Field::Rational) q_ -= o.q_;
    else d_ -= o.d_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o)
{
    check(o);
    if (mode_ == Field::Rational) q_ *= o.q_;
    else d_ *= o.d_;
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o)
{
    check(o);
    if (o.is_zero()) throw std::domain_error("division by zero scalar");
    if (mode_ == Field::Rational) q_ /= o.q_;
    else d_ /= o.d_;
    return *this;
}

bool operator==(const Scalar& a, const Scalar& b)
{
    a.check(b);
    return a.mode_ == Field::Rational ? a.q_ == b.q_ : a.d_ == b.d_;
}

Scalar Scalar::sqrt() const
{
    if (mode_ == Field::Rational) throw ModeMismatch("square root needs float64 mode");
    return real(std::sqrt(d_));
}

} // namespace qskew
