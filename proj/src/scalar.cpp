#include "slink/scalar.hpp"

namespace slink {

bool is_valid_characteristic(long p) {
    if (p == 0) return true;
    if (p < 2 || p >= (1L << 31)) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

Scalar Scalar::from_int(long p, long v) {
    Scalar s;
    s.p_ = p;
    if (p > 0) {
        long r = v % p;
        if (r < 0) r += p;
        s.r_ = static_cast<std::uint64_t>(r);
    } else {
        s.q_ = v;
    }
    return s;
}

Scalar Scalar::from_rational(long num, long den) {
    if (den == 0) throw ScalarError("zero denominator");
    Scalar s;
    s.p_ = 0;
    s.q_ = mpq_class(num, den);
    s.q_.canonicalize();
    return s;
}

void Scalar::check_same(const Scalar& o) const {
    if (p_ != o.p_) throw ScalarError("characteristic mismatch");
}

bool Scalar::is_zero() const { return p_ > 0 ? r_ == 0 : q_ == 0; }
bool Scalar::is_one() const { return p_ > 0 ? r_ == 1 : q_ == 1; }

Scalar Scalar::operator+(const Scalar& o) const {
    check_same(o);
    Scalar s;
    s.p_ = p_;
    if (p_ > 0) {
        std::uint64_t t = r_ + o.r_;
        if (t >= static_cast<std::uint64_t>(p_)) t -= p_;
        s.r_ = t;
    } else {
        s.q_ = q_ + o.q_;
    }
    return s;
}

Scalar Scalar::operator-() const {
    Scalar s;
    s.p_ = p_;
    if (p_ > 0)
        s.r_ = r_ == 0 ? 0 : static_cast<std::uint64_t>(p_) - r_;
    else
        s.q_ = -q_;
    return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    check_same(o);
    Scalar s;
    s.p_ = p_;
    if (p_ > 0)
        s.r_ = (r_ * o.r_) % static_cast<std::uint64_t>(p_);  // p < 2^31, no overflow
    else
        s.q_ = q_ * o.q_;
    return s;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw ScalarError("inversion of zero");
    Scalar s;
    s.p_ = p_;
    if (p_ > 0) {
        // extended Euclid
        long a = static_cast<long>(r_), b = p_, x0 = 1, x1 = 0;
        while (b != 0) {
            long q = a / b;
            long t = a - q * b; a = b; b = t;
            t = x0 - q * x1; x0 = x1; x1 = t;
        }
        long r = x0 % p_;
        if (r < 0) r += p_;
        s.r_ = static_cast<std::uint64_t>(r);
    } else {
        s.q_ = 1 / q_;
    }
    return s;
}

bool Scalar::operator==(const Scalar& o) const {
    if (p_ != o.p_) return false;
    return p_ > 0 ? r_ == o.r_ : q_ == o.q_;
}

std::string Scalar::str() const {
    if (p_ > 0) return std::to_string(r_);
    return q_.get_str();
}

}  // namespace slink
