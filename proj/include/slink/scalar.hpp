#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <gmpxx.h>

namespace slink {

struct ScalarError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Element of a prime field F_p (p a machine-word prime) or of Q (p = 0).
// Residues are kept reduced, rationals in lowest terms (mpq_class canonicalizes).
class Scalar {
  public:
    Scalar() : p_(0), r_(0), q_(0) {}
    static Scalar zero(long p) { return from_int(p, 0); }
    static Scalar one(long p) { return from_int(p, 1); }
    static Scalar from_int(long p, long v);
    static Scalar from_rational(long num, long den);  // characteristic 0 only

    long characteristic() const { return p_; }
    bool is_zero() const;
    bool is_one() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator-() const;
    Scalar inverse() const;
    Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    std::string str() const;

    // Small-integer view for p > 0 (residue) used by tests.
    std::uint64_t residue() const { return r_; }
    const mpq_class& rational() const { return q_; }

  private:
    long p_;
    std::uint64_t r_;  // used when p_ > 0
    mpq_class q_;      // used when p_ == 0
    void check_same(const Scalar& o) const;
};

bool is_valid_characteristic(long p);  // 0 or a prime < 2^31

}  // namespace slink
