#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubical {

/// Exact rational number on 64-bit numerator/denominator.
///
/// Always stored canonically: denominator > 0, gcd(num, den) == 1.
/// Intermediate products run through 128-bit integers; results that do not
/// fit back into 64 bits throw std::overflow_error rather than wrapping.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(long long n, long long d);

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }

  Rational operator-() const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;
  bool operator<=(const Rational& o) const { return *this < o || *this == o; }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return o <= *this; }

  Rational abs() const { return num_ < 0 ? -*this : *this; }

  /// Largest integer <= value.
  long long floor() const;
  /// Nearest integer, ties rounded toward zero (the tie rule is part of the
  /// translation-reduction contract and must stay fixed).
  long long round_half_toward_zero() const;

  /// Canonical "p/q" string; "/q" omitted when q == 1.
  std::string str() const;
  /// Parses "p", "-p", "p/q". Throws std::invalid_argument on bad syntax.
  static Rational parse(const std::string& s);

 private:
  static Rational make(__int128 n, __int128 d);
  long long num_;
  long long den_;
  friend struct RationalRaw;
};

using RatVec = std::vector<Rational>;
using RatMat = std::vector<std::vector<Rational>>;

RatMat identity_matrix(int n);
RatMat mat_mul(const RatMat& a, const RatMat& b);
RatVec mat_apply(const RatMat& a, const RatVec& x);
RatMat mat_transpose(const RatMat& a);
bool mat_equal(const RatMat& a, const RatMat& b);
/// Inverse by Gauss-Jordan elimination. Throws std::domain_error if singular.
RatMat mat_inverse(const RatMat& a);

RatVec vec_add(const RatVec& a, const RatVec& b);
RatVec vec_sub(const RatVec& a, const RatVec& b);
bool vec_is_integral(const RatVec& v);

/// Least common multiple of all denominators appearing in the arguments.
long long common_denominator(const RatMat& a, const RatVec& b);

}  // namespace cubical
