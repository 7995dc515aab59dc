#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

namespace measure_modes {

/// Exact rational number, always in lowest terms with a positive denominator.
///
/// Values whose numerator and denominator fit in 64 bits are kept inline;
/// anything larger lives in a GMP mpq_class. The textual form is always "p/q".
class Rational {
 public:
  Rational() = default;
  Rational(long value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : num_(value) {}   // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(const mpq_class& q);

  Rational(const Rational& o) : num_(o.num_), den_(o.den_), big_(o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr) {}
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& o) {
    if (this != &o) {
      num_ = o.num_;
      den_ = o.den_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rational& operator=(Rational&&) noexcept = default;

  /// Parses "p/q", "p" or a finite decimal such as "0.125".
  /// Throws std::invalid_argument on malformed input or a zero denominator.
  static Rational parse(std::string_view text);

  mpq_class to_mpq() const;
  mpz_class numerator() const;
  mpz_class denominator() const;

  int sign() const { return big_ ? sgn(*big_) : (num_ > 0) - (num_ < 0); }
  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_integer() const { return !big_ && den_ == 1; }

  /// Always "p/q", including "0/1" and "3/1".
  std::string str() const;
  /// Truncated decimal rendering, display only.
  std::string decimal(int digits = 12) const;
  /// Nearest double, display only.
  double approx() const { return big_ ? big_->get_d() : static_cast<double>(num_) / static_cast<double>(den_); }

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a);

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // a big value never equals an inline one
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  // Stores q inline when it fits, else in big_.
  void assign(const mpq_class& q);
  void assign_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational positive_part(const Rational& r) { return r.sign() > 0 ? r : Rational(0); }

/// floor(r) as a signed 64-bit integer; throws std::overflow_error if it does not fit.
std::int64_t floor_to_int(const Rational& r);
/// numerator / 2^level
Rational dyadic(std::int64_t numerator, int level);

}  // namespace measure_modes
