#include "measure_modes/rational.hpp"

#include <numeric>
#include <ostream>
#include <stdexcept>

namespace measure_modes {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

constexpr i128 kInlineMax = INT64_MAX;

u128 gcd128(u128 a, u128 b) {
  if (a <= UINT64_MAX && b <= UINT64_MAX) {
    return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
  }
  while (b != 0) {
    const u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u128 magnitude(i128 x) { return x < 0 ? static_cast<u128>(-x) : static_cast<u128>(x); }

mpz_class to_mpz(i128 x) {
  const bool neg = x < 0;
  const u128 m = magnitude(x);
  mpz_class hi(static_cast<unsigned long>(m >> 64));
  mpz_class out = (hi << 64) + mpz_class(static_cast<unsigned long>(m & UINT64_MAX));
  return neg ? mpz_class(-out) : out;
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  assign_wide(num, den);
}

Rational::Rational(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  assign(c);
}

void Rational::assign(const mpq_class& q) {
  if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p() && q.get_num() != INT64_MIN) {
    num_ = q.get_num().get_si();
    den_ = q.get_den().get_si();
    big_.reset();
  } else {
    big_ = std::make_unique<mpq_class>(q);
  }
}

void Rational::assign_wide(i128 num, i128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const u128 g = gcd128(magnitude(num), static_cast<u128>(den));
  if (g > 1) {
    num /= static_cast<i128>(g);
    den /= static_cast<i128>(g);
  }
  if (num <= kInlineMax && num >= -kInlineMax && den <= kInlineMax) {
    num_ = static_cast<std::int64_t>(num);
    den_ = static_cast<std::int64_t>(den);
    big_.reset();
  } else {
    big_ = std::make_unique<mpq_class>(to_mpz(num), to_mpz(den));
  }
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

mpz_class Rational::numerator() const { return big_ ? big_->get_num() : mpz_class(static_cast<long>(num_)); }
mpz_class Rational::denominator() const { return big_ ? big_->get_den() : mpz_class(static_cast<long>(den_)); }

Rational& Rational::operator+=(const Rational& o) {
  if (big_ || o.big_) {
    assign(mpq_class(to_mpq() + o.to_mpq()));
  } else if (den_ == o.den_) {
    assign_wide(static_cast<i128>(num_) + o.num_, den_);
  } else {
    assign_wide(static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_,
                static_cast<i128>(den_) * o.den_);
  }
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  if (big_ || o.big_) {
    assign(mpq_class(to_mpq() - o.to_mpq()));
  } else if (den_ == o.den_) {
    assign_wide(static_cast<i128>(num_) - o.num_, den_);
  } else {
    assign_wide(static_cast<i128>(num_) * o.den_ - static_cast<i128>(o.num_) * den_,
                static_cast<i128>(den_) * o.den_);
  }
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  if (big_ || o.big_) {
    assign(mpq_class(to_mpq() * o.to_mpq()));
  } else {
    assign_wide(static_cast<i128>(num_) * o.num_, static_cast<i128>(den_) * o.den_);
  }
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("rational division by zero");
  if (big_ || o.big_) {
    assign(mpq_class(to_mpq() / o.to_mpq()));
  } else {
    assign_wide(static_cast<i128>(num_) * o.den_, static_cast<i128>(den_) * o.num_);
  }
  return *this;
}

Rational operator-(const Rational& a) {
  Rational out;
  if (a.big_) {
    out.assign(mpq_class(-*a.big_));
  } else {
    out.num_ = -a.num_;
    out.den_ = a.den_;
  }
  return out;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  int c;
  if (!a.big_ && !b.big_) {
    if (a.den_ == b.den_) return a.num_ <=> b.num_;
    const i128 l = static_cast<i128>(a.num_) * b.den_;
    const i128 r = static_cast<i128>(b.num_) * a.den_;
    c = (l > r) - (l < r);
  } else {
    c = cmp(a.to_mpq(), b.to_mpq());
  }
  return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (!is_integer_literal(s)) {
    throw std::invalid_argument("malformed rational literal '" + std::string(s) + "'");
  }
  if (s[0] == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(text.substr(0, slash));
    mpz_class den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Rational(q);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    const bool negative = !whole.empty() && whole[0] == '-';
    std::string digits(whole.empty() || whole == "-" || whole == "+" ? std::string(whole) + "0"
                                                                      : std::string(whole));
    if (frac.empty() || !is_integer_literal(frac) || frac[0] == '-' || frac[0] == '+') {
      throw std::invalid_argument("malformed decimal literal '" + std::string(text) + "'");
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class w = parse_integer(digits);
    mpz_class f = parse_integer(frac);
    mpz_class num = (negative ? -1 : 1) * (abs(w) * scale + f);
    mpq_class q(num, scale);
    q.canonicalize();
    return Rational(q);
  }
  return Rational(mpq_class(parse_integer(text)));
}

std::string Rational::str() const {
  if (!big_) return std::to_string(num_) + "/" + std::to_string(den_);
  return big_->get_num().get_str() + "/" + big_->get_den().get_str();
}

std::string Rational::decimal(int digits) const {
  mpz_class num = numerator();
  const mpz_class den = denominator();
  std::string out;
  if (num < 0) {
    out += '-';
    num = -num;
  }
  mpz_class whole = num / den;
  mpz_class rem = num % den;
  out += whole.get_str();
  if (digits > 0) {
    out += '.';
    for (int i = 0; i < digits; ++i) {
      rem *= 10;
      mpz_class d = rem / den;
      rem %= den;
      out += d.get_str();
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

std::int64_t floor_to_int(const Rational& r) {
  mpz_class f;
  const mpz_class n = r.numerator(), d = r.denominator();
  mpz_fdiv_q(f.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  if (!f.fits_slong_p()) throw std::overflow_error("floor does not fit in 64 bits");
  return f.get_si();
}

Rational dyadic(std::int64_t numerator, int level) {
  if (level >= 0 && level < 62) return Rational(numerator, std::int64_t{1} << level);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(level));
  mpq_class q(mpz_class(static_cast<long>(numerator)), den);
  q.canonicalize();
  return Rational(q);
}

}  // namespace measure_modes
