#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

#include "affcover/error.hpp"

namespace affcover {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

inline int sign(const Rational& r) { return r.sign(); }

inline std::string format(const Rational& r) {
  auto num = boost::multiprecision::numerator(r);
  auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline Rational parse_rational(std::string_view s) {
  auto bad = [&] { return Error(ErrorCode::ParseError, "bad rational '" + std::string(s) + "'"); };
  if (s.empty()) throw bad();
  auto valid_int = [](std::string_view t) {
    size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto to_int = [](std::string_view t) {
    if (!t.empty() && t[0] == '+') t.remove_prefix(1);
    return Integer(std::string(t));
  };
  auto slash = s.find('/');
  if (slash == std::string_view::npos) {
    auto dot = s.find('.');
    if (dot == std::string_view::npos) {
      if (!valid_int(s)) throw bad();
      return Rational(to_int(s));
    }
    std::string digits = std::string(s.substr(0, dot)) + std::string(s.substr(dot + 1));
    if (!valid_int(digits) || s.substr(dot + 1).find_first_of("+-") != std::string_view::npos)
      throw bad();
    Integer den = 1;
    for (size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    return Rational(to_int(digits)) / Rational(den);
  }
  auto a = s.substr(0, slash), b = s.substr(slash + 1);
  if (!valid_int(a) || !valid_int(b) || b[0] == '-' || b[0] == '+') throw bad();
  Integer den = to_int(b);
  if (den == 0) throw bad();
  return Rational(to_int(a)) / Rational(den);
}

// Best rational approximation of x with denominator at most max_den.
inline Rational approximate(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "non-finite value");
  double fl = std::floor(x);
  Integer a0(static_cast<long long>(fl));
  double frac = x - fl;
  // convergents h/k of frac
  Integer h_prev = 1, h = 0, k_prev = 0, k = 1;
  double r = frac;
  for (int iter = 0; iter < 64 && r > 1e-18; ++iter) {
    double inv = 1.0 / r;
    double a = std::floor(inv);
    if (a > 1e18) break;
    Integer ai(static_cast<long long>(a));
    Integer k_next = ai * k + k_prev;
    if (k_next > max_den) {
      // semiconvergent check
      Integer t = (Integer(max_den) - k_prev) / k;
      if (t > 0) {
        Integer hs = t * h + h_prev, ks = t * k + k_prev;
        Rational cand(hs, ks), best(h, k);
        Rational fr = Rational(frac);
        if (abs(cand - fr) < abs(best - fr)) {
          h = hs;
          k = ks;
        }
      }
      break;
    }
    Integer h_next = ai * h + h_prev;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    r = inv - a;
  }
  return Rational(a0) + Rational(h, k);
}

// Elements a + b*sqrt(5) of the quadratic field Q(sqrt5).
class QSqrt5 {
 public:
  QSqrt5() = default;
  QSqrt5(int a) : a_(a) {}
  QSqrt5(Rational a) : a_(std::move(a)) {}
  QSqrt5(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt5_part() const { return b_; }

  friend QSqrt5 operator+(const QSqrt5& x, const QSqrt5& y) { return {x.a_ + y.a_, x.b_ + y.b_}; }
  friend QSqrt5 operator-(const QSqrt5& x, const QSqrt5& y) { return {x.a_ - y.a_, x.b_ - y.b_}; }
  friend QSqrt5 operator-(const QSqrt5& x) { return {-x.a_, -x.b_}; }
  friend QSqrt5 operator*(const QSqrt5& x, const QSqrt5& y) {
    return {x.a_ * y.a_ + 5 * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_};
  }
  friend QSqrt5 operator/(const QSqrt5& x, const QSqrt5& y) {
    Rational n = y.a_ * y.a_ - 5 * y.b_ * y.b_;
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "division by zero in Q(sqrt5)");
    QSqrt5 conj{y.a_ / n, -y.b_ / n};
    return x * conj;
  }
  QSqrt5& operator+=(const QSqrt5& y) { return *this = *this + y; }
  QSqrt5& operator-=(const QSqrt5& y) { return *this = *this - y; }
  QSqrt5& operator*=(const QSqrt5& y) { return *this = *this * y; }

  friend int sign(const QSqrt5& x) {
    int sa = x.a_.sign(), sb = x.b_.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: compare a^2 with 5 b^2
    Rational lhs = x.a_ * x.a_, rhs = 5 * x.b_ * x.b_;
    if (lhs == rhs) return 0;
    return lhs > rhs ? sa : sb;
  }

  friend bool operator==(const QSqrt5& x, const QSqrt5& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend bool operator<(const QSqrt5& x, const QSqrt5& y) { return sign(x - y) < 0; }
  friend bool operator<=(const QSqrt5& x, const QSqrt5& y) { return sign(x - y) <= 0; }
  friend bool operator>(const QSqrt5& x, const QSqrt5& y) { return sign(x - y) > 0; }

 private:
  Rational a_;
  Rational b_;
};

inline std::string format(const QSqrt5& x) {
  if (x.sqrt5_part() == 0) return format(x.rational_part());
  return format(x.rational_part()) + "+" + format(x.sqrt5_part()) + "*sqrt5";
}

inline double to_double(const QSqrt5& x) {
  return to_double(x.rational_part()) + to_double(x.sqrt5_part()) * std::sqrt(5.0);
}

inline QSqrt5 parse_qsqrt5(std::string_view s) {
  constexpr std::string_view tail = "*sqrt5";
  if (s.size() < tail.size() || s.substr(s.size() - tail.size()) != tail)
    return QSqrt5(parse_rational(s));
  auto body = s.substr(0, s.size() - tail.size());
  // find the sign separating the rational part from the sqrt5 coefficient
  for (size_t i = body.size(); i-- > 1;) {
    char ch = body[i];
    if ((ch == '+' || ch == '-') && body[i - 1] != '+' && body[i - 1] != '-' && body[i - 1] != '/') {
      Rational a = parse_rational(body.substr(0, i));
      Rational b = parse_rational(body.substr(i + 1));
      return QSqrt5(a, ch == '-' ? Rational(-b) : b);
    }
  }
  return QSqrt5(Rational(0), parse_rational(body));
}

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static Rational parse(std::string_view s) { return parse_rational(s); }
};

template <>
struct ScalarTraits<QSqrt5> {
  static QSqrt5 parse(std::string_view s) { return parse_qsqrt5(s); }
};

}  // namespace affcover
