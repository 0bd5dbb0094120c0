#include <cohpoly/errors.hpp>
#include <cohpoly/rational.hpp>

#include <cctype>
#include <cmath>
#include <string>

namespace cohpoly {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

Integer parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw ConfigError("not an integer: '" + std::string(s) + "'");
  Integer v{std::string(s)};
  return negative ? Integer(-v) : v;
}

Rational parse_decimal(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    exponent = static_cast<long>(parse_integer(s.substr(e + 1)).convert_to<long>());
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty()))
      throw ConfigError("not a number: '" + std::string(s) + "'");
    digits = std::string(ip) + std::string(fp);
    exponent -= static_cast<long>(fp.size());
  } else {
    if (!all_digits(s)) throw ConfigError("not a number: '" + std::string(s) + "'");
    digits = std::string(s);
  }
  Integer mantissa(digits);
  Integer ten_pow = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(std::labs(exponent)));
  Rational r = exponent >= 0 ? Rational(mantissa * ten_pow) : Rational(mantissa, ten_pow);
  return negative ? Rational(-r) : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw ConfigError("empty numeric value");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer p = parse_integer(trim(text.substr(0, slash)));
    Integer q = parse_integer(trim(text.substr(slash + 1)));
    if (q == 0) throw ConfigError("zero denominator in '" + std::string(text) + "'");
    return Rational(p, q);
  }
  return parse_decimal(text);
}

std::string to_string(const Rational& value) {
  Integer p = boost::multiprecision::numerator(value);
  Integer q = boost::multiprecision::denominator(value);
  if (q == 1) return p.str();
  return p.str() + "/" + q.str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Rational from_double(double value) {
  if (!std::isfinite(value)) throw std::domain_error("from_double: non-finite value");
  int exp = 0;
  double mant = std::frexp(value, &exp);
  // 2^53 * mant is an integer for every finite double.
  auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  exp -= 53;
  Rational r{Integer(scaled)};
  if (exp >= 0)
    r *= Rational(boost::multiprecision::pow(Integer(2), static_cast<unsigned>(exp)));
  else
    r /= Rational(boost::multiprecision::pow(Integer(2), static_cast<unsigned>(-exp)));
  return r;
}

}  // namespace cohpoly
