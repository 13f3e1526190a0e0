#include "torkernel/rational.hpp"

#include <algorithm>

namespace torkernel {

std::string to_string(const BigInt& v) { return v.str(); }

std::string to_string(const Rational& v) {
  const BigInt num = boost::multiprecision::numerator(v);
  const BigInt den = boost::multiprecision::denominator(v);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

BigInt parse_integer(std::string_view text) {
  std::size_t pos = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) pos = 1;
  if (pos == text.size()) throw Error("malformed integer: '" + std::string(text) + "'");
  for (std::size_t i = pos; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') throw Error("malformed integer: '" + std::string(text) + "'");
  }
  BigInt v(std::string(text.substr(pos)));
  return text[0] == '-' ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  const BigInt num = parse_integer(text.substr(0, slash));
  const BigInt den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw Error("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

bool is_integer(const Rational& v) { return boost::multiprecision::denominator(v) == 1; }

BigInt to_integer(const Rational& v) {
  if (!is_integer(v)) throw Error("expected an integer, got " + to_string(v));
  return boost::multiprecision::numerator(v);
}

double to_double(const Rational& v) { return v.convert_to<double>(); }

IntVector make_primitive(IntVector v) {
  BigInt g = 0;
  for (const auto& x : v) g = gcd(g, abs(x));
  if (g == 0) return v;
  const auto first = std::find_if(v.begin(), v.end(), [](const BigInt& x) { return x != 0; });
  if (*first < 0) g = -g;
  for (auto& x : v) x /= g;
  return v;
}

IntVector clear_denominators(const RatVector& v) {
  BigInt l = 1;
  for (const auto& x : v) l = lcm(l, BigInt(boost::multiprecision::denominator(x)));
  IntVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(to_integer(x * l));
  return make_primitive(std::move(out));
}

RatVector to_rational(const IntVector& v) { return RatVector(v.begin(), v.end()); }

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out;
  out.reserve(m.size());
  for (const auto& row : m) out.push_back(to_rational(row));
  return out;
}

}  // namespace torkernel
