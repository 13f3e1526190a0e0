#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace torkernel {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IntVector = std::vector<BigInt>;
using IntMatrix = std::vector<IntVector>;
using RatVector = std::vector<Rational>;
using RatMatrix = std::vector<RatVector>;

/// Base class for every error the library reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact linear-algebra precondition failures (non-square, dependent basis, rank deficit).
class LinalgError : public Error {
 public:
  using Error::Error;
};

std::string to_string(const BigInt& v);
/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& v);
Rational parse_rational(std::string_view text);

bool is_integer(const Rational& v);
BigInt to_integer(const Rational& v);  // throws if not integral
double to_double(const Rational& v);

/// Divides out the gcd and flips the sign so the first nonzero entry is positive.
IntVector make_primitive(IntVector v);
/// Smallest integer multiple of a rational vector, then made primitive.
IntVector clear_denominators(const RatVector& v);

RatVector to_rational(const IntVector& v);
RatMatrix to_rational(const IntMatrix& m);

}  // namespace torkernel
