#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace grdb {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised for inputs that violate an operation's preconditions.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when two independent computations that must agree do not.
class InconsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// "p/q" with q > 0, or "p" when the value is integral.
std::string to_fraction_string(const Rational& q);

/// Inverse of to_fraction_string; also accepts a bare integer.
Rational parse_fraction(std::string_view text);

int gcd_int(int a, int b);

/// Inverse of a modulo m in [1, m-1]; throws InvalidInput if gcd(a, m) != 1.
int mod_inverse(int a, int m);

/// Mathematical residue in [0, m).
inline int mod_floor(long long a, int m) {
    long long r = a % m;
    return static_cast<int>(r < 0 ? r + m : r);
}

} // namespace grdb
