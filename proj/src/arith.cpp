#include "grdb/arith.hpp"

#include <cctype>
#include <numeric>

namespace grdb {

std::string to_fraction_string(const Rational& q)
{
    const Integer num = boost::multiprecision::numerator(q);
    const Integer den = boost::multiprecision::denominator(q);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

namespace {

Integer parse_integer(std::string_view text)
{
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '-' || text[i] == '+'))
        ++i;
    if (i == text.size())
        throw InvalidInput("malformed integer '" + std::string(text) + "'");
    for (std::size_t j = i; j < text.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(text[j])))
            throw InvalidInput("malformed integer '" + std::string(text) + "'");
    return Integer(std::string(text));
}

std::string_view strip(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

} // namespace

Rational parse_fraction(std::string_view text)
{
    text = strip(text);
    const auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_integer(text));
    const Integer num = parse_integer(strip(text.substr(0, slash)));
    const Integer den = parse_integer(strip(text.substr(slash + 1)));
    if (den == 0)
        throw InvalidInput("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

int gcd_int(int a, int b) { return std::gcd(a, b); }

int mod_inverse(int a, int m)
{
    if (m < 2)
        throw InvalidInput("modulus must be at least 2");
    int r0 = m, r1 = mod_floor(a, m);
    int s0 = 0, s1 = 1;
    while (r1 != 0) {
        const int q = r0 / r1;
        int t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    if (r0 != 1)
        throw InvalidInput(std::to_string(a) + " is not invertible modulo " + std::to_string(m));
    return mod_floor(s0, m);
}

} // namespace grdb
