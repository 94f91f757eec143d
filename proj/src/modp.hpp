#pragma once

#include <cstdint>

namespace grdb::detail {

/// Arithmetic modulo the Mersenne prime 2^61 - 1.
inline constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b)
{
    const unsigned __int128 x = static_cast<unsigned __int128>(a) * b;
    std::uint64_t r = static_cast<std::uint64_t>(x & kPrime) + static_cast<std::uint64_t>(x >> 61);
    if (r >= kPrime)
        r -= kPrime;
    return r;
}

inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b)
{
    const std::uint64_t r = a + b;
    return r >= kPrime ? r - kPrime : r;
}

inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b)
{
    return a >= b ? a - b : a + kPrime - b;
}

inline std::uint64_t reduce(__int128 v)
{
    if (v >= 0 && v < static_cast<__int128>(kPrime))
        return static_cast<std::uint64_t>(v);
    __int128 r = v % static_cast<__int128>(kPrime);
    if (r < 0)
        r += kPrime;
    return static_cast<std::uint64_t>(r);
}

inline std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e)
{
    std::uint64_t r = 1;
    for (; e; e >>= 1, a = mul_mod(a, a))
        if (e & 1)
            r = mul_mod(r, a);
    return r;
}

inline std::uint64_t inv_mod(std::uint64_t a) { return pow_mod(a, kPrime - 2); }

} // namespace grdb::detail
