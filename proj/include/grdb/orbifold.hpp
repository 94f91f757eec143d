#pragma once

#include <array>
#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "grdb/arith.hpp"
#include "grdb/series.hpp"

namespace grdb {

/// Isolated cyclic quotient point 1/r(a,b,c). The weights are the local
/// weights relative to the polarising divisor, so only permutations are
/// identified: 1/3(1,1,1) and 1/3(2,2,2) are different polarised points.
class QuotientSingularity {
public:
    /// Reduces weights modulo r and sorts them. Throws InvalidInput unless
    /// r > 1 and every weight is coprime to r.
    QuotientSingularity(int r, std::array<int, 3> weights);

    /// Parses "1/r(a,b,c)".
    static QuotientSingularity parse(std::string_view text);

    int index() const { return r_; }
    const std::array<int, 3>& weights() const { return w_; }

    /// Some pair of weights sums to 0 mod r, i.e. the point is 1/r(a,-a,b).
    bool is_terminal() const;
    /// a + b + c == 0 mod r.
    bool is_gorenstein() const;
    /// Reid-Tai: sum of {i w_j / r} >= 1 for every 0 < i < r.
    bool is_canonical() const;
    /// a + b + c == -k mod r: the point is compatible with K_X = kA.
    bool compatible_with(int k) const;

    std::string to_string() const;

    friend auto operator<=>(const QuotientSingularity&, const QuotientSingularity&) = default;
    friend bool operator==(const QuotientSingularity&, const QuotientSingularity&) = default;

private:
    int r_;
    std::array<int, 3> w_;
};

enum class SingularityClass { Terminal, CanonicalIsolated };

std::string to_string(SingularityClass c);
SingularityClass parse_singularity_class(std::string_view text);

/// All points of index r in the class that are compatible with K_X = kA,
/// in ascending order. Terminal points are 1/r(-k, a, -a), which needs
/// gcd(k, r) = 1; canonical-isolated points are those passing Reid-Tai.
std::vector<QuotientSingularity> singularities_of_index(int r, SingularityClass cls, int k);

struct OrbContribution {
    QuotientSingularity singularity;
    int k;
    int window_lo;
    int window_hi;
    IntPoly inverse_numerator;
    /// inverse_numerator / ((1 - t)^3 (1 - t^r)).
    CycloRational series;
};

/// Support window [floor((k+4)/2) + 1, floor((k+4)/2) + r - 1].
std::pair<int, int> porb_window(int r, int k);

/// B = prod_{b in weights} (1 - t^b)/(1 - t).
IntPoly local_denominator(const QuotientSingularity& s);

/// Inverse numerator of 1/r(r-1, a, r-a) at k = 1 from the closed form
/// c_{i+3} = -min(m, |m - i_a|). Switches a to r - a when needed.
IntPoly inverse_numerator_closed(int r, int a);

/// Orbifold Riemann-Roch contribution of s under K_X = kA, computed by
/// inverting B in Z[t]/(1 - t^r) one factor at a time and reducing into
/// the support window. Checks B * C == 1 mod A_r before returning.
OrbContribution porb_generic(const QuotientSingularity& s, int k);

/// c_m(P) for a terminal point 1/r(-1, a, -a).
Rational plurigenus_contribution(const QuotientSingularity& s, int m);

} // namespace grdb
