#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "grdb/series.hpp"

namespace grdb {

enum class Family { CI, GR25, GR25xCI, OGR510 };

std::string to_string(Family f);
/// Accepts "ci", "gr25", "gr25xh" (alias "gr25xci") and "ogr510".
Family parse_family(std::string_view text);

/// Gr(2,5) grading with doubled entries: w2[i] = 2 w_i, all of one parity,
/// ascending.
struct Gr25Grading {
    std::array<int, 5> w2{};
    friend auto operator<=>(const Gr25Grading&, const Gr25Grading&) = default;
};

/// OGr(5,10) grading: wt x = u, w doubled as for Gr(2,5).
struct Ogr510Grading {
    int u = 1;
    std::array<int, 5> w2{};
    friend auto operator<=>(const Ogr510Grading&, const Ogr510Grading&) = default;
};

struct FormatInstance {
    Family family = Family::CI;
    /// Grading parameters as stored: CI degrees; Gr(2,5) doubled w; for
    /// GR25xCI doubled w followed by the extra degrees; OGr(5,10) u then
    /// doubled w.
    std::vector<int> params;
    int codim = 0;
    /// Format variable degrees. Gr(2,5): the ten x_ij in the order
    /// 12,13,14,15,23,24,25,34,35,45. OGr(5,10): x, x_1..x_5, then x_ij.
    std::vector<int> key_weights;
    std::vector<int> equation_degrees;
    /// Equations as sums of monomials in the key variables: each term lists
    /// indices into key_weights.
    std::vector<std::vector<std::vector<int>>> equations;
    /// Sign of each term, parallel to equations.
    std::vector<std::vector<int>> signs;
    IntPoly numerator;
    int adjunction = 0;
    int chi_max = 0;
};

/// Complete intersection of the given degrees (each at least 2).
FormatInstance ci_format(std::vector<int> degrees);
FormatInstance gr25_format(const Gr25Grading& g);
FormatInstance ogr510_format(const Ogr510Grading& g);
/// Product with a complete intersection: numerators multiply, adjunction
/// numbers and codimensions add, key weights concatenate.
FormatInstance product_format(const FormatInstance& f, const std::vector<int>& degrees);

/// The number the search ceiling is compared against: k_V, except for
/// OGr(5,10) where k_V = 4|w| + 8u is always even and the search runs over
/// k_V / 2.
int search_degree(const FormatInstance& f);
/// k_V values with the given search degree.
std::vector<int> adjunctions_of_search_degree(Family family, int degree);

/// Parses "0,1,1,1,1", "1/2,3/2,...", "(0,1,1,1,1)" or "1/2(1,1,3,3,3)"
/// into doubled integers.
std::array<int, 5> parse_half_integers(std::string_view text);
/// Inverse: "(0,1,1,1,1)" or "1/2(1,1,3,3,3)".
std::string half_integer_string(const std::array<int, 5>& w2);

struct GradingOptions {
    int dim = 3;
    /// Number of equations for CI, or of extra hypersurfaces for GR25xCI.
    int ci_codim = 1;
    /// Admit Gr(2,5) gradings with some zero key weight when dim <= 2.
    bool allow_zero_key_weights = false;
};

/// All normalised formats of the family with adjunction number exactly
/// k_V, in a deterministic order.
std::vector<FormatInstance> enumerate_gradings(Family family, int k_V, const GradingOptions& options = {});

} // namespace grdb
