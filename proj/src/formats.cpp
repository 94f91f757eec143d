#include "grdb/formats.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace grdb {

std::string to_string(Family f)
{
    switch (f) {
    case Family::CI:
        return "ci";
    case Family::GR25:
        return "gr25";
    case Family::GR25xCI:
        return "gr25xh";
    case Family::OGR510:
        return "ogr510";
    }
    return "?";
}

Family parse_family(std::string_view text)
{
    if (text == "ci")
        return Family::CI;
    if (text == "gr25")
        return Family::GR25;
    if (text == "gr25xh" || text == "gr25xci")
        return Family::GR25xCI;
    if (text == "ogr510")
        return Family::OGR510;
    throw InvalidInput("unknown family '" + std::string(text) + "'");
}

namespace {

IntPoly sum_of_monomials(const std::vector<int>& exponents)
{
    IntPoly p;
    for (int e : exponents)
        p += IntPoly::monomial(e);
    return p;
}

/// Position of x_ij (i < j, zero based) in the order 12,13,...,45.
int pair_index(int i, int j)
{
    if (i > j)
        std::swap(i, j);
    static const int start[5] = {0, 4, 7, 9, 10};
    return start[i] + (j - i - 1);
}

/// The three terms of the Pfaffian of the 4x4 minor on rows/columns idx,
/// with x_ij stored at offset + pair_index(i, j).
std::vector<std::vector<int>> pfaffian_terms(const std::array<int, 4>& idx, int offset)
{
    const auto x = [&](int a, int b) { return offset + pair_index(idx[a], idx[b]); };
    return {{x(0, 1), x(2, 3)}, {x(0, 2), x(1, 3)}, {x(0, 3), x(1, 2)}};
}

std::array<int, 4> omit(int m)
{
    std::array<int, 4> idx{};
    int n = 0;
    for (int i = 0; i < 5; ++i)
        if (i != m)
            idx[n++] = i;
    return idx;
}

void check_w2(const std::array<int, 5>& w2)
{
    if (!std::is_sorted(w2.begin(), w2.end()))
        throw InvalidInput("grading entries must be in ascending order");
    for (int x : w2)
        if ((x - w2[0]) % 2 != 0)
            throw InvalidInput("grading entries must be all integers or all half-odd-integers");
}

} // namespace

FormatInstance ci_format(std::vector<int> degrees)
{
    std::sort(degrees.begin(), degrees.end());
    FormatInstance f;
    f.family = Family::CI;
    f.numerator = IntPoly{1};
    for (int d : degrees) {
        if (d < 2)
            throw InvalidInput("complete intersection degrees must be at least 2");
        f.numerator *= IntPoly::one_minus_t_pow(d);
    }
    f.params = degrees;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        f.equations.push_back({{static_cast<int>(i)}});
        f.signs.push_back({1});
    }
    f.codim = static_cast<int>(degrees.size());
    f.key_weights = degrees;
    f.equation_degrees = degrees;
    f.adjunction = std::accumulate(degrees.begin(), degrees.end(), 0);
    f.chi_max = degrees.empty() ? 0 : degrees.back();
    return f;
}

FormatInstance gr25_format(const Gr25Grading& g)
{
    const auto& w2 = g.w2;
    check_w2(w2);
    FormatInstance f;
    f.family = Family::GR25;
    f.params.assign(w2.begin(), w2.end());
    f.codim = 3;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            f.key_weights.push_back((w2[i] + w2[j]) / 2);
    const int k = std::accumulate(w2.begin(), w2.end(), 0);
    // d_j = sum(w) - w_{6-j}
    for (int j = 4; j >= 0; --j) {
        f.equation_degrees.push_back((k - w2[j]) / 2);
        f.equations.push_back(pfaffian_terms(omit(j), 0));
        f.signs.push_back({1, -1, 1});
    }
    std::vector<int> dual;
    for (int d : f.equation_degrees)
        dual.push_back(k - d);
    f.numerator = IntPoly{1} - sum_of_monomials(f.equation_degrees) + sum_of_monomials(dual) -
                  IntPoly::monomial(k);
    f.adjunction = k;
    f.chi_max = *std::max_element(f.key_weights.begin(), f.key_weights.end());
    return f;
}

FormatInstance ogr510_format(const Ogr510Grading& g)
{
    const auto& w2 = g.w2;
    check_w2(w2);
    const int s2 = std::accumulate(w2.begin(), w2.end(), 0);
    if (g.u < 1)
        throw InvalidInput("u must be positive");
    if (w2[0] + w2[1] < 0)
        throw InvalidInput("w_i + w_j must be nonnegative");
    if (w2[4] > s2)
        throw InvalidInput("u must be the smallest variable weight");

    FormatInstance f;
    f.family = Family::OGR510;
    f.params = {g.u};
    f.params.insert(f.params.end(), w2.begin(), w2.end());
    f.codim = 5;
    f.key_weights.push_back(g.u);
    for (int i = 0; i < 5; ++i)
        f.key_weights.push_back(g.u + (s2 - w2[i]) / 2);
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            f.key_weights.push_back(g.u + (w2[i] + w2[j]) / 2);

    const int k = 2 * s2 + 8 * g.u;
    for (int i = 0; i < 5; ++i) {
        f.equation_degrees.push_back(2 * g.u + (s2 - w2[i]) / 2);
        f.equation_degrees.push_back(2 * g.u + (s2 + w2[i]) / 2);
    }
    std::sort(f.equation_degrees.begin(), f.equation_degrees.end());
    // x x_i = (-1)^i Pf_i(x_jk) and M x = 0 for the skew matrix M.
    for (int i = 0; i < 5; ++i) {
        auto eq = pfaffian_terms(omit(i), 6);
        eq.insert(eq.begin(), {0, 1 + i});
        f.equations.push_back(std::move(eq));
        const int s = i % 2 == 0 ? -1 : 1;
        f.signs.push_back({1, s, -s, s});
    }
    for (int i = 0; i < 5; ++i) {
        std::vector<std::vector<int>> eq;
        std::vector<int> sg;
        for (int j = 0; j < 5; ++j)
            if (j != i) {
                eq.push_back({6 + pair_index(i, j), 1 + j});
                sg.push_back(i < j ? 1 : -1);
            }
        f.equations.push_back(std::move(eq));
        f.signs.push_back(std::move(sg));
    }

    std::vector<int> syz, syz_dual, eq_dual;
    for (int x : f.key_weights) {
        syz.push_back(k / 2 - x);
        syz_dual.push_back(k / 2 + x);
    }
    for (int e : f.equation_degrees)
        eq_dual.push_back(k - e);
    f.numerator = IntPoly{1} - sum_of_monomials(f.equation_degrees) + sum_of_monomials(syz) -
                  sum_of_monomials(syz_dual) + sum_of_monomials(eq_dual) - IntPoly::monomial(k);
    f.adjunction = k;
    f.chi_max = *std::max_element(f.key_weights.begin(), f.key_weights.end());
    return f;
}

FormatInstance product_format(const FormatInstance& f, const std::vector<int>& degrees)
{
    if (degrees.empty())
        return f;
    const FormatInstance h = ci_format(degrees);
    FormatInstance out = f;
    if (f.family == Family::GR25 || f.family == Family::GR25xCI)
        out.family = Family::GR25xCI;
    out.params.insert(out.params.end(), h.params.begin(), h.params.end());
    out.codim += h.codim;
    const int offset = static_cast<int>(out.key_weights.size());
    out.key_weights.insert(out.key_weights.end(), h.key_weights.begin(), h.key_weights.end());
    for (auto eq : h.equations) {
        for (auto& term : eq)
            for (auto& v : term)
                v += offset;
        out.equations.push_back(std::move(eq));
    }
    out.signs.insert(out.signs.end(), h.signs.begin(), h.signs.end());
    out.equation_degrees.insert(out.equation_degrees.end(), h.equation_degrees.begin(),
                                h.equation_degrees.end());
    std::sort(out.equation_degrees.begin(), out.equation_degrees.end());
    out.numerator *= h.numerator;
    out.adjunction += h.adjunction;
    out.chi_max = std::max(out.chi_max, h.chi_max);
    return out;
}

int search_degree(const FormatInstance& f)
{
    return f.family == Family::OGR510 ? f.adjunction / 2 : f.adjunction;
}

std::vector<int> adjunctions_of_search_degree(Family family, int degree)
{
    if (family == Family::OGR510)
        return {2 * degree};
    return {degree};
}

std::array<int, 5> parse_half_integers(std::string_view text)
{
    // "(a,...)" and "1/2(a,...)" as printed by half_integer_string.
    if (!text.empty() && text.back() == ')') {
        const auto open = text.find('(');
        if (open == std::string_view::npos)
            throw InvalidInput("unbalanced parenthesis in '" + std::string(text) + "'");
        const auto prefix = text.substr(0, open);
        if (!prefix.empty() && prefix != "1/2")
            throw InvalidInput("unknown prefix in '" + std::string(text) + "'");
        auto out = parse_half_integers(text.substr(open + 1, text.size() - open - 2));
        if (prefix.empty())
            return out;
        for (auto& x : out) {
            if (x % 2 != 0)
                throw InvalidInput("entries must be integers inside 1/2(...)");
            x /= 2;
        }
        return out;
    }
    std::array<int, 5> out{};
    std::size_t n = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string_view::npos)
            comma = text.size();
        if (n == 5)
            throw InvalidInput("expected five entries in '" + std::string(text) + "'");
        const Rational q = parse_fraction(text.substr(pos, comma - pos));
        const Rational d = q * 2;
        if (denominator(d) != 1)
            throw InvalidInput("entries must be integers or halves");
        out[n++] = static_cast<int>(numerator(d));
        pos = comma + 1;
    }
    if (n != 5)
        throw InvalidInput("expected five entries in '" + std::string(text) + "'");
    return out;
}

std::string half_integer_string(const std::array<int, 5>& w2)
{
    const bool half = (w2[0] % 2) != 0;
    std::string s = half ? "1/2(" : "(";
    for (int i = 0; i < 5; ++i) {
        if (i)
            s += ",";
        s += std::to_string(half ? w2[i] : w2[i] / 2);
    }
    return s + ")";
}

namespace {

/// Nondecreasing sequences of length n with entries in [lo, hi], step 2
/// from lo's parity class if step == 2, summing to total.
void sorted_tuples(int n, int lo, int hi, int step, int total, std::vector<int>& prefix,
                   const std::function<void(const std::vector<int>&)>& emit)
{
    if (n == 0) {
        if (total == 0)
            emit(prefix);
        return;
    }
    // Remaining n entries are each >= lo.
    for (int x = lo; x <= hi && static_cast<long long>(x) * n <= total; x += step) {
        prefix.push_back(x);
        sorted_tuples(n - 1, x, hi, step, total - x, prefix, emit);
        prefix.pop_back();
    }
}

std::vector<std::array<int, 5>> gr25_w2(int k_V, bool strict)
{
    std::vector<std::array<int, 5>> out;
    std::vector<int> prefix;
    for (int a = -k_V; a <= k_V; ++a) {
        for (int b = a; b <= k_V; b += 2) {
            if (strict ? a + b <= 0 : a + b < 0)
                continue;
            prefix = {a, b};
            sorted_tuples(3, b, k_V, 2, k_V - a - b, prefix, [&](const std::vector<int>& v) {
                out.push_back({v[0], v[1], v[2], v[3], v[4]});
            });
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

std::vector<FormatInstance> enumerate_gradings(Family family, int k_V, const GradingOptions& options)
{
    std::vector<FormatInstance> out;
    if (k_V < 1)
        return out;
    switch (family) {
    case Family::CI: {
        std::vector<int> prefix;
        sorted_tuples(options.ci_codim, 2, k_V, 1, k_V, prefix,
                      [&](const std::vector<int>& d) { out.push_back(ci_format(d)); });
        break;
    }
    case Family::GR25: {
        const bool strict = options.dim >= 3 || !options.allow_zero_key_weights;
        for (const auto& w2 : gr25_w2(k_V, strict))
            out.push_back(gr25_format({w2}));
        break;
    }
    case Family::GR25xCI: {
        GradingOptions ci = options;
        for (int kg = 1; kg <= k_V - 2 * options.ci_codim; ++kg) {
            const auto hs = enumerate_gradings(Family::CI, k_V - kg, ci);
            if (hs.empty())
                continue;
            for (const auto& g : enumerate_gradings(Family::GR25, kg, options))
                for (const auto& h : hs)
                    out.push_back(product_format(g, h.equation_degrees));
        }
        break;
    }
    case Family::OGR510: {
        if (k_V % 2 != 0)
            break;
        for (int u = 1; 8 * u <= k_V; ++u) {
            const int s2 = (k_V - 8 * u) / 2;
            std::vector<int> prefix;
            for (int a = -s2; a <= s2; ++a) {
                if ((a - s2) % 2 != 0)
                    continue;
                for (int b = std::max(a, -a); b <= s2; b += 2) {
                    prefix = {a, b};
                    sorted_tuples(3, b, s2, 2, s2 - a - b, prefix, [&](const std::vector<int>& v) {
                        out.push_back(ogr510_format({u, {v[0], v[1], v[2], v[3], v[4]}}));
                    });
                }
            }
        }
        break;
    }
    }
    return out;
}

} // namespace grdb
