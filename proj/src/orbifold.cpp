#include "grdb/orbifold.hpp"

#include <algorithm>
#include <regex>
#include <set>

namespace grdb {

QuotientSingularity::QuotientSingularity(int r, std::array<int, 3> weights) : r_(r)
{
    if (r < 2)
        throw InvalidInput("quotient singularity index must be at least 2");
    for (auto& w : weights) {
        w = mod_floor(w, r);
        if (gcd_int(w, r) != 1)
            throw InvalidInput("weights of 1/" + std::to_string(r) + "(...) must be coprime to " +
                               std::to_string(r) + " for an isolated point");
    }
    std::sort(weights.begin(), weights.end());
    w_ = weights;
}

QuotientSingularity QuotientSingularity::parse(std::string_view text)
{
    static const std::regex pattern(R"(\s*1\s*/\s*(\d+)\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*)");
    std::match_results<std::string_view::const_iterator> m;
    if (!std::regex_match(text.begin(), text.end(), m, pattern))
        throw InvalidInput("cannot parse quotient singularity '" + std::string(text) + "'");
    return QuotientSingularity(std::stoi(m[1].str()),
                               {std::stoi(m[2].str()), std::stoi(m[3].str()), std::stoi(m[4].str())});
}

bool QuotientSingularity::is_terminal() const
{
    return (w_[0] + w_[1]) % r_ == 0 || (w_[0] + w_[2]) % r_ == 0 || (w_[1] + w_[2]) % r_ == 0;
}

bool QuotientSingularity::is_gorenstein() const { return (w_[0] + w_[1] + w_[2]) % r_ == 0; }

bool QuotientSingularity::is_canonical() const
{
    for (int i = 1; i < r_; ++i) {
        int s = 0;
        for (int w : w_)
            s += (i * w) % r_;
        if (s < r_)
            return false;
    }
    return true;
}

bool QuotientSingularity::compatible_with(int k) const
{
    return mod_floor(static_cast<long long>(w_[0]) + w_[1] + w_[2] + k, r_) == 0;
}

std::string QuotientSingularity::to_string() const
{
    return "1/" + std::to_string(r_) + "(" + std::to_string(w_[0]) + "," + std::to_string(w_[1]) + "," +
           std::to_string(w_[2]) + ")";
}

std::string to_string(SingularityClass c)
{
    return c == SingularityClass::Terminal ? "terminal" : "canonical-isolated";
}

SingularityClass parse_singularity_class(std::string_view text)
{
    if (text == "terminal")
        return SingularityClass::Terminal;
    if (text == "canonical-isolated" || text == "canonical")
        return SingularityClass::CanonicalIsolated;
    throw InvalidInput("unknown singularity class '" + std::string(text) + "'");
}

std::vector<QuotientSingularity> singularities_of_index(int r, SingularityClass cls, int k)
{
    if (r < 2)
        throw InvalidInput("index must be at least 2");
    std::set<QuotientSingularity> out;
    if (cls == SingularityClass::Terminal) {
        if (gcd_int(mod_floor(k, r), r) != 1)
            return {};
        for (int a = 1; a < r; ++a)
            if (gcd_int(a, r) == 1)
                out.emplace(r, std::array<int, 3>{-k, a, -a});
    } else {
        for (int a = 1; a < r; ++a) {
            if (gcd_int(a, r) != 1)
                continue;
            for (int b = a; b < r; ++b) {
                if (gcd_int(b, r) != 1)
                    continue;
                const int c = mod_floor(-static_cast<long long>(k) - a - b, r);
                if (c < b || gcd_int(c, r) != 1)
                    continue;
                QuotientSingularity s(r, {a, b, c});
                if (s.is_canonical())
                    out.insert(s);
            }
        }
    }
    return {out.begin(), out.end()};
}

std::pair<int, int> porb_window(int r, int k)
{
    if (k < -1)
        throw InvalidInput("polarisation index k must be at least -1");
    const int lo = (k + 4) / 2 + 1;
    return {lo, lo + r - 2};
}

IntPoly local_denominator(const QuotientSingularity& s)
{
    IntPoly b{1};
    for (int w : s.weights())
        b *= IntPoly::geometric(w);
    return b;
}

IntPoly inverse_numerator_closed(int r, int a)
{
    if (r < 2)
        throw InvalidInput("index must be at least 2");
    a = mod_floor(a, r);
    if (a == 0 || gcd_int(a, r) != 1)
        throw InvalidInput("a must be coprime to r");
    // m with 0 < m <= r/2 and a m == -1 mod r; replacing a by -a replaces m
    // by r - m.
    int m = mod_floor(-static_cast<long long>(mod_inverse(a, r)), r);
    if (2 * m > r)
        m = r - m;
    std::vector<Integer> c(static_cast<std::size_t>(r) + 2);
    for (int i = 0; i <= r - 2; ++i) {
        int ia = mod_floor(-static_cast<long long>(i) * m, r);
        if (ia == 0)
            ia = r;
        c[static_cast<std::size_t>(i + 3)] = -std::min(m, std::abs(m - ia));
    }
    return IntPoly(std::move(c));
}

namespace {

std::vector<Integer> cyclic_multiply(const std::vector<Integer>& a, const std::vector<Integer>& b)
{
    const std::size_t r = a.size();
    std::vector<Integer> out(r);
    for (std::size_t i = 0; i < r; ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < r; ++j)
            if (b[j] != 0)
                out[(i + j) % r] += a[i] * b[j];
    }
    return out;
}

} // namespace

OrbContribution porb_generic(const QuotientSingularity& s, int k)
{
    const int r = s.index();
    const auto [lo, hi] = porb_window(r, k);

    // In Z[t]/(1 - t^r): (1 - t^b)/(1 - t) * (1 + t^b + ... + t^{(b'-1)b})
    // = (1 - t^{bb'})/(1 - t), which is 1 mod A_r when b b' == 1 mod r.
    std::vector<Integer> inv(static_cast<std::size_t>(r));
    inv[0] = 1;
    for (int b : s.weights()) {
        const int bb = mod_inverse(b, r);
        std::vector<Integer> g(static_cast<std::size_t>(r));
        for (int j = 0; j < bb; ++j)
            g[static_cast<std::size_t>((static_cast<long long>(j) * b) % r)] += 1;
        inv = cyclic_multiply(inv, g);
    }
    IntPoly c = reduce_mod_A(IntPoly(std::move(inv)), r, lo, hi);

    if (reduce_mod_A(c * local_denominator(s), r, 0, r - 2) != IntPoly{1})
        throw InconsistencyError("inverse numerator check failed for " + s.to_string());

    CycloRational series(c, {1, 1, 1, r});
    return OrbContribution{s, k, lo, hi, std::move(c), std::move(series)};
}

Rational plurigenus_contribution(const QuotientSingularity& s, int m)
{
    if (m < 1)
        throw InvalidInput("plurigenus index m must be positive");
    if (!s.is_terminal() || !s.compatible_with(1))
        throw InvalidInput(s.to_string() + " is not a terminal point 1/r(-1,a,-a)");
    const int r = s.index();
    const auto& w = s.weights();
    int a = 0;
    // Drop one weight equal to r - 1; the other two are a and r - a.
    for (int drop = 2; drop >= 0; --drop) {
        if (w[static_cast<std::size_t>(drop)] != r - 1)
            continue;
        int x = -1, y = -1;
        for (int i = 0; i < 3; ++i) {
            if (i == drop)
                continue;
            (x < 0 ? x : y) = w[static_cast<std::size_t>(i)];
        }
        if ((x + y) % r == 0) {
            a = x;
            break;
        }
    }
    if (a == 0)
        throw InvalidInput(s.to_string() + " is not of the form 1/r(-1,a,-a)");
    const int b = mod_inverse(a, r);
    Rational sum = 0;
    for (int i = 1; i < m; ++i) {
        const int ib = static_cast<int>((static_cast<long long>(i) * b) % r);
        sum += Rational(ib * (r - ib), 2 * r);
    }
    return sum;
}

} // namespace grdb
