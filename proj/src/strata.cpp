#include "strata.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>

#include "modp.hpp"

namespace grdb::detail {

namespace {

using Poly = std::vector<std::uint64_t>;

std::uint64_t splitmix(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t coefficient(int var, int exponent)
{
    const std::uint64_t h = splitmix((static_cast<std::uint64_t>(var) << 32) ^ static_cast<std::uint32_t>(exponent));
    return 1 + h % (kPrime - 1);
}

/// Forms on P(a, b) of degree d: c[i] multiplies u^i v^j, i a + j b = d.
/// With b == 0 only the pure power of u exists.
struct Form {
    int degree = 0;
    Poly c;
};

bool valid(int i, int d, int a, int b)
{
    if (i * a > d)
        return false;
    return b == 0 ? i * a == d : (d - i * a) % b == 0;
}

Form generic_form(int var, int d, int a, int b)
{
    Form f{d, Poly(static_cast<std::size_t>(d / a) + 1, 0)};
    for (int i = 0; i * a <= d; ++i)
        if (valid(i, d, a, b))
            f.c[static_cast<std::size_t>(i)] = coefficient(var, i);
    return f;
}

Form multiply(const Form& x, const Form& y, int a)
{
    Form r{x.degree + y.degree, Poly(static_cast<std::size_t>((x.degree + y.degree) / a) + 1, 0)};
    for (std::size_t i = 0; i < x.c.size(); ++i) {
        if (!x.c[i])
            continue;
        for (std::size_t j = 0; j < y.c.size(); ++j)
            if (y.c[j])
                r.c[i + j] = add_mod(r.c[i + j], mul_mod(x.c[i], y.c[j]));
    }
    return r;
}

bool is_zero(const Poly& p)
{
    return std::all_of(p.begin(), p.end(), [](std::uint64_t x) { return x == 0; });
}

void trim(Poly& p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

Poly remainder(Poly x, const Poly& y)
{
    const std::uint64_t lead = inv_mod(y.back());
    while (x.size() >= y.size()) {
        const std::uint64_t q = mul_mod(x.back(), lead);
        const std::size_t shift = x.size() - y.size();
        for (std::size_t i = 0; i < y.size(); ++i)
            x[shift + i] = sub_mod(x[shift + i], mul_mod(q, y[i]));
        x.pop_back();
        trim(x);
    }
    return x;
}

Poly gcd(Poly x, Poly y)
{
    trim(x);
    trim(y);
    while (!y.empty()) {
        Poly r = remainder(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return x;
}

Poly derivative(const Poly& p)
{
    Poly d;
    for (std::size_t i = 1; i < p.size(); ++i)
        d.push_back(mul_mod(p[i], static_cast<std::uint64_t>(i)));
    trim(d);
    return d;
}

/// Number of distinct roots over the algebraic closure.
int distinct_roots(const Poly& p)
{
    const int deg = static_cast<int>(p.size()) - 1;
    const Poly d = derivative(p);
    if (d.empty())
        return deg;
    return deg - (static_cast<int>(gcd(p, d).size()) - 1);
}

} // namespace

int stratum_points(const FormatInstance& f, const std::vector<int>& weights)
{
    if (weights.empty() || weights.size() > 2)
        throw std::invalid_argument("stratum_points: one or two weights expected");
    const int a = weights[0];
    const int b = weights.size() == 2 ? weights[1] : 0;

    std::vector<Form> pulled;
    for (std::size_t v = 0; v < f.key_weights.size(); ++v)
        pulled.push_back(generic_form(static_cast<int>(v), f.key_weights[v], a, b));

    std::vector<Form> eqs;
    for (std::size_t e = 0; e < f.equations.size(); ++e) {
        Form sum;
        for (std::size_t t = 0; t < f.equations[e].size(); ++t) {
            Form term{0, Poly{1}};
            for (int v : f.equations[e][t])
                term = multiply(term, pulled[static_cast<std::size_t>(v)], a);
            if (f.signs[e][t] < 0)
                for (auto& x : term.c)
                    x = x ? kPrime - x : 0;
            if (sum.c.empty())
                sum = std::move(term);
            else
                for (std::size_t i = 0; i < sum.c.size(); ++i)
                    sum.c[i] = add_mod(sum.c[i], term.c[i]);
        }
        if (!is_zero(sum.c))
            eqs.push_back(std::move(sum));
    }
    if (eqs.empty())
        return -1;

    // Vertex P_u: every equation lacks the pure power of u.
    const auto vanishes_at_u = [&](const Form& e) {
        const int i = e.degree / a;
        return !valid(i, e.degree, a, b) || e.c[static_cast<std::size_t>(i)] == 0;
    };
    const int at_u = std::all_of(eqs.begin(), eqs.end(), vanishes_at_u) ? 1 : 0;
    if (b == 0)
        return at_u;
    const int at_v = std::all_of(eqs.begin(), eqs.end(), [](const Form& e) { return e.c[0] == 0; }) ? 1 : 0;

    // On the torus of P(a, b) each form is a monomial times a polynomial in
    // s = u^(b/g) / v^(a/g).
    const auto step = static_cast<std::size_t>(b / std::gcd(a, b));
    Poly common;
    for (const auto& e : eqs) {
        std::size_t lo = 0;
        while (e.c[lo] == 0)
            ++lo;
        Poly p;
        for (std::size_t i = lo; i < e.c.size(); i += step)
            p.push_back(e.c[i]);
        common = common.empty() ? p : gcd(common, p);
        trim(common);
    }
    return at_u + at_v + distinct_roots(common);
}

} // namespace grdb::detail
