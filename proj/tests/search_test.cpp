#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <numeric>

#include "grdb/search.hpp"
#include "strata.hpp"

using namespace grdb;

namespace {

// Plain enumeration: ascending lists with the right length and sum, entries
// in [lo, hi], coprime.
std::vector<std::vector<int>> brute_weights(int n, int sum, int lo, int hi)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int from, int left) {
        if (static_cast<int>(cur.size()) == n) {
            if (left != 0)
                return;
            int g = 0;
            for (int a : cur)
                g = std::gcd(g, a);
            if (g == 1)
                out.push_back(cur);
            return;
        }
        for (int a = from; a <= hi && a <= left; ++a) {
            cur.push_back(a);
            rec(a, left - a);
            cur.pop_back();
        }
    };
    rec(lo, sum);
    return out;
}

// Points of {f = 0} on P(a, b) for a general f of degree d: torus points
// are the roots of a general polynomial with one coefficient per monomial,
// vertices are the points whose pure power is missing.
int generic_binary_form_points(int d, int a, int b)
{
    int monomials = 0;
    for (int i = 0; a * i <= d; ++i)
        if ((d - a * i) % b == 0)
            ++monomials;
    if (monomials == 0)
        return -1;
    const int u_missing = d % a == 0 ? 0 : 1;
    const int v_missing = d % b == 0 ? 0 : 1;
    return monomials - 1 + u_missing + v_missing;
}

CandidateRecord candidate(const FormatInstance& f, const std::vector<int>& W, int k)
{
    SearchConfig c;
    c.k = k;
    c.family = f.family;
    auto rec = process_candidate(f, W, c);
    REQUIRE(rec.has_value());
    return *rec;
}

} // namespace

TEST_CASE("ambient weight enumeration agrees with a plain search")
{
    for (int d = 2; d <= 14; ++d)
        for (int k : {-1, 1, 2}) {
            const auto f = ci_format({d});
            const auto got = enumerate_ambient_weights(f, 3, k);
            CHECK(got == brute_weights(5, d - k, 1, d));
        }
    const auto g = gr25_format({{1, 1, 3, 3, 5}});
    CHECK(enumerate_ambient_weights(g, 3, -1) == brute_weights(7, g.adjunction + 1, 1, g.chi_max));
    WeightConstraints mw;
    mw.min_weight = 2;
    CHECK(enumerate_ambient_weights(ci_format({12}), 3, 1, mw) == brute_weights(5, 11, 2, 12));
}

TEST_CASE("streamed enumeration keeps the order")
{
    const auto f = ci_format({6, 7});
    std::vector<std::vector<int>> seen;
    for_each_ambient_weights(f, 3, -1, {}, [&](const std::vector<int>& W) { seen.push_back(W); });
    CHECK(seen == enumerate_ambient_weights(f, 3, -1));
}

TEST_CASE("initial term")
{
    for (int k : {-1, 1, 2, 3}) {
        const auto h = hilbert_series(ci_format({12}), {1, 2, 3, 4, 5});
        const auto ini = initial_series(h, 3, k);
        REQUIRE(ini.denominator_exponents() == std::vector<int>{1, 1, 1, 1});
        const IntPoly& n = ini.numerator();
        CHECK(n.degree() <= k + 4);
        for (int i = 0; i <= k + 4; ++i)
            CHECK(n.coeff(i) == n.coeff(k + 4 - i));
        const auto a = expand(h, (k + 4) / 2);
        const auto b = expand(ini, (k + 4) / 2);
        CHECK(a == b);
    }
}

TEST_CASE("smooth hypersurfaces")
{
    // Quartic Fano threefold.
    auto quartic = candidate(ci_format({4}), {1, 1, 1, 1, 1}, -1);
    REQUIRE(quartic.baskets.size() == 1);
    CHECK(quartic.baskets[0].empty());
    CHECK(quartic.A3 == 4);
    CHECK(quartic.chi == 1);
    CHECK(quartic.flags.all());

    // Sextic in P^4: K = H, c(X) = (1 + H)^5 / (1 + 6H) gives c2 = 16 H^2.
    auto sextic = candidate(ci_format({6}), {1, 1, 1, 1, 1}, 1);
    CHECK(sextic.K3 == 6);
    CHECK(sextic.chi == -4);
    REQUIRE(sextic.Kc2.size() == 1);
    CHECK(*sextic.Kc2[0] == 96);
}

TEST_CASE("index 2 Fano: X_6 in P(1,1,1,1,3)")
{
    auto x = candidate(ci_format({6}), {1, 1, 1, 1, 3}, -1);
    REQUIRE(x.baskets.size() == 1);
    CHECK(x.baskets[0].empty());
    CHECK(x.A3 == 2);
}

TEST_CASE("tangent monomial failure: X_{6,30} in P(1,2,3,4,10,15)")
{
    // No degree 6 monomial is linear in the weight 10 variable, so the
    // coordinate point P_10 cannot be quasismooth.
    auto x = candidate(ci_format({6, 30}), {1, 2, 3, 4, 10, 15}, 1);
    CHECK_FALSE(x.flags.tangent_monomial);
    CHECK(x.flags.well_formed);
}

TEST_CASE("index capacity counts points exactly")
{
    // X meets the line P(5,5) in the two points x_25 x_34 = 0 but the basket
    // has a single point of index 5.
    auto bad = candidate(gr25_format({{1, 3, 5, 5, 7}}), {1, 2, 2, 3, 4, 5, 5}, -1);
    CHECK(bad.baskets[0] == Basket::parse("7*1/2(1,1,1), 1/5(1,1,4)"));
    CHECK_FALSE(bad.flags.index_capacity);
    CHECK(bad.flags.tangent_monomial);

    auto good = candidate(gr25_format({{0, 2, 2, 4, 6}}), {1, 1, 1, 2, 3, 3, 4}, -1);
    CHECK(good.baskets[0] == Basket::parse("1/3(1,1,2), 1/4(1,1,3)"));
    CHECK(good.flags.all());

    // The coordinate point P_4 is not quasismooth on this one.
    auto tangent = candidate(gr25_format({{2, 2, 2, 4, 4}}), {1, 1, 1, 2, 3, 3, 4}, -1);
    CHECK_FALSE(tangent.flags.tangent_monomial);
    CHECK(tangent.flags.index_capacity);
}

TEST_CASE("stratum point counts for hypersurfaces")
{
    for (int d = 2; d <= 30; ++d) {
        const auto f = ci_format({d});
        for (int a = 1; a <= 8; ++a) {
            CHECK(detail::stratum_points(f, {a}) == (d % a == 0 ? 0 : -1));
            for (int b = a; b <= 9; ++b)
                CHECK_MESSAGE(detail::stratum_points(f, {a, b}) == generic_binary_form_points(d, a, b),
                              "d=" << d << " P(" << a << "," << b << ")");
        }
    }
}

TEST_CASE("stratum point counts for Gr(2,5)")
{
    // P(1,1) pulled back: five quadrics in two variables have no common zero.
    CHECK(detail::stratum_points(gr25_format({{1, 1, 1, 1, 1}}), {1, 1}) == 0);
    // A line whose weight divides no equation degree lies in X.
    CHECK(detail::stratum_points(gr25_format({{1, 1, 1, 1, 1}}), {5, 7}) == -1);
}

TEST_CASE("matching recovers a planted basket")
{
    const std::vector<int> W{1, 1, 2, 3, 4, 5, 6};
    for (const auto& text : {"2*1/2(1,1,1), 1/3(1,1,2)", "1/5(1,2,3), 1/4(1,1,3)", "3*1/2(1,1,1)"}) {
        const Basket planted = Basket::parse(text);
        const auto cands = candidate_singularities(W, SingularityClass::Terminal, -1);
        const auto m = match_baskets(basket_series(planted, -1), cands, -1);
        CHECK(std::find(m.baskets.begin(), m.baskets.end(), planted) != m.baskets.end());
        for (const auto& b : m.baskets)
            CHECK(rational_equal(basket_series(b, -1), basket_series(planted, -1)));
    }
}

TEST_CASE("run_search output does not depend on the number of workers")
{
    SearchConfig c;
    c.family = Family::GR25;
    c.k = -1;
    c.max_adjunction = 18;
    const auto one = run_search(c);
    c.jobs = 4;
    const auto four = run_search(c);
    REQUIRE(one.records.size() == four.records.size());
    CHECK(one.records.size() > 10);
    for (std::size_t i = 0; i < one.records.size(); ++i) {
        CHECK(one.records[i].format.params == four.records[i].format.params);
        CHECK(one.records[i].ambient_weights == four.records[i].ambient_weights);
        CHECK(one.records[i].baskets == four.records[i].baskets);
    }
    for (std::size_t i = 1; i < one.records.size(); ++i)
        CHECK(one.records[i - 1].format.adjunction <= one.records[i].format.adjunction);
}

TEST_CASE("configuration checks")
{
    SearchConfig c;
    c.max_adjunction = 0;
    CHECK_THROWS_AS(c.validate(), InvalidInput);
    SearchConfig d;
    CHECK(d.singularity_class() == SingularityClass::Terminal);
    d.k = 0;
    CHECK(d.singularity_class() == SingularityClass::CanonicalIsolated);
}
