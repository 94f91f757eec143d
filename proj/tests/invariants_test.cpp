#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "grdb/invariants.hpp"
#include "grdb/reference.hpp"

using namespace grdb;

namespace {

Integer binomial(int n, int k)
{
    if (k < 0 || n < k)
        return 0;
    Integer r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

FormatInstance row_format(const ReferenceTable& t, const ReferenceRow& row)
{
    return t.family == Family::OGR510 ? ogr510_format({*row.u, row.w2}) : gr25_format({row.w2});
}

CycloRational row_series(const ReferenceTable& t, const ReferenceRow& row)
{
    return CycloRational(row_format(t, row).numerator, row.ambient_weights);
}

} // namespace

TEST_CASE("sextic threefold plurigenera")
{
    // P_m counts degree m forms modulo the sextic.
    const auto p = plurigenera(-4, 6, Basket{}, 12);
    REQUIRE(p.size() == 12);
    for (int m = 1; m <= 12; ++m)
        CHECK(p[static_cast<std::size_t>(m - 1)] == binomial(m + 4, 4) - binomial(m - 2, 4));
    const CycloRational h(IntPoly::one_minus_t_pow(6), {1, 1, 1, 1, 1});
    CHECK(chi_O(h, 1) == -4);
    CHECK(degree_A3(h) == 6);
    CHECK(K3_from_plurigenus(h, Basket{}, 1) == 6);
    CHECK(Kc2(Basket{}, -4) == 96);
}

TEST_CASE("chi conventions")
{
    const CycloRational quartic(IntPoly::one_minus_t_pow(4), {1, 1, 1, 1, 1});
    CHECK(chi_O(quartic, -1) == 1);
    const CycloRational quintic(IntPoly::one_minus_t_pow(5), {1, 1, 1, 1, 1});
    CHECK(chi_O(quintic, 0) == 0);
    CHECK(degree_A3(quintic) == 5);
}

TEST_CASE("Kc2 and its failures")
{
    CHECK(Kc2(Basket::parse("1/2(1,1,1)"), 0) == Rational(3, 2));
    CHECK(Kc2(Basket::parse("2*1/3(1,1,2)"), 1) == Rational(16, 3) - 24);
    // A pole of order five is not a threefold.
    CHECK_THROWS_AS(degree_A3(CycloRational(IntPoly{1}, {1, 1, 1, 1, 1, 1})), InvalidInput);
    // 1/6 K^3 is not an integer plurigenus.
    CHECK_THROWS_AS(plurigenera(0, Rational(1, 3), Basket{}, 3), InconsistencyError);
}

TEST_CASE("printed canonical threefolds are consistent")
{
    const auto dir = default_data_dir();
    std::size_t rows = 0;
    for (const auto* id : {"table1", "table2"}) {
        const auto t = load_reference_table(dir, id);
        for (const auto& row : t.rows) {
            ++rows;
            INFO(id << " row " << row.number);
            const auto h = row_series(t, row);
            CHECK(chi_O(h, 1) == row.chi);
            CHECK(degree_A3(h) == row.K3);
            CHECK(K3_from_plurigenus(h, row.basket, 1) == row.K3);
            CHECK(Kc2(row.basket, row.chi) == row.Kc2);
            // Riemann-Roch plurigenera against the series itself.
            const auto p = plurigenera(row.chi, row.K3, row.basket, 15);
            const auto s = expand(h, 15);
            for (int m = 1; m <= 15; ++m)
                CHECK(p[static_cast<std::size_t>(m - 1)] == s[m]);
        }
    }
    CHECK(rows == 39);
}
