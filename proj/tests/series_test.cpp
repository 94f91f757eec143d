#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "grdb/series.hpp"

using namespace grdb;

namespace {

// Power series division by long division over Q; the reference for expand.
std::vector<Rational> naive_series(const IntPoly& num, const std::vector<int>& den, int order)
{
    std::vector<Rational> d(static_cast<std::size_t>(order) + 1, 0);
    d[0] = 1;
    for (int e : den) {
        std::vector<Rational> next(d.size(), 0);
        for (std::size_t i = 0; i < d.size(); ++i)
            next[i] = d[i] - (i >= static_cast<std::size_t>(e) ? d[i - static_cast<std::size_t>(e)] : Rational(0));
        d = next;
    }
    std::vector<Rational> q(d.size(), 0);
    for (std::size_t i = 0; i < q.size(); ++i) {
        Rational acc = static_cast<int>(i) <= num.degree() ? Rational(num.coeff(static_cast<int>(i))) : Rational(0);
        for (std::size_t j = 1; j <= i; ++j)
            acc -= d[j] * q[i - j];
        q[i] = acc / d[0];
    }
    return q;
}

IntPoly random_poly(std::mt19937& rng, int deg)
{
    std::uniform_int_distribution<int> c(-5, 5);
    std::vector<Integer> v;
    for (int i = 0; i <= deg; ++i)
        v.push_back(c(rng));
    return IntPoly(v);
}

} // namespace

TEST_CASE("integer polynomial arithmetic")
{
    const IntPoly p{1, -1};
    CHECK((p * p) == IntPoly{1, -2, 1});
    CHECK(IntPoly::one_minus_t_pow(3) == IntPoly{1, 0, 0, -1});
    CHECK(IntPoly::geometric(3) == IntPoly{1, 1, 1});
    CHECK((IntPoly{1, 0, -1} - IntPoly{1, 0, -1}).is_zero());
    CHECK(IntPoly{0, 0, 3, 0}.degree() == 2);
    CHECK(IntPoly{0, 0, 3}.valuation() == 2);
    CHECK(IntPoly::one_minus_t_pow(6).divide_by_one_minus_t() == IntPoly::geometric(6));
    CHECK_THROWS_AS((IntPoly{1, 1}.divide_by_one_minus_t()), InvalidInput);
    CHECK((IntPoly{1, -1} * IntPoly{1, -1} * IntPoly{2, 1}).order_at_one() == 2);
    CHECK(IntPoly{1, -4, 0, 4, 0, -1}.to_string() == "1-4t+4t^3-t^5");
    CHECK(IntPoly{}.to_string() == "0");
}

TEST_CASE("rational strings round trip")
{
    for (const char* s : {"0", "7", "-3", "195/2", "-781/120", "8/429"})
        CHECK(to_fraction_string(parse_fraction(s)) == s);
    CHECK(to_fraction_string(Rational(6, 4)) == "3/2");
    CHECK_THROWS_AS(parse_fraction("1/0"), InvalidInput);
    CHECK_THROWS_AS(parse_fraction("x"), InvalidInput);
}

TEST_CASE("expand agrees with long division")
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const IntPoly num = random_poly(rng, 1 + trial % 9);
        std::vector<int> den;
        for (int i = 0; i < 1 + trial % 5; ++i)
            den.push_back(1 + static_cast<int>(rng() % 7));
        const CycloRational f(num, den);
        const auto got = expand(f, 30);
        const auto want = naive_series(num, den, 30);
        for (int i = 0; i <= 30; ++i)
            CHECK(Rational(got[i]) == want[static_cast<std::size_t>(i)]);
    }
}

TEST_CASE("rational equality is independent of the representation")
{
    // 1/(1-t) = (1+t)/(1-t^2) = (1+t+t^2)(1+t^3)/(1-t^6)
    const CycloRational a(IntPoly{1}, {1});
    const CycloRational b(IntPoly{1, 1}, {2});
    const CycloRational c(IntPoly{1, 1, 1} * IntPoly{1, 0, 0, 1}, {6});
    CHECK(rational_equal(a, b));
    CHECK(rational_equal(b, c));
    CHECK_FALSE(rational_equal(a, CycloRational(IntPoly{1, 2}, {2})));
    CHECK(rational_equal(a - b, CycloRational(IntPoly{}, {1})));
    CHECK(rational_equal(a + a, a * Integer(2)));
}

TEST_CASE("pole order at one")
{
    CHECK(CycloRational(IntPoly{1}, {1, 2, 3, 4}).pole_order_at_one() == 4);
    CHECK(CycloRational(IntPoly{1, -1}, {1, 2}).pole_order_at_one() == 1);
    CHECK(CycloRational(IntPoly{1, 0, -2, 0, 1}, {3}).pole_order_at_one() == -1);
}

TEST_CASE("denominator union keeps maximal multiplicities")
{
    CHECK(denominator_union({1, 1, 2}, {1, 2, 2, 3}) == std::vector<int>{1, 1, 2, 2, 3});
}

TEST_CASE("reduction modulo A_r lands in the window and keeps the class")
{
    std::mt19937 rng(11);
    for (int r = 2; r <= 9; ++r) {
        const IntPoly p = random_poly(rng, 15);
        const int lo = 3, hi = lo + r - 2;
        const IntPoly q = reduce_mod_A(p, r, lo, hi);
        CHECK((q.is_zero() || (q.valuation() >= lo && q.degree() <= hi)));
        // A_r | p - q: every Phi_d with d | r, d > 1 divides the difference.
        const IntPoly diff = p - q;
        if (!diff.is_zero())
            for (int d = 2; d <= r; ++d)
                if (r % d == 0)
                    CHECK(cyclotomic_multiplicity(diff, d) >= 1);
    }
}

TEST_CASE("cyclotomic polynomials")
{
    CHECK(cyclotomic(1) == IntPoly{-1, 1});
    CHECK(cyclotomic(6) == IntPoly{1, -1, 1});
    CHECK(cyclotomic(12) == IntPoly{1, 0, -1, 0, 1});
    CHECK(cyclotomic_multiplicity(IntPoly::one_minus_t_pow(6) * IntPoly::one_minus_t_pow(3), 3) == 2);
    CHECK(cyclotomic_multiplicity(IntPoly::one_minus_t_pow(6), 4) == 0);
}

TEST_CASE("Gorenstein symmetry test")
{
    CHECK(is_gorenstein_symmetric(IntPoly{1, 0, 0, -4, 0, 4, 0, 0, -1}, 8, 3));
    CHECK(is_gorenstein_symmetric(IntPoly{1, 0, -1, -1, 0, 1}, 5, 2));
    CHECK_FALSE(is_gorenstein_symmetric(IntPoly{1, 0, 1}, 2, 1));
    CHECK_FALSE(is_gorenstein_symmetric(IntPoly{1, -1, 0}, 2, 0));
}
