#include "grdb/invariants.hpp"

namespace grdb {

Integer chi_O(const CycloRational& hilbert, int k)
{
    if (k < -1)
        throw InvalidInput("polarisation index k must be at least -1");
    if (k == -1)
        return 1;
    if (k == 0)
        return 0;
    return 1 - expand(hilbert, k)[k];
}

Rational degree_A3(const CycloRational& hilbert)
{
    if (hilbert.numerator().is_zero() || hilbert.pole_order_at_one() != 4)
        throw InvalidInput("Hilbert series does not have a pole of order 4 at t = 1");
    IntPoly n = hilbert.numerator();
    for (int z = n.order_at_one(); z > 0; --z)
        n = n.divide_by_one_minus_t();
    Integer den = 1;
    for (int a : hilbert.denominator_exponents())
        den *= a;
    return Rational(n.evaluate_at_one(), den);
}

Rational K3_from_plurigenus(const CycloRational& hilbert, const Basket& basket, int k)
{
    if (k != 1)
        throw InvalidInput("the plurigenus formula applies to K_X = A only");
    const Integer chi = chi_O(hilbert, 1);
    const Integer p2 = expand(hilbert, 2)[2];
    Rational c2 = 0;
    for (const auto& [s, m] : basket.entries())
        c2 += plurigenus_contribution(s, 2) * m;
    const Rational K3 = 2 * (Rational(p2) + 3 * Rational(chi) - c2);
    const Rational residue = degree_A3(hilbert);
    if (K3 != residue)
        throw InconsistencyError("K^3 from P_2 is " + to_fraction_string(K3) + " but the pole residue gives " +
                                 to_fraction_string(residue));
    return K3;
}

Rational Kc2(const Basket& basket, const Integer& chi)
{
    Rational sum = Rational(-24 * chi);
    for (const auto& [s, m] : basket.entries()) {
        const int r = s.index();
        sum += Rational(r * r - 1, r) * m;
    }
    return sum;
}

std::vector<Integer> plurigenera(const Integer& chi, const Rational& K3, const Basket& basket, int m_max)
{
    std::vector<Integer> out;
    for (int m = 1; m <= m_max; ++m) {
        Rational p;
        if (m == 1) {
            p = 1 - Rational(chi);
        } else {
            p = Rational(chi) * (1 - 2 * m) + K3 * Rational(m * (m - 1) * (2 * m - 1), 12);
            for (const auto& [s, mult] : basket.entries())
                p += plurigenus_contribution(s, m) * mult;
        }
        if (denominator(p) != 1 || p < 0)
            throw InconsistencyError("P_" + std::to_string(m) + " = " + to_fraction_string(p) +
                                     " is not a nonnegative integer");
        out.push_back(numerator(p));
    }
    return out;
}

} // namespace grdb
