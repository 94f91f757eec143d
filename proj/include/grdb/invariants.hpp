#pragma once

#include <vector>

#include "grdb/basket.hpp"
#include "grdb/series.hpp"

namespace grdb {

/// chi(O_X) for K_X = kA: 1 - h^0(K_X) for k >= 1, 0 for k = 0, 1 for
/// k = -1.
Integer chi_O(const CycloRational& hilbert, int k);

/// A^3 as the leading coefficient of the order 4 pole at t = 1. Throws
/// InvalidInput if the pole has any other order.
Rational degree_A3(const CycloRational& hilbert);

/// K^3 = 2 (P_2 + 3 chi - sum c_2(P)) for a canonical threefold (k = 1)
/// with terminal basket. Throws InconsistencyError unless it equals the
/// pole residue A^3.
Rational K3_from_plurigenus(const CycloRational& hilbert, const Basket& basket, int k);

/// sum (r^2 - 1)/r over the basket minus 24 chi.
Rational Kc2(const Basket& basket, const Integer& chi);

/// P_1 .. P_{m_max}: P_1 = 1 - chi and, for m >= 2,
/// P_m = (1 - 2m) chi + m(m-1)(2m-1)/12 K^3 + sum c_m(P).
/// Throws InconsistencyError on a negative or nonintegral value.
std::vector<Integer> plurigenera(const Integer& chi, const Rational& K3, const Basket& basket, int m_max);

} // namespace grdb
