#pragma once

#include <vector>

#include "grdb/formats.hpp"

namespace grdb::detail {

/// Number of points in which a general member of the format, pulled back
/// to P(W), meets the coordinate point or line spanned by variables of the
/// given weights (one or two of them). Returns -1 when the whole stratum
/// lies in X.
///
/// The pullback coefficients are fixed pseudo-random residues modulo a
/// large prime, so the answer is the generic one with overwhelming
/// likelihood and never changes between runs.
int stratum_points(const FormatInstance& f, const std::vector<int>& weights);

} // namespace grdb::detail
