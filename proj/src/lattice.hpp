#pragma once

// Nonnegative integer points of {x : V x = b, sum x <= bound}.

#include <cstdint>
#include <vector>

#include "grdb/arith.hpp"

namespace grdb::detail {

/// columns[j] is the j-th column of V (all of equal length as target).
/// Rows are eliminated exactly (fraction-free), then the free variables are
/// enumerated depth-first under the total bound. Solutions come out in
/// lexicographic order of the free variables.
std::vector<std::vector<int>> nonneg_solutions(const std::vector<std::vector<Integer>>& columns,
                                               const std::vector<Integer>& target, int bound);

} // namespace grdb::detail

namespace grdb::detail {

enum class FastVerdict { None, Maybe };

/// Quick decision over the prime 2^61 - 1. None means V x = b has no
/// nonnegative integer solution with sum x <= bound. Maybe means either a
/// solution exists or V is rank deficient modulo the prime; the exact
/// solver must decide. Entries must fit in 127 bits.
FastVerdict solve_mod_prime(const std::vector<const std::vector<__int128>*>& columns,
                            const std::vector<__int128>& target, int bound);

/// solve_mod_prime with the work that depends only on V done once.
class ModularSolver {
public:
    ModularSolver() = default;
    /// Uses the first `rows` entries of each column.
    ModularSolver(std::vector<const std::vector<__int128>*> columns, std::size_t rows);

    FastVerdict solve(const std::vector<__int128>& target, int bound) const;
    bool full_rank() const { return full_rank_; }

private:
    std::vector<const std::vector<__int128>*> columns_;
    std::size_t rows_ = 0;
    bool full_rank_ = false;
    std::vector<std::size_t> basis_rows_;
    /// Inverse of V restricted to basis_rows_, row major.
    std::vector<std::vector<std::uint64_t>> inverse_;
};

} // namespace grdb::detail
