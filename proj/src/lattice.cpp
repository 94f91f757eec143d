#include "lattice.hpp"

#include "modp.hpp"

#include <algorithm>
#include <cstdint>

namespace grdb::detail {

namespace {

using Row = std::vector<Integer>;

void normalise(Row& row)
{
    Integer g = 0;
    for (const auto& x : row)
        if (x != 0)
            g = boost::multiprecision::gcd(g, x);
    if (g > 1)
        for (auto& x : row)
            x /= g;
}

/// row <- row * p[c] - p * row[c]; clears column c of row.
void eliminate(Row& row, const Row& p, std::size_t c)
{
    if (row[c] == 0)
        return;
    const Integer a = p[c], b = row[c];
    for (std::size_t j = 0; j < row.size(); ++j)
        row[j] = row[j] * a - p[j] * b;
    normalise(row);
}

struct Pivot {
    std::size_t column;
    Row row;
};

} // namespace

std::vector<std::vector<int>> nonneg_solutions(const std::vector<std::vector<Integer>>& columns,
                                               const std::vector<Integer>& target, int bound)
{
    const std::size_t n = columns.size();
    const std::size_t m = target.size();
    std::vector<Pivot> pivots;

    for (std::size_t i = 0; i < m; ++i) {
        Row row(n + 1);
        row[n] = target[i];
        bool any = target[i] != 0;
        for (std::size_t j = 0; j < n; ++j) {
            row[j] = columns[j][i];
            any = any || row[j] != 0;
        }
        if (!any)
            continue;
        for (const auto& p : pivots)
            eliminate(row, p.row, p.column);
        auto lead = std::find_if(row.begin(), row.begin() + static_cast<long>(n),
                                 [](const Integer& x) { return x != 0; });
        if (lead == row.begin() + static_cast<long>(n)) {
            if (row[n] != 0)
                return {};
            continue;
        }
        const auto c = static_cast<std::size_t>(lead - row.begin());
        normalise(row);
        if (row[c] < 0)
            for (auto& x : row)
                x = -x;
        for (auto& p : pivots) {
            eliminate(p.row, row, c);
            if (p.row[p.column] < 0)
                for (auto& x : p.row)
                    x = -x;
        }
        pivots.push_back({c, std::move(row)});
    }

    std::vector<bool> is_pivot(n, false);
    for (const auto& p : pivots)
        is_pivot[p.column] = true;
    std::vector<std::size_t> free_vars;
    for (std::size_t j = 0; j < n; ++j)
        if (!is_pivot[j])
            free_vars.push_back(j);

    std::vector<std::vector<int>> out;
    std::vector<int> x(n, 0);

    auto finish = [&](int used) {
        int total = used;
        for (const auto& p : pivots) {
            Integer rhs = p.row[n];
            for (std::size_t f : free_vars)
                if (x[f] != 0)
                    rhs -= p.row[f] * x[f];
            if (rhs < 0 || rhs % p.row[p.column] != 0)
                return;
            const Integer v = rhs / p.row[p.column];
            if (v > bound - total)
                return;
            x[p.column] = static_cast<int>(v);
            total += x[p.column];
        }
        out.push_back(x);
    };

    auto dfs = [&](auto&& self, std::size_t idx, int used) -> void {
        if (idx == free_vars.size()) {
            finish(used);
            return;
        }
        for (int v = 0; used + v <= bound; ++v) {
            x[free_vars[idx]] = v;
            self(self, idx + 1, used + v);
        }
        x[free_vars[idx]] = 0;
    };
    dfs(dfs, 0, 0);
    return out;
}

namespace {

/// row -= f * pivot over the first len entries.
void axpy(std::vector<std::uint64_t>& row, std::uint64_t f, const std::vector<std::uint64_t>& pivot, std::size_t len)
{
    for (std::size_t j = 0; j < len; ++j)
        row[j] = sub_mod(row[j], mul_mod(f, pivot[j]));
}

/// x is a solution modulo the prime; decide whether it is an integer one
/// in range.
FastVerdict check_candidate(const std::vector<const std::vector<__int128>*>& columns,
                            const std::vector<__int128>& target, std::size_t rows,
                            const std::vector<std::uint64_t>& xm, int bound)
{
    const std::size_t n = columns.size();
    std::vector<__int128> x(n);
    long long total = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (xm[j] > static_cast<std::uint64_t>(bound))
            return FastVerdict::None;
        x[j] = static_cast<__int128>(xm[j]);
        total += static_cast<long long>(xm[j]);
    }
    if (total > bound)
        return FastVerdict::None;
    for (std::size_t i = 0; i < rows; ++i) {
        __int128 s = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (x[j] != 0)
                s += (*columns[j])[i] * x[j];
        if (s != target[i])
            return FastVerdict::None;
    }
    return FastVerdict::Maybe;
}

} // namespace

FastVerdict solve_mod_prime(const std::vector<const std::vector<__int128>*>& columns,
                            const std::vector<__int128>& target, int bound)
{
    const std::size_t n = columns.size();
    std::vector<std::vector<std::uint64_t>> pivots;
    std::vector<std::size_t> pivot_col;
    std::vector<std::uint64_t> row(n + 1);
    for (std::size_t i = 0; i < target.size(); ++i) {
        for (std::size_t j = 0; j < n; ++j)
            row[j] = reduce((*columns[j])[i]);
        row[n] = reduce(target[i]);
        for (std::size_t p = 0; p < pivots.size(); ++p)
            if (const std::uint64_t f = row[pivot_col[p]])
                axpy(row, f, pivots[p], n + 1);
        std::size_t c = 0;
        while (c < n && row[c] == 0)
            ++c;
        if (c == n) {
            if (row[n] != 0)
                return FastVerdict::None;
            continue;
        }
        const std::uint64_t inv = inv_mod(row[c]);
        for (auto& x : row)
            x = mul_mod(x, inv);
        for (auto& p : pivots)
            if (const std::uint64_t f = p[c])
                axpy(p, f, row, n + 1);
        pivots.push_back(row);
        pivot_col.push_back(c);
    }
    if (pivots.size() < n)
        return FastVerdict::Maybe;

    // Unique solution modulo the prime; an integer solution in range must be
    // this one.
    std::vector<std::uint64_t> xm(n);
    for (std::size_t p = 0; p < n; ++p)
        xm[pivot_col[p]] = pivots[p][n];
    return check_candidate(columns, target, target.size(), xm, bound);
}

ModularSolver::ModularSolver(std::vector<const std::vector<__int128>*> columns, std::size_t rows)
    : columns_(std::move(columns)), rows_(rows)
{
    const std::size_t n = columns_.size();
    // Greedy choice of n independent rows.
    std::vector<std::vector<std::uint64_t>> pivots;
    std::vector<std::size_t> pivot_col;
    std::vector<std::uint64_t> row(n);
    for (std::size_t i = 0; i < rows_ && basis_rows_.size() < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            row[j] = reduce((*columns_[j])[i]);
        for (std::size_t p = 0; p < pivots.size(); ++p)
            if (const std::uint64_t f = row[pivot_col[p]])
                axpy(row, f, pivots[p], n);
        std::size_t c = 0;
        while (c < n && row[c] == 0)
            ++c;
        if (c == n)
            continue;
        const std::uint64_t inv = inv_mod(row[c]);
        for (auto& x : row)
            x = mul_mod(x, inv);
        pivots.push_back(row);
        pivot_col.push_back(c);
        basis_rows_.push_back(i);
    }
    full_rank_ = basis_rows_.size() == n;
    if (!full_rank_ || n == 0)
        return;

    // Gauss-Jordan on [A | I] with A the chosen rows.
    std::vector<std::vector<std::uint64_t>> a(n, std::vector<std::uint64_t>(2 * n, 0));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t j = 0; j < n; ++j)
            a[r][j] = reduce((*columns_[j])[basis_rows_[r]]);
        a[r][n + r] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (a[p][c] == 0)
            ++p;
        std::swap(a[p], a[c]);
        const std::uint64_t inv = inv_mod(a[c][c]);
        for (auto& x : a[c])
            x = mul_mod(x, inv);
        for (std::size_t r = 0; r < n; ++r)
            if (r != c)
                if (const std::uint64_t f = a[r][c])
                    axpy(a[r], f, a[c], 2 * n);
    }
    inverse_.assign(n, std::vector<std::uint64_t>(n));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t j = 0; j < n; ++j)
            inverse_[r][j] = a[r][n + j];
}

FastVerdict ModularSolver::solve(const std::vector<__int128>& target, int bound) const
{
    if (!full_rank_) {
        std::vector<__int128> head(target.begin(), target.begin() + static_cast<long>(rows_));
        return solve_mod_prime(columns_, head, bound);
    }
    const std::size_t n = columns_.size();
    std::vector<std::uint64_t> b(n);
    for (std::size_t r = 0; r < n; ++r)
        b[r] = reduce(target[basis_rows_[r]]);
    std::vector<std::uint64_t> xm(n, 0);
    for (std::size_t r = 0; r < n; ++r) {
        std::uint64_t s = 0;
        for (std::size_t j = 0; j < n; ++j)
            s = add_mod(s, mul_mod(inverse_[r][j], b[j]));
        xm[r] = s;
    }
    return check_candidate(columns_, target, rows_, xm, bound);
}

} // namespace grdb::detail
