#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "grdb/orbifold.hpp"

namespace grdb {

/// Multiset of quotient singularities, kept sorted with positive
/// multiplicities.
class Basket {
public:
    using Entry = std::pair<QuotientSingularity, int>;

    Basket() = default;
    explicit Basket(std::vector<Entry> entries);

    /// Comma separated list of "m*1/r(a,b,c)" or "1/r(a,b,c)" items; an
    /// empty string is the empty basket.
    static Basket parse(std::string_view text);

    const std::vector<Entry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    int total_multiplicity() const;
    bool all_terminal() const;

    /// Each entry rendered as "m*1/r(a,b,c)".
    std::vector<std::string> to_strings() const;
    std::string to_string() const;

    friend auto operator<=>(const Basket&, const Basket&) = default;
    friend bool operator==(const Basket&, const Basket&) = default;

private:
    std::vector<Entry> entries_;
};

/// Sum of the orbifold contributions of the basket at polarisation k.
CycloRational basket_series(const Basket& basket, int k);

/// All minimal nonzero multisets of the candidates with total multiplicity
/// at most cap whose contributions sum to zero. Each is checked exactly.
std::vector<Basket> find_kernels(const std::vector<QuotientSingularity>& candidates, int k, int cap);

} // namespace grdb
