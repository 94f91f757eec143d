#include "grdb/basket.hpp"

#include <algorithm>
#include <map>
#include <regex>

#include "lattice.hpp"

namespace grdb {

Basket::Basket(std::vector<Entry> entries)
{
    std::map<QuotientSingularity, int> merged;
    for (auto& [s, m] : entries) {
        if (m < 0)
            throw InvalidInput("negative multiplicity in basket");
        if (m > 0)
            merged[s] += m;
    }
    entries_.assign(merged.begin(), merged.end());
}

Basket Basket::parse(std::string_view text)
{
    static const std::regex item(R"(\s*(?:(\d+)\s*[*x]\s*)?(1\s*/\s*\d+\s*\([^)]*\))\s*(,|$))");
    std::vector<Entry> entries;
    std::string s(text);
    auto it = s.cbegin();
    std::smatch m;
    while (it != s.cend()) {
        if (std::all_of(it, s.cend(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }))
            break;
        if (!std::regex_search(it, s.cend(), m, item, std::regex_constants::match_continuous))
            throw InvalidInput("cannot parse basket '" + s + "'");
        const int mult = m[1].matched ? std::stoi(m[1].str()) : 1;
        entries.emplace_back(QuotientSingularity::parse(m[2].str()), mult);
        it = m[0].second;
    }
    return Basket(std::move(entries));
}

int Basket::total_multiplicity() const
{
    int t = 0;
    for (const auto& e : entries_)
        t += e.second;
    return t;
}

bool Basket::all_terminal() const
{
    return std::all_of(entries_.begin(), entries_.end(), [](const Entry& e) { return e.first.is_terminal(); });
}

std::vector<std::string> Basket::to_strings() const
{
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& [s, m] : entries_)
        out.push_back(std::to_string(m) + "*" + s.to_string());
    return out;
}

std::string Basket::to_string() const
{
    std::string out;
    for (const auto& item : to_strings()) {
        if (!out.empty())
            out += ", ";
        out += item;
    }
    return out;
}

CycloRational basket_series(const Basket& basket, int k)
{
    CycloRational sum(IntPoly{}, {1, 1, 1});
    for (const auto& [s, m] : basket.entries())
        sum = sum + porb_generic(s, k).series * Integer(m);
    return sum;
}

std::vector<Basket> find_kernels(const std::vector<QuotientSingularity>& candidates, int k, int cap)
{
    if (candidates.empty() || cap < 1)
        return {};
    int max_r = 0;
    for (const auto& s : candidates)
        max_r = std::max(max_r, s.index());
    const int order = 2 * max_r + 12;

    std::vector<std::vector<Integer>> columns;
    columns.reserve(candidates.size());
    for (const auto& s : candidates)
        columns.push_back(expand(porb_generic(s, k).series, order).coefficients);
    const std::vector<Integer> zero(static_cast<std::size_t>(order) + 1);

    auto solutions = detail::nonneg_solutions(columns, zero, cap);
    std::erase_if(solutions, [](const std::vector<int>& x) {
        return std::all_of(x.begin(), x.end(), [](int v) { return v == 0; });
    });
    std::stable_sort(solutions.begin(), solutions.end(), [](const auto& a, const auto& b) {
        int ta = 0, tb = 0;
        for (int v : a)
            ta += v;
        for (int v : b)
            tb += v;
        return ta < tb;
    });

    std::vector<std::vector<int>> minimal;
    for (const auto& x : solutions) {
        const bool dominated = std::any_of(minimal.begin(), minimal.end(), [&](const std::vector<int>& y) {
            for (std::size_t i = 0; i < x.size(); ++i)
                if (y[i] > x[i])
                    return false;
            return true;
        });
        if (!dominated)
            minimal.push_back(x);
    }

    std::vector<Basket> out;
    for (const auto& x : minimal) {
        std::vector<Basket::Entry> entries;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] > 0)
                entries.emplace_back(candidates[i], x[i]);
        Basket b(std::move(entries));
        if (!basket_series(b, k).numerator().is_zero())
            throw InconsistencyError("kernel " + b.to_string() + " does not cancel exactly");
        out.push_back(std::move(b));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace grdb
