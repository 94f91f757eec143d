#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "grdb/records.hpp"

namespace grdb {

/// One transcribed row of the canonical threefold tables.
struct ReferenceRow {
    int number = 0;
    std::string variety;
    std::vector<int> equation_degrees;
    std::vector<int> ambient_weights;
    Basket basket;
    Rational K3;
    Integer chi;
    Rational Kc2;
    /// Doubled w.
    std::array<int, 5> w2{};
    /// OGr(5,10) only.
    std::optional<int> u;
    /// Format variable weights in the order of FormatInstance::key_weights.
    std::vector<int> key_weights;
};

struct ReferenceTable {
    std::string id;
    Family family = Family::GR25;
    int dim = 3;
    int k = 1;
    std::vector<ReferenceRow> rows;
};

struct CountRow {
    int dim = 3;
    int k = 0;
    int codim = 1;
    Family family = Family::CI;
    std::optional<int> k_last;
    std::optional<int> k_max;
    std::optional<int> raw;
    int results = 0;

    /// Both counts are printed and agree, so the row pins an exact number.
    bool exact() const { return raw && *raw == results && k != 0; }
};

/// Directory holding the shipped tables, fixed at build time.
std::filesystem::path default_data_dir();

/// "table1" or "table2". Throws InvalidInput on a malformed file.
ReferenceTable load_reference_table(const std::filesystem::path& dir, const std::string& id);
std::vector<CountRow> load_count_table(const std::filesystem::path& dir);

struct VerifyReport {
    std::size_t expected = 0;
    std::size_t matched = 0;
    std::vector<std::string> diffs;
    bool ok() const { return diffs.empty(); }
};

/// Every reference row must match one all-flags-pass record on grading,
/// ambient weights, equation degrees, format weights, basket, K^3, chi and
/// K.c_2; further all-flags-pass records are reported as extra.
VerifyReport verify_table(const std::vector<StoredRecord>& records, const ReferenceTable& table);

/// Compares the number of all-flags-pass records with a count row: exact
/// rows must agree, the others are only reported.
VerifyReport verify_count(const std::vector<StoredRecord>& records, const CountRow& row);

} // namespace grdb
