#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "grdb/search.hpp"

namespace grdb {

using Json = nlohmann::ordered_json;

enum class OutputFormat { Jsonl, Csv };

OutputFormat parse_output_format(std::string_view text);

/// Field order is fixed: family, params, codim, dim, k, adjunction,
/// ambient_weights, equation_degrees, numerator, baskets, chi, K3, Kc2, A3,
/// flags and, when nonempty, kernels. Rationals are "p/q" strings.
Json record_to_json(const CandidateRecord& rec);

std::string csv_header();
/// One row per basket; a record without baskets still gets one row.
std::vector<std::string> record_to_csv_rows(const CandidateRecord& rec);

void write_records(std::ostream& out, const std::vector<CandidateRecord>& records, OutputFormat format);

Json report_to_json(const RunReport& report);

/// A serialised record read back; the format is rebuilt from family and
/// params.
struct StoredRecord {
    FormatInstance format;
    int dim = 3;
    int k = 1;
    std::vector<int> ambient_weights;
    std::vector<Basket> baskets;
    Integer chi;
    Rational K3;
    Rational A3;
    std::vector<std::optional<Rational>> Kc2;
    RealisabilityFlags flags;
};

/// Throws InvalidInput on a missing or mistyped field.
StoredRecord parse_record(const Json& j);
/// Reads a JSON Lines file; blank lines are skipped.
std::vector<StoredRecord> read_records(std::istream& in);

} // namespace grdb
