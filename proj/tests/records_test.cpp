#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "grdb/reference.hpp"

using namespace grdb;

namespace {

const SearchResult& small_run()
{
    static const SearchResult r = [] {
        SearchConfig c;
        c.family = Family::GR25;
        c.k = -1;
        c.max_adjunction = 16;
        return run_search(c);
    }();
    return r;
}

std::vector<StoredRecord> round_trip(const std::vector<CandidateRecord>& records)
{
    std::stringstream s;
    write_records(s, records, OutputFormat::Jsonl);
    return read_records(s);
}

} // namespace

TEST_CASE("JSON lines round trip")
{
    const auto& run = small_run();
    REQUIRE(!run.records.empty());
    const auto back = round_trip(run.records);
    REQUIRE(back.size() == run.records.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        const auto& a = run.records[i];
        const auto& b = back[i];
        CHECK(b.format.params == a.format.params);
        CHECK(b.format.numerator == a.format.numerator);
        CHECK(b.ambient_weights == a.ambient_weights);
        CHECK(b.baskets == a.baskets);
        CHECK(b.chi == a.chi);
        CHECK(b.K3 == a.K3);
        CHECK(b.A3 == a.A3);
        CHECK(b.Kc2 == a.Kc2);
        CHECK(b.flags.all() == a.flags.all());
    }
}

TEST_CASE("record field order")
{
    const Json j = record_to_json(small_run().records.front());
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it)
        keys.push_back(it.key());
    const std::vector<std::string> want{"family",  "params",  "codim", "dim", "k",  "adjunction",
                                        "ambient_weights", "equation_degrees", "numerator", "baskets",
                                        "chi",     "K3",      "Kc2",   "A3",  "flags"};
    CHECK(keys == want);
}

TEST_CASE("CSV rows")
{
    const auto& rec = small_run().records.front();
    const auto header = csv_header();
    const auto rows = record_to_csv_rows(rec);
    CHECK(rows.size() == std::max<std::size_t>(1, rec.baskets.size()));
    const auto columns = [](const std::string& line) {
        std::size_t n = 1;
        bool quoted = false;
        for (char c : line) {
            if (c == '"')
                quoted = !quoted;
            else if (c == ',' && !quoted)
                ++n;
        }
        return n;
    };
    for (const auto& r : rows)
        CHECK(columns(r) == columns(header));
    CHECK(parse_output_format("csv") == OutputFormat::Csv);
    CHECK_THROWS_AS(parse_output_format("xml"), InvalidInput);
}

TEST_CASE("malformed records are rejected")
{
    Json j = record_to_json(small_run().records.front());
    Json missing = j;
    missing.erase("K3");
    CHECK_THROWS_AS(parse_record(missing), InvalidInput);
    Json wrong = j;
    wrong["adjunction"] = 99;
    CHECK_THROWS_AS(parse_record(wrong), InvalidInput);
    std::istringstream junk("{\"family\":");
    CHECK_THROWS(read_records(junk));
    std::istringstream blank("\n\n");
    CHECK(read_records(blank).empty());
}

TEST_CASE("report")
{
    const Json j = report_to_json(small_run().report);
    CHECK(j["records"] == small_run().records.size());
    CHECK(j.contains("wall_seconds"));
    CHECK(j["k_max"] == 16);
}

TEST_CASE("reference tables")
{
    const auto dir = default_data_dir();
    const auto t1 = load_reference_table(dir, "table1");
    const auto t2 = load_reference_table(dir, "table2");
    CHECK(t1.rows.size() == 18);
    CHECK(t2.rows.size() == 21);
    CHECK(t2.family == Family::OGR510);
    for (const auto& row : t1.rows)
        CHECK(gr25_format({row.w2}).key_weights == row.key_weights);
    for (const auto& row : t2.rows)
        CHECK(ogr510_format({*row.u, row.w2}).key_weights == row.key_weights);
    CHECK_THROWS_AS(load_reference_table(dir, "table9"), InvalidInput);

    const auto counts = load_count_table(dir);
    CHECK(counts.size() == 21);

    // Nothing to compare against: every row is missing.
    const auto empty = verify_table({}, t1);
    CHECK(empty.diffs.size() == 18);
    CHECK(empty.matched == 0);
}

TEST_CASE("verification notices a changed record")
{
    SearchConfig c;
    c.family = Family::GR25;
    c.k = 1;
    c.max_adjunction = 20;
    auto stored = round_trip(run_search(c).records);
    const auto t1 = load_reference_table(default_data_dir(), "table1");
    const auto before = verify_table(stored, t1);
    CHECK(before.matched > 0);
    REQUIRE(!stored.empty());
    stored.front().K3 += 1;
    const auto after = verify_table(stored, t1);
    CHECK(after.matched + 1 == before.matched);
    CHECK(after.diffs.size() > before.diffs.size());
}
