#include "grdb/reference.hpp"

#include <fstream>
#include <sstream>

namespace grdb {

namespace {

Json load_json(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidInput("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(path.string() + ": " + e.what());
    }
}

std::optional<int> optional_int(const Json& j, const char* name)
{
    if (!j.contains(name) || j.at(name).is_null())
        return std::nullopt;
    return j.at(name).get<int>();
}

std::string list_string(const std::vector<int>& xs)
{
    std::string s = "(";
    for (std::size_t i = 0; i < xs.size(); ++i)
        s += (i ? "," : "") + std::to_string(xs[i]);
    return s + ")";
}

std::array<int, 5> record_w2(const StoredRecord& r)
{
    const auto& p = r.format.params;
    const std::size_t from = r.format.family == Family::OGR510 ? 1 : 0;
    std::array<int, 5> w{};
    for (std::size_t i = 0; i < 5; ++i)
        w[i] = p.at(from + i);
    return w;
}

bool same_grading(const StoredRecord& r, const ReferenceRow& row, Family family)
{
    if (r.format.family != family || record_w2(r) != row.w2)
        return false;
    return !row.u || r.format.params.front() == *row.u;
}

} // namespace

std::filesystem::path default_data_dir()
{
    return GRDB_DATA_DIR;
}

ReferenceTable load_reference_table(const std::filesystem::path& dir, const std::string& id)
{
    if (id != "table1" && id != "table2")
        throw InvalidInput("unknown reference table '" + id + "'");
    const Json j = load_json(dir / (id + ".json"));
    ReferenceTable t;
    try {
        t.id = j.at("id").get<std::string>();
        t.family = parse_family(j.at("family").get<std::string>());
        t.dim = j.at("dim").get<int>();
        t.k = j.at("k").get<int>();
        for (const auto& r : j.at("rows")) {
            ReferenceRow row;
            row.number = r.at("number").get<int>();
            row.variety = r.at("variety").get<std::string>();
            row.equation_degrees = r.at("equation_degrees").get<std::vector<int>>();
            row.ambient_weights = r.at("ambient_weights").get<std::vector<int>>();
            row.basket = Basket::parse(r.at("basket").get<std::string>());
            row.K3 = parse_fraction(r.at("K3").get<std::string>());
            row.chi = r.at("chi").get<int>();
            row.Kc2 = parse_fraction(r.at("Kc2").get<std::string>());
            row.w2 = parse_half_integers(r.at("w").get<std::string>());
            if (t.family == Family::OGR510) {
                row.u = r.at("u").get<int>();
                row.key_weights.push_back(r.at("x_weight").get<int>());
                for (int x : r.at("x_i_weights").get<std::vector<int>>())
                    row.key_weights.push_back(x);
                for (int x : r.at("x_ij_weights").get<std::vector<int>>())
                    row.key_weights.push_back(x);
            } else {
                row.key_weights = r.at("syzygy_weights").get<std::vector<int>>();
            }
            t.rows.push_back(std::move(row));
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(id + ": " + e.what());
    }
    if (t.id != id)
        throw InvalidInput(id + ": file carries id '" + t.id + "'");
    return t;
}

std::vector<CountRow> load_count_table(const std::filesystem::path& dir)
{
    const Json j = load_json(dir / "table3.json");
    std::vector<CountRow> rows;
    try {
        for (const auto& r : j.at("rows")) {
            CountRow row;
            row.dim = r.at("dim").get<int>();
            row.k = r.at("k").get<int>();
            row.codim = r.at("codim").get<int>();
            row.family = parse_family(r.at("family").get<std::string>());
            row.k_last = optional_int(r, "k_last");
            row.k_max = optional_int(r, "k_max");
            row.raw = optional_int(r, "raw");
            row.results = r.at("results").get<int>();
            rows.push_back(row);
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("table3: ") + e.what());
    }
    return rows;
}

VerifyReport verify_table(const std::vector<StoredRecord>& records, const ReferenceTable& table)
{
    VerifyReport rep;
    rep.expected = table.rows.size();
    std::vector<char> used(records.size(), 0);
    for (const auto& row : table.rows) {
        const std::string tag = table.id + " row " + std::to_string(row.number) + " " + row.variety + ": ";
        std::size_t hit = records.size();
        for (std::size_t i = 0; i < records.size(); ++i)
            if (!used[i] && records[i].flags.all() && same_grading(records[i], row, table.family) &&
                records[i].ambient_weights == row.ambient_weights) {
                hit = i;
                break;
            }
        if (hit == records.size()) {
            rep.diffs.push_back(tag + "missing");
            continue;
        }
        used[hit] = 1;
        const auto& r = records[hit];
        std::vector<std::string> bad;
        if (r.dim != table.dim || r.k != table.k)
            bad.push_back("dim/k " + std::to_string(r.dim) + "/" + std::to_string(r.k));
        if (r.format.equation_degrees != row.equation_degrees)
            bad.push_back("equation degrees " + list_string(r.format.equation_degrees));
        if (r.format.key_weights != row.key_weights)
            bad.push_back("format weights " + list_string(r.format.key_weights));
        if (r.baskets.size() != 1 || r.baskets.front() != row.basket) {
            std::string b;
            for (const auto& x : r.baskets)
                b += "{" + x.to_string() + "}";
            bad.push_back("baskets " + b);
        }
        if (r.K3 != row.K3)
            bad.push_back("K3 " + to_fraction_string(r.K3));
        if (r.chi != row.chi)
            bad.push_back("chi " + r.chi.str());
        if (r.Kc2.size() != 1 || !r.Kc2.front() || *r.Kc2.front() != row.Kc2)
            bad.push_back("Kc2 differs");
        if (bad.empty()) {
            ++rep.matched;
        } else {
            std::string d = tag;
            for (std::size_t i = 0; i < bad.size(); ++i)
                d += (i ? "; " : "") + bad[i];
            rep.diffs.push_back(d);
        }
    }
    for (std::size_t i = 0; i < records.size(); ++i)
        if (!used[i] && records[i].flags.all())
            rep.diffs.push_back(table.id + ": extra record W=" + list_string(records[i].ambient_weights) +
                                " adjunction " + std::to_string(records[i].format.adjunction));
    return rep;
}

VerifyReport verify_count(const std::vector<StoredRecord>& records, const CountRow& row)
{
    VerifyReport rep;
    rep.expected = static_cast<std::size_t>(row.results);
    for (const auto& r : records)
        if (r.flags.all() && r.format.family == row.family && r.format.codim == row.codim && r.k == row.k &&
            r.dim == row.dim)
            ++rep.matched;
    if (row.exact() && rep.matched != rep.expected) {
        std::ostringstream s;
        s << "table3 " << to_string(row.family) << " codim " << row.codim << " k " << row.k << ": " << rep.matched
          << " all-flags-pass records, expected " << rep.expected;
        rep.diffs.push_back(s.str());
    }
    return rep;
}

} // namespace grdb
