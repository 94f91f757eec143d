#include "grdb/records.hpp"

#include <limits>
#include <ostream>

namespace grdb {

namespace {

Json integer_json(const Integer& x)
{
    if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
        return static_cast<long long>(x);
    return x.str();
}

Integer integer_from_json(const Json& j)
{
    if (j.is_number_integer())
        return Integer(j.get<long long>());
    if (j.is_string())
        return Integer(j.get<std::string>());
    throw InvalidInput("expected an integer");
}

std::string join(const std::vector<int>& xs, char sep)
{
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i)
            s += sep;
        s += std::to_string(xs[i]);
    }
    return s;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"')
            q += '"';
        q += c;
    }
    return q + "\"";
}

const Json& field(const Json& j, const char* name)
{
    if (!j.is_object() || !j.contains(name))
        throw InvalidInput(std::string("record field '") + name + "' missing");
    return j.at(name);
}

template <class T>
T get(const Json& j, const char* name)
{
    try {
        return field(j, name).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw InvalidInput(std::string("record field '") + name + "' has the wrong type");
    }
}

FormatInstance rebuild_format(Family family, const std::vector<int>& params)
{
    const auto w2 = [&](std::size_t from) {
        if (params.size() < from + 5)
            throw InvalidInput("params too short for the family");
        std::array<int, 5> w{};
        std::copy(params.begin() + static_cast<long>(from), params.begin() + static_cast<long>(from) + 5, w.begin());
        return w;
    };
    switch (family) {
    case Family::CI:
        return ci_format(params);
    case Family::GR25:
        return gr25_format(Gr25Grading{w2(0)});
    case Family::GR25xCI:
        return product_format(gr25_format(Gr25Grading{w2(0)}), std::vector<int>(params.begin() + 5, params.end()));
    case Family::OGR510:
        if (params.empty())
            throw InvalidInput("params too short for the family");
        return ogr510_format(Ogr510Grading{params[0], w2(1)});
    }
    throw InvalidInput("unknown family");
}

} // namespace

OutputFormat parse_output_format(std::string_view text)
{
    if (text == "jsonl")
        return OutputFormat::Jsonl;
    if (text == "csv")
        return OutputFormat::Csv;
    throw InvalidInput("unknown output format '" + std::string(text) + "'");
}

Json record_to_json(const CandidateRecord& rec)
{
    Json j;
    j["family"] = to_string(rec.format.family);
    j["params"] = rec.format.params;
    j["codim"] = rec.format.codim;
    j["dim"] = rec.dim;
    j["k"] = rec.k;
    j["adjunction"] = rec.format.adjunction;
    j["ambient_weights"] = rec.ambient_weights;
    j["equation_degrees"] = rec.format.equation_degrees;
    Json num = Json::array();
    for (const auto& c : rec.format.numerator.coefficients())
        num.push_back(integer_json(c));
    j["numerator"] = num;
    Json baskets = Json::array();
    for (const auto& b : rec.baskets)
        baskets.push_back(b.to_strings());
    j["baskets"] = baskets;
    j["chi"] = integer_json(rec.chi);
    j["K3"] = to_fraction_string(rec.K3);
    Json kc2 = Json::array();
    for (const auto& x : rec.Kc2)
        kc2.push_back(x ? Json(to_fraction_string(*x)) : Json(nullptr));
    j["Kc2"] = kc2;
    j["A3"] = to_fraction_string(rec.A3);
    j["flags"] = {{"well_formed", rec.flags.well_formed},
                  {"variable_usage", rec.flags.variable_usage},
                  {"tangent_monomial", rec.flags.tangent_monomial},
                  {"index_capacity", rec.flags.index_capacity}};
    if (!rec.kernels.empty()) {
        Json kernels = Json::array();
        for (const auto& b : rec.kernels)
            kernels.push_back(b.to_strings());
        j["kernels"] = kernels;
    }
    return j;
}

std::string csv_header()
{
    return "family,params,codim,dim,k,adjunction,ambient_weights,equation_degrees,basket,chi,K3,Kc2,A3,"
           "well_formed,variable_usage,tangent_monomial,index_capacity";
}

std::vector<std::string> record_to_csv_rows(const CandidateRecord& rec)
{
    const auto b01 = [](bool b) { return b ? "1" : "0"; };
    std::string head = to_string(rec.format.family) + "," + join(rec.format.params, ' ') + "," +
                       std::to_string(rec.format.codim) + "," + std::to_string(rec.dim) + "," +
                       std::to_string(rec.k) + "," + std::to_string(rec.format.adjunction) + "," +
                       join(rec.ambient_weights, ' ') + "," + join(rec.format.equation_degrees, ' ') + ",";
    std::string tail = std::string(",") + b01(rec.flags.well_formed) + "," + b01(rec.flags.variable_usage) + "," +
                       b01(rec.flags.tangent_monomial) + "," + b01(rec.flags.index_capacity);
    std::vector<std::string> rows;
    const std::size_t n = std::max<std::size_t>(rec.baskets.size(), 1);
    for (std::size_t i = 0; i < n; ++i) {
        std::string basket, kc2;
        if (i < rec.baskets.size()) {
            basket = rec.baskets[i].to_string();
            if (i < rec.Kc2.size() && rec.Kc2[i])
                kc2 = to_fraction_string(*rec.Kc2[i]);
        }
        rows.push_back(head + csv_field(basket) + "," + rec.chi.str() + "," + to_fraction_string(rec.K3) + "," + kc2 +
                       "," + to_fraction_string(rec.A3) + tail);
    }
    return rows;
}

void write_records(std::ostream& out, const std::vector<CandidateRecord>& records, OutputFormat format)
{
    if (format == OutputFormat::Csv) {
        out << csv_header() << '\n';
        for (const auto& r : records)
            for (const auto& row : record_to_csv_rows(r))
                out << row << '\n';
        return;
    }
    for (const auto& r : records)
        out << record_to_json(r).dump() << '\n';
}

Json report_to_json(const RunReport& r)
{
    const auto& c = r.config;
    Json config;
    config["family"] = to_string(c.family);
    config["dim"] = c.dim;
    config["k"] = c.k;
    int codim = c.ci_codim;
    if (c.family == Family::GR25)
        codim = 3;
    else if (c.family == Family::GR25xCI)
        codim = 3 + c.ci_codim;
    else if (c.family == Family::OGR510)
        codim = 5;
    config["codim"] = codim;
    if (!c.ci_degrees.empty())
        config["ci_degrees"] = c.ci_degrees;
    config["min_adjunction"] = c.min_adjunction;
    config["max_adjunction"] = c.max_adjunction;
    config["sing_class"] = to_string(c.singularity_class());
    config["basket_cap"] = c.basket_cap;
    config["kernel_cap"] = c.kernel_cap;
    config["min_weight"] = c.min_weight;
    config["jobs"] = c.jobs;
    Json j;
    j["config"] = config;
    j["gradings"] = r.gradings;
    j["weight_vectors"] = r.weight_vectors;
    j["records"] = r.records;
    j["all_flags_pass"] = r.all_flags_pass;
    j["fail_well_formed"] = r.fail_well_formed;
    j["fail_variable_usage"] = r.fail_variable_usage;
    j["fail_tangent_monomial"] = r.fail_tangent_monomial;
    j["fail_index_capacity"] = r.fail_index_capacity;
    j["k_last"] = r.k_last;
    j["k_max"] = r.k_max;
    j["wall_seconds"] = r.wall_seconds;
    return j;
}

StoredRecord parse_record(const Json& j)
{
    StoredRecord s;
    const Family family = parse_family(get<std::string>(j, "family"));
    s.format = rebuild_format(family, get<std::vector<int>>(j, "params"));
    if (s.format.codim != get<int>(j, "codim"))
        throw InvalidInput("codim does not match the params");
    if (s.format.adjunction != get<int>(j, "adjunction"))
        throw InvalidInput("adjunction does not match the params");
    s.dim = get<int>(j, "dim");
    s.k = get<int>(j, "k");
    s.ambient_weights = get<std::vector<int>>(j, "ambient_weights");
    for (const auto& b : field(j, "baskets")) {
        std::string text;
        for (const auto& item : b) {
            if (!item.is_string())
                throw InvalidInput("basket entries must be strings");
            if (!text.empty())
                text += ",";
            text += item.get<std::string>();
        }
        s.baskets.push_back(Basket::parse(text));
    }
    s.chi = integer_from_json(field(j, "chi"));
    s.K3 = parse_fraction(get<std::string>(j, "K3"));
    s.A3 = parse_fraction(get<std::string>(j, "A3"));
    for (const auto& x : field(j, "Kc2"))
        s.Kc2.push_back(x.is_null() ? std::nullopt : std::optional<Rational>(parse_fraction(x.get<std::string>())));
    const Json& f = field(j, "flags");
    s.flags.well_formed = get<bool>(f, "well_formed");
    s.flags.variable_usage = get<bool>(f, "variable_usage");
    s.flags.tangent_monomial = get<bool>(f, "tangent_monomial");
    s.flags.index_capacity = get<bool>(f, "index_capacity");
    return s;
}

std::vector<StoredRecord> read_records(std::istream& in)
{
    std::vector<StoredRecord> out;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        Json j;
        try {
            j = Json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw InvalidInput("line " + std::to_string(n) + ": " + e.what());
        }
        out.push_back(parse_record(j));
    }
    return out;
}

} // namespace grdb
