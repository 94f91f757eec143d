#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "grdb/basket.hpp"
#include "grdb/formats.hpp"
#include "grdb/invariants.hpp"
#include "grdb/orbifold.hpp"
#include "grdb/records.hpp"
#include "grdb/reference.hpp"
#include "grdb/search.hpp"

using namespace grdb;

namespace {

enum Exit { Ok = 0, Usage = 1, Diff = 2, Inconsistent = 3 };

std::vector<int> parse_ints(const std::string& text)
{
    std::vector<int> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos)
                throw InvalidInput("");
        } catch (const std::exception&) {
            throw InvalidInput("not an integer list: '" + text + "'");
        }
    }
    return out;
}

Json ints_json(const IntPoly& p)
{
    Json a = Json::array();
    for (const auto& c : p.coefficients())
        a.push_back(c.str());
    return a;
}

struct FormatArgs {
    std::string family = "gr25";
    std::string w;
    int u = 1;
    std::string ci_degrees;

    void add(CLI::App* app)
    {
        app->add_option("--family", family, "ci, gr25, gr25xh or ogr510");
        app->add_option("--w", w, "Gr(2,5) or OGr(5,10) grading, e.g. 0,1,1,1,1 or 1/2(1,1,3,3,3)");
        app->add_option("--u", u, "weight of x for ogr510");
        app->add_option("--ci-degrees", ci_degrees, "comma separated degrees");
    }

    FormatInstance build() const
    {
        const Family f = parse_family(family);
        const auto degrees = ci_degrees.empty() ? std::vector<int>{} : parse_ints(ci_degrees);
        switch (f) {
        case Family::CI:
            if (degrees.empty())
                throw InvalidInput("--ci-degrees is required for ci");
            return ci_format(degrees);
        case Family::GR25:
            return gr25_format(Gr25Grading{parse_half_integers(w)});
        case Family::GR25xCI:
            if (degrees.empty())
                throw InvalidInput("--ci-degrees is required for gr25xh");
            return product_format(gr25_format(Gr25Grading{parse_half_integers(w)}), degrees);
        case Family::OGR510:
            return ogr510_format(Ogr510Grading{u, parse_half_integers(w)});
        }
        throw InvalidInput("unknown family");
    }
};

Json format_json(const FormatInstance& f)
{
    Json j;
    j["family"] = to_string(f.family);
    j["params"] = f.params;
    j["codim"] = f.codim;
    j["adjunction"] = f.adjunction;
    j["key_weights"] = f.key_weights;
    j["equation_degrees"] = f.equation_degrees;
    j["numerator"] = f.numerator.to_string();
    return j;
}

struct SearchArgs {
    std::string family = "gr25";
    std::string ci_degrees;
    int dim = 3;
    int k = 1;
    int codim = 0;
    int min_adjunction = 1;
    int max_adjunction = 40;
    std::string sing_class;
    int basket_cap = 24;
    int kernel_cap = 12;
    int min_weight = 1;
    std::string out;
    std::string format = "jsonl";
    int jobs = 1;
    bool seedless = false;

    SearchConfig config() const
    {
        SearchConfig c;
        c.family = parse_family(family);
        c.dim = dim;
        c.k = k;
        c.min_adjunction = min_adjunction;
        c.max_adjunction = max_adjunction;
        if (!sing_class.empty())
            c.sing_class = parse_singularity_class(sing_class);
        c.basket_cap = basket_cap;
        c.kernel_cap = kernel_cap;
        c.min_weight = min_weight;
        c.jobs = jobs;
        if (!ci_degrees.empty())
            c.ci_degrees = parse_ints(ci_degrees);
        // --codim is the total codimension of X.
        const int fixed = c.family == Family::GR25 || c.family == Family::GR25xCI ? 3 : (c.family == Family::OGR510 ? 5 : 0);
        if (codim > 0) {
            if (c.family == Family::GR25 || c.family == Family::OGR510) {
                if (codim != fixed)
                    throw InvalidInput("codimension of " + family + " is " + std::to_string(fixed));
            } else {
                c.ci_codim = codim - fixed;
            }
        } else if (!c.ci_degrees.empty()) {
            c.ci_codim = static_cast<int>(c.ci_degrees.size());
        }
        return c;
    }
};

int run_search_command(const SearchArgs& a)
{
    const SearchConfig config = a.config();
    const OutputFormat fmt = parse_output_format(a.format);
    const SearchResult result = run_search(config);
    if (a.out.empty()) {
        write_records(std::cout, result.records, fmt);
        std::cout.flush();
        if (!std::cout)
            throw std::runtime_error("write to standard output failed");
    } else {
        std::ofstream file(a.out);
        if (!file)
            throw std::runtime_error("cannot open " + a.out);
        write_records(file, result.records, fmt);
        file.close();
        if (!file)
            throw std::runtime_error("write to " + a.out + " failed");
    }
    std::cerr << report_to_json(result.report).dump() << '\n';
    return Ok;
}

int run_porb(int r, const std::string& weights, int k)
{
    const auto w = parse_ints(weights);
    if (w.size() != 3)
        throw InvalidInput("--weights needs three entries");
    const QuotientSingularity s(r, {w[0], w[1], w[2]});
    const OrbContribution c = porb_generic(s, k);
    Json j;
    j["singularity"] = s.to_string();
    j["k"] = k;
    j["window"] = {c.window_lo, c.window_hi};
    j["inverse_numerator"] = c.inverse_numerator.to_string();
    j["coefficients"] = ints_json(c.inverse_numerator);
    j["terminal"] = s.is_terminal();
    j["gorenstein"] = s.is_gorenstein();
    std::cout << j.dump() << '\n';
    return Ok;
}

struct InvariantArgs {
    std::string basket;
    std::string chi;
    std::string K3;
    int m_max = 12;
    FormatArgs format;
    std::string ambient;
    int k = 1;
};

int run_invariants(const InvariantArgs& a)
{
    if (!a.ambient.empty()) {
        SearchConfig config;
        config.k = a.k;
        const FormatInstance f = a.format.build();
        const auto rec = process_candidate(f, parse_ints(a.ambient), config);
        if (!rec) {
            std::cout << "null\n";
            return Ok;
        }
        Json j = record_to_json(*rec);
        Json p = Json::array();
        for (const auto& x : rec->plurigenera)
            p.push_back(x.str());
        j["plurigenera"] = p;
        std::cout << j.dump() << '\n';
        return Ok;
    }
    if (a.chi.empty())
        throw InvalidInput("--chi is required without --ambient");
    const Basket b = Basket::parse(a.basket);
    const Integer chi(a.chi);
    Json j;
    j["basket"] = b.to_strings();
    j["chi"] = a.chi;
    if (b.all_terminal())
        j["Kc2"] = to_fraction_string(Kc2(b, chi));
    if (!a.K3.empty()) {
        const Rational K3 = parse_fraction(a.K3);
        Json p = Json::array();
        for (const auto& x : plurigenera(chi, K3, b, a.m_max))
            p.push_back(x.str());
        j["plurigenera"] = p;
    }
    std::cout << j.dump() << '\n';
    return Ok;
}

struct VerifyArgs {
    std::string table;
    std::string results;
    std::string data_dir;
    std::string family;
    int k = 1;
    int codim = 1;
    int dim = 3;
};

int run_verify(const VerifyArgs& a)
{
    const std::filesystem::path dir = a.data_dir.empty() ? default_data_dir() : std::filesystem::path(a.data_dir);
    std::ifstream in(a.results);
    if (!in)
        throw InvalidInput("cannot open " + a.results);
    const auto records = read_records(in);
    VerifyReport rep;
    if (a.table == "table3") {
        if (a.family.empty())
            throw InvalidInput("table3 needs --family, --k and --codim to pick a row");
        const Family f = parse_family(a.family);
        const CountRow* row = nullptr;
        const auto rows = load_count_table(dir);
        for (const auto& r : rows)
            if (r.family == f && r.k == a.k && r.codim == a.codim && r.dim == a.dim)
                row = &r;
        if (!row)
            throw InvalidInput("no table3 row for that family, k and codim");
        rep = verify_count(records, *row);
    } else {
        rep = verify_table(records, load_reference_table(dir, a.table));
    }
    Json j;
    j["table"] = a.table;
    j["expected"] = rep.expected;
    j["matched"] = rep.matched;
    j["diffs"] = rep.diffs;
    std::cout << j.dump(1) << '\n';
    return rep.ok() ? Ok : Diff;
}

int run_kernels(int max_index, int k, const std::string& cls, int cap)
{
    const SingularityClass c = cls.empty() ? (k == 0 ? SingularityClass::CanonicalIsolated : SingularityClass::Terminal)
                                           : parse_singularity_class(cls);
    std::vector<QuotientSingularity> candidates;
    for (int r = 2; r <= max_index; ++r)
        for (const auto& s : singularities_of_index(r, c, k))
            candidates.push_back(s);
    for (const auto& b : find_kernels(candidates, k, cap))
        std::cout << Json(b.to_strings()).dump() << '\n';
    return Ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Graded ring candidate search"};
    app.require_subcommand(1);

    SearchArgs sa;
    auto* search = app.add_subcommand("search", "enumerate candidate Hilbert series and baskets");
    search->add_option("--family", sa.family, "ci, gr25, gr25xh or ogr510");
    search->add_option("--ci-degrees", sa.ci_degrees, "fix the complete intersection degrees");
    search->add_option("--dim", sa.dim);
    search->add_option("--k", sa.k, "K_X = kA");
    search->add_option("--codim", sa.codim, "total codimension");
    search->add_option("--min-adjunction", sa.min_adjunction);
    search->add_option("--max-adjunction", sa.max_adjunction);
    search->add_option("--sing-class", sa.sing_class, "terminal or canonical-isolated");
    search->add_option("--basket-cap", sa.basket_cap);
    search->add_option("--kernel-cap", sa.kernel_cap);
    search->add_option("--min-weight", sa.min_weight);
    search->add_option("--out", sa.out, "output file (default: standard output)");
    search->add_option("--format", sa.format, "jsonl or csv");
    search->add_option("--jobs", sa.jobs);
    search->add_flag("--seedless", sa.seedless, "accepted; the search uses no randomness");

    int porb_r = 0, porb_k = 1;
    std::string porb_w;
    auto* porb = app.add_subcommand("porb", "orbifold contribution of 1/r(a,b,c)");
    porb->add_option("--r", porb_r)->required();
    porb->add_option("--weights", porb_w, "a,b,c")->required();
    porb->add_option("--k", porb_k);

    FormatArgs fa;
    auto* format = app.add_subcommand("format", "describe a format instance");
    fa.add(format);

    InvariantArgs ia;
    auto* inv = app.add_subcommand("invariants", "invariants of a basket or of one candidate");
    inv->add_option("--basket", ia.basket, "e.g. 3*1/2(1,1,1),1/3(1,2,2)");
    inv->add_option("--chi", ia.chi);
    inv->add_option("--K3", ia.K3, "p/q; adds plurigenera");
    inv->add_option("--m-max", ia.m_max);
    inv->add_option("--ambient", ia.ambient, "ambient weights; runs the pipeline on one W");
    inv->add_option("--k", ia.k);
    ia.format.add(inv);

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "compare search output with a reference table");
    verify->add_option("--table", va.table, "table1, table2 or table3")->required();
    verify->add_option("--results", va.results, "JSON Lines search output")->required();
    verify->add_option("--data-dir", va.data_dir);
    verify->add_option("--family", va.family, "table3 row");
    verify->add_option("--k", va.k, "table3 row");
    verify->add_option("--codim", va.codim, "table3 row");
    verify->add_option("--dim", va.dim, "table3 row");

    int kmax = 6, kk = 0, kcap = 6;
    std::string kcls;
    auto* kernels = app.add_subcommand("kernels", "minimal baskets with zero contribution");
    kernels->add_option("--max-index", kmax);
    kernels->add_option("--k", kk);
    kernels->add_option("--sing-class", kcls);
    kernels->add_option("--cap", kcap);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Ok : Usage;
    }

    try {
        if (*search)
            return run_search_command(sa);
        if (*porb)
            return run_porb(porb_r, porb_w, porb_k);
        if (*format) {
            std::cout << format_json(fa.build()).dump() << '\n';
            return Ok;
        }
        if (*inv)
            return run_invariants(ia);
        if (*verify)
            return run_verify(va);
        if (*kernels)
            return run_kernels(kmax, kk, kcls, kcap);
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Usage;
    } catch (const InconsistencyError& e) {
        std::cerr << "inconsistency: " << e.what() << '\n';
        return Inconsistent;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Inconsistent;
    }
    return Usage;
}
