// Acceptance checks. Usage: acceptance <path to grdb executable>
//
// Searches go through the command line tool so that the commands below are
// exercised exactly as a user would type them.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "grdb/invariants.hpp"
#include "grdb/reference.hpp"

using namespace grdb;
namespace fs = std::filesystem;

namespace {

fs::path g_cli;
fs::path g_tmp;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (ok)
            return;
        pass = false;
        detail += (detail.empty() ? "" : "; ") + what;
    }
};

struct Run {
    std::vector<StoredRecord> records;
    std::string raw;
    double seconds = 0;
    int status = 0;
};

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Run cli_search(const std::string& args, const std::string& tag)
{
    const fs::path out = g_tmp / (tag + ".jsonl");
    const fs::path err = g_tmp / (tag + ".report.json");
    const std::string cmd = "\"" + g_cli.string() + "\" search " + args + " --out \"" + out.string() + "\" 2> \"" +
                            err.string() + "\"";
    Run r;
    const auto t0 = std::chrono::steady_clock::now();
    r.status = std::system(cmd.c_str());
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.status != 0)
        return r;
    r.raw = slurp(out);
    std::istringstream in(r.raw);
    r.records = read_records(in);
    return r;
}

std::size_t passing(const std::vector<StoredRecord>& records)
{
    return static_cast<std::size_t>(
        std::count_if(records.begin(), records.end(), [](const StoredRecord& r) { return r.flags.all(); }));
}

std::string seconds(double s)
{
    std::ostringstream o;
    o.setf(std::ios::fixed);
    o.precision(1);
    o << s << "s";
    return o.str();
}

Outcome closed_form()
{
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    int cases = 0;
    for (int r = 2; r <= 60; ++r)
        for (int a = 1; a < r; ++a) {
            if (std::gcd(a, r) != 1)
                continue;
            ++cases;
            const auto generic = porb_generic(QuotientSingularity(r, {r - 1, a, r - a}), 1).inverse_numerator;
            if (inverse_numerator_closed(r, a) != generic)
                o.require(false, "mismatch at 1/" + std::to_string(r) + " a=" + std::to_string(a));
        }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(inverse_numerator_closed(2, 1) == IntPoly::monomial(3, -1), "1/2(1,1,1)");
    o.require(inverse_numerator_closed(8, 5).to_string() == "-3t^3-2t^4-t^5-3t^6-t^7-2t^8-3t^9", "1/8(3,5,7)");
    o.require(s < 5, "slow");
    o.detail = std::to_string(cases) + " cases, " + seconds(s) + (o.detail.empty() ? "" : "; " + o.detail);
    return o;
}

Outcome table(const std::string& args, const std::string& id, std::size_t rows, double budget)
{
    Outcome o;
    const Run run = cli_search(args, id);
    if (run.status != 0) {
        o.require(false, "search exited with " + std::to_string(run.status));
        return o;
    }
    const auto t = load_reference_table(default_data_dir(), id);
    const auto v = verify_table(run.records, t);
    o.require(t.rows.size() == rows, "table has " + std::to_string(t.rows.size()) + " rows");
    o.require(passing(run.records) == rows, std::to_string(passing(run.records)) + " passing records");
    o.require(v.ok(), std::to_string(v.diffs.size()) + " diffs" + (v.diffs.empty() ? "" : ", first: " + v.diffs[0]));
    o.require(run.seconds < budget, "over budget");
    o.detail = std::to_string(v.matched) + "/" + std::to_string(rows) + " rows matched, " + seconds(run.seconds) +
               (o.detail.empty() ? "" : "; " + o.detail);
    return o;
}

Outcome classifications()
{
    Outcome o;
    const auto counts = load_count_table(default_data_dir());
    struct Case {
        std::string args;
        Family family;
        int codim;
        int k;
        std::size_t expected;
    };
    const std::vector<Case> cases{
        {"--family ci --codim 1 --dim 3 --k -1 --max-adjunction 90", Family::CI, 1, -1, 95},
        {"--family ci --codim 1 --dim 3 --k 1 --max-adjunction 85", Family::CI, 1, 1, 23},
        {"--family gr25 --dim 3 --k -1 --max-adjunction 70", Family::GR25, 3, -1, 69},
    };
    std::string detail;
    char label = 'a';
    for (const auto& c : cases) {
        const Run run = cli_search(c.args, std::string("count_") + label);
        const std::size_t n = passing(run.records);
        o.require(run.status == 0, "search failed");
        o.require(n == c.expected, std::string(1, label) + ": " + std::to_string(n) + " != " +
                                       std::to_string(c.expected));
        o.require(run.seconds < 600, std::string(1, label) + ": over budget");
        const auto row = std::find_if(counts.begin(), counts.end(), [&](const CountRow& r) {
            return r.family == c.family && r.codim == c.codim && r.k == c.k && r.dim == 3;
        });
        o.require(row != counts.end() && row->exact() && verify_count(run.records, *row).ok(),
                  std::string(1, label) + ": table row");
        detail += std::string(detail.empty() ? "" : ", ") + label + ") " + std::to_string(n) + " in " +
                  seconds(run.seconds);
        ++label;
    }
    o.detail = detail + (o.detail.empty() ? "" : "; " + o.detail);
    return o;
}

Outcome kernel_identity()
{
    Outcome o;
    const QuotientSingularity a(3, {1, 1, 1}), b(3, {2, 2, 2});
    const auto sum = porb_generic(a, 0).series + porb_generic(b, 0).series;
    o.require(sum.numerator().is_zero(), "contributions do not cancel");
    std::vector<QuotientSingularity> cands;
    for (int r = 2; r <= 6; ++r) {
        const auto s = singularities_of_index(r, SingularityClass::CanonicalIsolated, 0);
        cands.insert(cands.end(), s.begin(), s.end());
    }
    const auto kernels = find_kernels(cands, 0, 6);
    const Basket pair({{a, 1}, {b, 1}});
    o.require(std::find(kernels.begin(), kernels.end(), pair) != kernels.end(), "pair not among kernels");
    o.detail = std::to_string(cands.size()) + " candidates, " + std::to_string(kernels.size()) + " minimal kernels" +
               (o.detail.empty() ? "" : "; " + o.detail);
    return o;
}

Outcome invariant_cross_checks()
{
    Outcome o;
    std::size_t rows = 0;
    for (const auto* id : {"table1", "table2"}) {
        const auto t = load_reference_table(default_data_dir(), id);
        for (const auto& row : t.rows) {
            ++rows;
            const auto f = t.family == Family::OGR510 ? ogr510_format({*row.u, row.w2}) : gr25_format({row.w2});
            const CycloRational h(f.numerator, row.ambient_weights);
            const std::string where = std::string(id) + " row " + std::to_string(row.number);
            try {
                const Rational by_pole = degree_A3(h);
                const Rational by_plurigenus = K3_from_plurigenus(h, row.basket, 1);
                o.require(by_pole == row.K3 && by_plurigenus == row.K3, where + ": K^3");
                o.require(Kc2(row.basket, row.chi) == row.Kc2, where + ": K.c2");
                o.require(chi_O(h, 1) == row.chi, where + ": chi");
            } catch (const std::exception& e) {
                o.require(false, where + ": " + e.what());
            }
        }
    }
    o.require(rows == 39, "expected 39 rows");
    o.detail = std::to_string(rows) + " rows" + (o.detail.empty() ? "" : "; " + o.detail);
    return o;
}

Outcome higher_index()
{
    Outcome o;
    const Run run = cli_search("--family ci --codim 2 --dim 3 --k 2 --min-weight 5 --max-adjunction 53", "higher");
    o.require(run.status == 0, "search failed");
    const std::vector<int> W{5, 6, 7, 9, 11, 13};
    const Basket want = Basket::parse("1/3(1,1,2), 1/11(5,6,9), 1/13(6,7,11)");
    bool found = false;
    for (const auto& r : run.records)
        if (r.format.params == std::vector<int>{18, 35} && r.ambient_weights == W) {
            found = true;
            o.require(r.baskets.size() == 1 && r.baskets[0] == want, "basket");
            o.require(r.K3 == Rational(8, 429), "K^3");
        }
    o.require(found, "X_{18,35} not found");
    o.detail = std::to_string(run.records.size()) + " records, " + seconds(run.seconds) +
               (o.detail.empty() ? "" : "; " + o.detail);
    return o;
}

Outcome golden_formats()
{
    Outcome o;
    const auto a = gr25_format({parse_half_integers("1,2,3,3,4")}).numerator;
    const IntPoly head = IntPoly{1} - IntPoly::monomial(9) - IntPoly::monomial(10, 2) - IntPoly::monomial(11) -
                         IntPoly::monomial(12);
    bool head_ok = true;
    for (int i = 0; i <= 12; ++i)
        head_ok = head_ok && a.coeff(i) == head.coeff(i);
    o.require(head_ok, "gr25(1,2,3,3,4): " + a.to_string());
    const auto b = gr25_format({parse_half_integers("-1/2,-1/2,3/2,3/2,3/2")}).numerator;
    o.require(b.to_string() == "1-3t^2+2t^3-2t^4+3t^5-t^7", "gr25(-1/2,...): " + b.to_string());
    const auto c = product_format(gr25_format({parse_half_integers("3/2,5/2,7/2,9/2,11/2")}), {18});
    o.require(c.adjunction == 53, "product adjunction " + std::to_string(c.adjunction));
    o.detail = a.to_string();
    return o;
}

Outcome properties()
{
    Outcome o;
    std::size_t numerators = 0;
    for (int k = 1; k <= 60; ++k) {
        std::vector<FormatInstance> all;
        for (auto fam : {Family::GR25, Family::OGR510, Family::GR25xCI}) {
            auto v = enumerate_gradings(fam, k);
            all.insert(all.end(), v.begin(), v.end());
        }
        for (int c = 1; c <= 3; ++c) {
            GradingOptions opt;
            opt.ci_codim = c;
            auto v = enumerate_gradings(Family::CI, k, opt);
            all.insert(all.end(), v.begin(), v.end());
        }
        for (const auto& f : all) {
            ++numerators;
            if (!is_gorenstein_symmetric(f.numerator, f.adjunction, f.codim))
                o.require(false, "asymmetric numerator for k_V=" + std::to_string(k));
        }
    }

    std::size_t points = 0;
    for (int r = 2; r <= 40; ++r)
        for (const auto& s : singularities_of_index(r, SingularityClass::Terminal, 1)) {
            ++points;
            const auto c = porb_generic(s, 1);
            const auto e = expand(c.series, 50);
            bool neg = e[0] == 0 && e[1] == 0 && e[2] == 0;
            for (int i = 3; i <= 50; ++i)
                neg = neg && e[i] < 0;
            o.require(neg, s.to_string() + " not strictly negative");
            // Window, inverse and palindromy.
            const auto [lo, hi] = porb_window(r, 1);
            const auto& n = c.inverse_numerator;
            o.require(n.valuation() >= lo && n.degree() <= hi, s.to_string() + " outside window");
            for (int i = lo; i <= hi; ++i)
                if (n.coeff(i) != n.coeff(lo + hi - i))
                    o.require(false, s.to_string() + " not palindromic");
            const auto check = reduce_mod_A(n * local_denominator(s), r, 0, r - 2);
            o.require(check == IntPoly{1}, s.to_string() + " not an inverse");
        }

    const std::string args = "--family gr25 --dim 3 --k 1 --max-adjunction 40 --sing-class terminal";
    const Run one = cli_search(args + " --jobs 1", "jobs1");
    const Run eight = cli_search(args + " --jobs 8", "jobs8");
    o.require(one.status == 0 && eight.status == 0, "search failed");
    o.require(!one.raw.empty() && one.raw == eight.raw, "--jobs 1 and --jobs 8 outputs differ");

    o.detail = std::to_string(numerators) + " numerators, " + std::to_string(points) + " points, " +
               std::to_string(one.raw.size()) + " output bytes compared" + (o.detail.empty() ? "" : "; " + o.detail);
    return o;
}

} // namespace

int main(int argc, char** argv)
{
    if (argc != 2) {
        std::cerr << "usage: acceptance <grdb executable>\n";
        return 2;
    }
    g_cli = fs::absolute(argv[1]);
    g_tmp = fs::temp_directory_path() / ("grdb-acceptance-" + std::to_string(::getpid()));
    fs::create_directories(g_tmp);

    struct Criterion {
        int number;
        const char* name;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {1, "closed form inverse numerators", closed_form},
        {2, "Gr(2,5) canonical table",
         [] {
             return table("--family gr25 --dim 3 --k 1 --max-adjunction 40 --sing-class terminal", "table1", 18,
                          120);
         }},
        {3, "OGr(5,10) canonical table",
         [] { return table("--family ogr510 --dim 3 --k 1 --max-adjunction 40", "table2", 21, 300); }},
        {4, "complete classifications", classifications},
        {5, "kernel identity", kernel_identity},
        {6, "invariant cross-checks", invariant_cross_checks},
        {7, "higher index X_{18,35}", higher_index},
        {8, "format golden values", golden_formats},
        {9, "property suites", properties},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failed += o.pass ? 0 : 1;
        std::cout << "criterion " << c.number << " [" << (o.pass ? "PASS" : "FAIL") << "] " << c.name << ": "
                  << o.detail << std::endl;
    }
    fs::remove_all(g_tmp);
    std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
