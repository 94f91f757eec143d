#include "grdb/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

#include "grdb/invariants.hpp"
#include "lattice.hpp"
#include "strata.hpp"

namespace grdb {

SingularityClass SearchConfig::singularity_class() const
{
    if (sing_class)
        return *sing_class;
    return k == 0 ? SingularityClass::CanonicalIsolated : SingularityClass::Terminal;
}

void SearchConfig::validate() const
{
    if (dim != 3)
        throw InvalidInput("only threefolds (dim 3) are supported");
    if (k < -1)
        throw InvalidInput("k must be at least -1");
    if (max_adjunction < 1 || min_adjunction < 1)
        throw InvalidInput("adjunction bounds must be positive");
    if (ci_codim < 1)
        throw InvalidInput("codimension must be positive");
    if (!ci_degrees.empty()) {
        if (family != Family::CI && family != Family::GR25xCI)
            throw InvalidInput("fixed degrees need a complete intersection part");
        if (static_cast<int>(ci_degrees.size()) != ci_codim)
            throw InvalidInput("number of degrees differs from the codimension");
    }
    if (basket_cap < 0 || kernel_cap < 0)
        throw InvalidInput("caps must be nonnegative");
    if (min_weight < 1)
        throw InvalidInput("minimum weight must be positive");
    if (jobs < 1)
        throw InvalidInput("jobs must be positive");
}

// ---------------------------------------------------------------------------
// Ambient weights

namespace {

class WeightEnumerator {
public:
    WeightEnumerator(const FormatInstance& f, int n, int total, const WeightConstraints& c, const WeightVisitor& visit)
        : f_(f), n_(n), total_(total), c_(c), visit_(visit), count_(static_cast<std::size_t>(f.chi_max) + 1, 0),
          allowed_(static_cast<std::size_t>(f.chi_max) + 1, -1)
    {
        divisors_.resize(static_cast<std::size_t>(f.chi_max) + 1);
        for (int d = 2; d <= f.chi_max; ++d)
            for (int m = d; m <= f.chi_max; m += d)
                divisors_[static_cast<std::size_t>(m)].push_back(d);
    }

    void run()
    {
        if (n_ < 1 || f_.chi_max < c_.min_weight)
            return;
        recurse(c_.min_weight, total_);
    }

private:
    /// 1 + multiplicity of Phi_d in the numerator: the most weights that
    /// may share the factor d.
    int allowed(int d)
    {
        auto& a = allowed_[static_cast<std::size_t>(d)];
        if (a < 0)
            a = 1 + cyclotomic_multiplicity(f_.numerator, d);
        return a;
    }

    void recurse(int lo, int remaining)
    {
        const int left = n_ - static_cast<int>(cur_.size());
        if (left == 0) {
            if (remaining == 0) {
                int g = 0;
                for (int a : cur_)
                    g = std::gcd(g, a);
                if (g == 1)
                    visit_(cur_);
            }
            return;
        }
        const int hi = std::min(f_.chi_max, remaining - (left - 1) * lo);
        for (int a = lo; a <= hi; ++a) {
            if (static_cast<long long>(a) * left > remaining)
                break;
            if (static_cast<long long>(f_.chi_max) * (left - 1) < remaining - a)
                continue;
            bool ok = true;
            if (c_.prune_poles) {
                for (int d : divisors_[static_cast<std::size_t>(a)])
                    if (++count_[static_cast<std::size_t>(d)] > allowed(d))
                        ok = false;
            }
            if (ok) {
                cur_.push_back(a);
                recurse(a, remaining - a);
                cur_.pop_back();
            }
            if (c_.prune_poles)
                for (int d : divisors_[static_cast<std::size_t>(a)])
                    --count_[static_cast<std::size_t>(d)];
        }
    }

    const FormatInstance& f_;
    int n_;
    int total_;
    WeightConstraints c_;
    const WeightVisitor& visit_;
    std::vector<int> count_;
    std::vector<int> allowed_;
    std::vector<std::vector<int>> divisors_;
    std::vector<int> cur_;
};

} // namespace

void for_each_ambient_weights(const FormatInstance& f, int dim, int k, const WeightConstraints& constraints,
                              const WeightVisitor& visit)
{
    const int n = dim + f.codim + 1;
    const int total = f.adjunction - k;
    if (total < n * constraints.min_weight)
        return;
    WeightEnumerator(f, n, total, constraints, visit).run();
}

std::vector<std::vector<int>> enumerate_ambient_weights(const FormatInstance& f, int dim, int k,
                                                        const WeightConstraints& constraints)
{
    std::vector<std::vector<int>> out;
    for_each_ambient_weights(f, dim, k, constraints, [&](const std::vector<int>& W) { out.push_back(W); });
    return out;
}

CycloRational hilbert_series(const FormatInstance& f, const std::vector<int>& W)
{
    if (W.empty())
        throw InvalidInput("empty weight list");
    return CycloRational(f.numerator, W);
}

namespace {

/// Numerator of P_ini from the first floor((k+4)/2) + 1 coefficients.
IntPoly initial_numerator(const SeriesPrefix& p, int k)
{
    const int deg = k + 4;
    const int h = deg / 2;
    static const int binom4[5] = {1, -4, 6, -4, 1};
    std::vector<Integer> q(static_cast<std::size_t>(deg) + 1);
    for (int i = 0; i <= h; ++i) {
        Integer s = 0;
        for (int j = 0; j <= 4 && j <= i; ++j)
            s += binom4[j] * p[i - j];
        q[static_cast<std::size_t>(i)] = s;
        q[static_cast<std::size_t>(deg - i)] = s;
    }
    return IntPoly(std::move(q));
}

} // namespace

CycloRational initial_series(const CycloRational& hilbert, int dim, int k)
{
    if (dim != 3)
        throw InvalidInput("only threefolds are supported");
    if (k < -1)
        throw InvalidInput("k must be at least -1");
    return CycloRational(initial_numerator(expand(hilbert, (k + 4) / 2), k), {1, 1, 1, 1});
}

// ---------------------------------------------------------------------------
// Candidate singularities and their contributions, shared between workers.

namespace {

std::vector<int> subset_gcds(const std::vector<int>& W)
{
    std::vector<int> s;
    for (int a : W) {
        const std::size_t m = s.size();
        s.push_back(a);
        for (std::size_t i = 0; i < m; ++i)
            s.push_back(std::gcd(a, s[i]));
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    s.erase(s.begin(), std::upper_bound(s.begin(), s.end(), 1));
    return s;
}

// Exact for every search in reach: series coefficients stay far below 2^100.
using Wide = __int128;

struct OrbEntry {
    OrbContribution contribution;
    std::vector<Integer> prefix;
    std::vector<Wide> wide;
};

int match_order(const std::vector<QuotientSingularity>& candidates, int k);

/// Everything about a candidate list that does not depend on W.
struct Prepared {
    std::vector<QuotientSingularity> candidates;
    int order = 0;
    std::vector<std::shared_ptr<const OrbEntry>> entries;
    /// Per degree: +1 when no contribution is negative there, -1 when none
    /// is positive, 0 when signs are mixed, 2 when all vanish.
    std::vector<signed char> sign;
    detail::ModularSolver solver;
};

class OrbCache {
public:
    static OrbCache& instance()
    {
        static OrbCache c;
        return c;
    }

    /// Contribution of s at k with its expansion to at least `order`.
    std::shared_ptr<const OrbEntry> get(const QuotientSingularity& s, int k, int order)
    {
        const auto key = std::make_pair(s, k);
        {
            std::lock_guard lock(mutex_);
            auto it = entries_.find(key);
            if (it != entries_.end() && static_cast<int>(it->second->prefix.size()) > order)
                return it->second;
        }
        auto e = std::make_shared<OrbEntry>(OrbEntry{porb_generic(s, k), {}, {}});
        e->prefix = expand(e->contribution.series, std::max(order, 2 * s.index() + 40)).coefficients;
        for (const auto& c : e->prefix)
            e->wide.push_back(static_cast<Wide>(static_cast<long long>(c)));
        std::lock_guard lock(mutex_);
        auto& slot = entries_[key];
        if (!slot || slot->prefix.size() < e->prefix.size())
            slot = e;
        return slot;
    }

    const std::vector<QuotientSingularity>& of_index(int r, SingularityClass cls, int k)
    {
        const auto key = std::make_tuple(r, cls, k);
        std::lock_guard lock(mutex_);
        auto it = by_index_.find(key);
        if (it == by_index_.end())
            it = by_index_.emplace(key, singularities_of_index(r, cls, k)).first;
        return it->second;
    }

    std::shared_ptr<const std::vector<Basket>> kernels(const std::vector<QuotientSingularity>& cands, int k,
                                                       int cap)
    {
        auto key = std::make_tuple(cands, k, cap);
        {
            std::lock_guard lock(mutex_);
            auto it = kernels_.find(key);
            if (it != kernels_.end())
                return it->second;
        }
        auto v = std::make_shared<const std::vector<Basket>>(find_kernels(cands, k, cap));
        std::lock_guard lock(mutex_);
        return kernels_.emplace(std::move(key), v).first->second;
    }

    /// Keyed by the subset gcds of W.
    std::shared_ptr<const Prepared> prepared(const std::vector<int>& gcds, SingularityClass cls, int k)
    {
        auto key = std::make_tuple(gcds, cls, k);
        {
            std::lock_guard lock(mutex_);
            auto it = prepared_.find(key);
            if (it != prepared_.end()) {
                lru_.splice(lru_.begin(), lru_, it->second.position);
                return it->second.value;
            }
        }
        auto p = std::make_shared<Prepared>();
        for (int r : gcds) {
            const auto& s = of_index(r, cls, k);
            p->candidates.insert(p->candidates.end(), s.begin(), s.end());
        }
        p->order = std::max(match_order(p->candidates, k), std::max(12, k));
        std::vector<const std::vector<Wide>*> columns;
        for (const auto& s : p->candidates) {
            p->entries.push_back(get(s, k, p->order));
            columns.push_back(&p->entries.back()->wide);
        }
        for (int j = 0; j <= p->order; ++j) {
            bool pos = false, neg = false;
            for (const auto* c : columns) {
                pos = pos || (*c)[static_cast<std::size_t>(j)] > 0;
                neg = neg || (*c)[static_cast<std::size_t>(j)] < 0;
            }
            p->sign.push_back(static_cast<signed char>(!pos && !neg ? 2 : (pos && neg ? 0 : (pos ? 1 : -1))));
        }
        p->solver = detail::ModularSolver(columns, static_cast<std::size_t>(p->order) + 1);
        // Dominated by the dense inverse.
        const std::size_t n = p->candidates.size();
        const std::size_t bytes = 256 + n * (n + 4) * sizeof(std::uint64_t) + p->sign.size();

        std::lock_guard lock(mutex_);
        auto it = prepared_.find(key);
        if (it != prepared_.end())
            return it->second.value;
        // Wide searches meet many thousands of gcd sets; least recently used
        // entries go once the budget is spent.
        while (prepared_bytes_ + bytes > kPreparedBudget && !lru_.empty()) {
            auto victim = prepared_.find(lru_.back());
            prepared_bytes_ -= victim->second.bytes;
            prepared_.erase(victim);
            lru_.pop_back();
        }
        lru_.push_front(key);
        prepared_bytes_ += bytes;
        return prepared_.emplace(std::move(key), PreparedSlot{std::move(p), bytes, lru_.begin()}).first->second.value;
    }

private:
    using PreparedKey = std::tuple<std::vector<int>, SingularityClass, int>;
    struct PreparedSlot {
        std::shared_ptr<const Prepared> value;
        std::size_t bytes;
        std::list<PreparedKey>::iterator position;
    };
    static constexpr std::size_t kPreparedBudget = std::size_t{1} << 30;

    std::mutex mutex_;
    std::map<std::pair<QuotientSingularity, int>, std::shared_ptr<const OrbEntry>> entries_;
    std::map<PreparedKey, PreparedSlot> prepared_;
    std::list<PreparedKey> lru_;
    std::size_t prepared_bytes_ = 0;
    std::map<std::tuple<int, SingularityClass, int>, std::vector<QuotientSingularity>> by_index_;
    std::map<std::tuple<std::vector<QuotientSingularity>, int, int>, std::shared_ptr<const std::vector<Basket>>>
        kernels_;
};

int sign_of(const Integer& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

} // namespace

std::vector<QuotientSingularity> candidate_singularities(const std::vector<int>& W, SingularityClass cls, int k)
{
    std::vector<QuotientSingularity> out;
    for (int r : subset_gcds(W)) {
        const auto& s = OrbCache::instance().of_index(r, cls, k);
        out.insert(out.end(), s.begin(), s.end());
    }
    return out;
}

namespace {

MatchResult match_prefix(const CycloRational& residual, const std::vector<Integer>& target,
                         const std::vector<QuotientSingularity>& candidates, int k, const MatchOptions& options)
{
    MatchResult result;
    const int order = static_cast<int>(target.size()) - 1;
    std::vector<std::shared_ptr<const OrbEntry>> entries;
    std::vector<std::vector<Integer>> columns;
    for (const auto& s : candidates) {
        entries.push_back(OrbCache::instance().get(s, k, order));
        const auto& p = entries.back()->prefix;
        columns.emplace_back(p.begin(), p.begin() + order + 1);
    }

    // A degree where every contribution has the same strict sign bounds the
    // total multiplicity and rules out kernels.
    int bound = options.basket_cap;
    bool definite = false;
    for (int j = 0; j <= order && !candidates.empty(); ++j) {
        const int sg = sign_of(columns[0][static_cast<std::size_t>(j)]);
        if (sg == 0)
            continue;
        Integer min_abs = abs(columns[0][static_cast<std::size_t>(j)]);
        bool same = true;
        for (const auto& c : columns) {
            if (sign_of(c[static_cast<std::size_t>(j)]) != sg) {
                same = false;
                break;
            }
            min_abs = std::min(min_abs, Integer(abs(c[static_cast<std::size_t>(j)])));
        }
        if (!same)
            continue;
        definite = true;
        const Integer& t = target[static_cast<std::size_t>(j)];
        if (sign_of(t) == -sg)
            return result;
        bound = static_cast<int>(std::min<Integer>(abs(t) / min_abs, 1 << 20));
        break;
    }

    if (!definite && !candidates.empty())
        result.kernels = *OrbCache::instance().kernels(candidates, k, options.kernel_cap);

    std::vector<std::vector<int>> kernel_vectors;
    for (const auto& kb : result.kernels) {
        std::vector<int> v(candidates.size(), 0);
        for (const auto& [s, m] : kb.entries())
            v[static_cast<std::size_t>(std::find(candidates.begin(), candidates.end(), s) - candidates.begin())] = m;
        kernel_vectors.push_back(std::move(v));
    }

    auto solutions = candidates.empty() ? std::vector<std::vector<int>>{} : detail::nonneg_solutions(columns, target, bound);
    if (candidates.empty() && std::all_of(target.begin(), target.end(), [](const Integer& x) { return x == 0; }))
        solutions.push_back({});

    for (const auto& x : solutions) {
        const bool has_kernel = std::any_of(kernel_vectors.begin(), kernel_vectors.end(), [&](const auto& v) {
            for (std::size_t i = 0; i < v.size(); ++i)
                if (v[i] > x[i])
                    return false;
            return true;
        });
        if (has_kernel)
            continue;
        std::vector<Basket::Entry> items;
        CycloRational sum(IntPoly{}, {1, 1, 1});
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] == 0)
                continue;
            items.emplace_back(candidates[i], x[i]);
            sum = sum + entries[i]->contribution.series * Integer(x[i]);
        }
        if (rational_equal(sum, residual))
            result.baskets.emplace_back(std::move(items));
    }
    std::sort(result.baskets.begin(), result.baskets.end());
    result.baskets.erase(std::unique(result.baskets.begin(), result.baskets.end()), result.baskets.end());
    return result;
}

int match_order(const std::vector<QuotientSingularity>& candidates, int k)
{
    int max_r = 2;
    for (const auto& s : candidates)
        max_r = std::max(max_r, s.index());
    return porb_window(max_r, k).first + 2 * max_r + 6;
}

} // namespace

MatchResult match_baskets(const CycloRational& residual, const std::vector<QuotientSingularity>& candidates, int k,
                          const MatchOptions& options)
{
    const int order = match_order(candidates, k);
    return match_prefix(residual, expand(residual, order).coefficients, candidates, k, options);
}

// ---------------------------------------------------------------------------
// Realisability heuristics

namespace {

/// member[x] for 0 <= x <= limit: x is a nonnegative combination of gens.
std::vector<char> semigroup(const std::vector<int>& gens, int limit)
{
    std::vector<char> member(static_cast<std::size_t>(limit) + 1, 0);
    member[0] = 1;
    for (int x = 1; x <= limit; ++x)
        for (int g : gens)
            if (g <= x && member[static_cast<std::size_t>(x - g)]) {
                member[static_cast<std::size_t>(x)] = 1;
                break;
            }
    return member;
}

struct Stratum {
    int g;
    std::vector<int> inside;  // indices into W with g | a
    std::vector<int> outside;
    std::vector<int> nonvanishing;  // equations not identically zero on the stratum
    std::vector<int> vanishing;
    /// Points of X on the stratum when it is a point or a line and not
    /// contained in X; -1 otherwise.
    int points = -1;
};

class FlagContext {
public:
    explicit FlagContext(const CandidateRecord& rec) : rec_(rec), f_(rec.format), W_(rec.ambient_weights)
    {
        limit_ = std::max(f_.adjunction, *std::max_element(f_.key_weights.begin(), f_.key_weights.end())) + 1;
        for (int g : subset_gcds(W_))
            strata_.push_back(make_stratum(g));
    }

    bool well_formed() const
    {
        // P(W) well formed: any n - 1 weights are coprime.
        for (std::size_t i = 0; i < W_.size(); ++i) {
            int g = 0;
            for (std::size_t j = 0; j < W_.size(); ++j)
                if (j != i)
                    g = std::gcd(g, W_[j]);
            if (g != 1)
                return false;
        }
        // X meets each orbifold stratum in codimension at least two.
        for (const auto& s : strata_)
            if (expected_dim(s) > rec_.dim - 2)
                return false;
        return true;
    }

    bool variable_usage() const
    {
        const auto member = semigroup(W_, limit_);
        for (int a : W_) {
            bool used = false;
            for (int chi : f_.key_weights)
                if (chi >= a && member[static_cast<std::size_t>(chi - a)]) {
                    used = true;
                    break;
                }
            if (!used)
                return false;
        }
        return true;
    }

    bool tangent_monomial() const
    {
        for (const auto& s : strata_) {
            if (expected_dim(s) < 0)
                continue;
            const int needed = f_.codim - std::min<int>(static_cast<int>(s.nonvanishing.size()), f_.codim);
            if (needed == 0)
                continue;
            // Bipartite matching: vanishing equation -> outside variable it
            // is linear in.
            const auto member = stratum_semigroup(s);
            std::vector<std::vector<int>> adj;
            for (int e : s.vanishing) {
                std::vector<int> vars;
                for (std::size_t o = 0; o < s.outside.size(); ++o)
                    if (has_tangent_term(e, W_[static_cast<std::size_t>(s.outside[o])], member))
                        vars.push_back(static_cast<int>(o));
                adj.push_back(std::move(vars));
            }
            if (matching_size(adj, static_cast<int>(s.outside.size())) < needed)
                return false;
        }
        return true;
    }

    bool index_capacity() const
    {
        if (rec_.baskets.empty())
            return true;
        for (const auto& b : rec_.baskets)
            if (basket_fits(b))
                return true;
        return false;
    }

private:
    Stratum make_stratum(int g) const
    {
        Stratum s{g, {}, {}, {}, {}, -1};
        for (std::size_t i = 0; i < W_.size(); ++i)
            (W_[i] % g == 0 ? s.inside : s.outside).push_back(static_cast<int>(i));
        const auto member = stratum_semigroup(s);
        for (std::size_t e = 0; e < f_.equations.size(); ++e) {
            bool nonzero = false;
            for (const auto& term : f_.equations[e]) {
                bool all = true;
                for (int v : term)
                    if (!member[static_cast<std::size_t>(f_.key_weights[static_cast<std::size_t>(v)])])
                        all = false;
                if (all) {
                    nonzero = true;
                    break;
                }
            }
            (nonzero ? s.nonvanishing : s.vanishing).push_back(static_cast<int>(e));
        }
        if (s.inside.size() <= 2) {
            std::vector<int> weights;
            for (int i : s.inside)
                weights.push_back(W_[static_cast<std::size_t>(i)]);
            s.points = detail::stratum_points(f_, weights);
        }
        return s;
    }

    std::vector<char> stratum_semigroup(const Stratum& s) const
    {
        std::vector<int> gens;
        for (int i : s.inside)
            gens.push_back(W_[static_cast<std::size_t>(i)]);
        return semigroup(gens, limit_);
    }

    int expected_dim(const Stratum& s) const
    {
        return static_cast<int>(s.inside.size()) - 1 -
               std::min<int>(static_cast<int>(s.nonvanishing.size()), f_.codim);
    }

    /// Some term of equation e is a unit on the stratum times one key
    /// variable that is linear in a variable of weight a.
    bool has_tangent_term(int e, int a, const std::vector<char>& member) const
    {
        for (const auto& term : f_.equations[static_cast<std::size_t>(e)]) {
            for (std::size_t lin = 0; lin < term.size(); ++lin) {
                bool ok = true;
                for (std::size_t v = 0; v < term.size() && ok; ++v) {
                    const int chi = f_.key_weights[static_cast<std::size_t>(term[v])];
                    if (v == lin)
                        ok = chi >= a && member[static_cast<std::size_t>(chi - a)];
                    else
                        ok = member[static_cast<std::size_t>(chi)];
                }
                if (ok)
                    return true;
            }
        }
        return false;
    }

    static int matching_size(const std::vector<std::vector<int>>& adj, int right)
    {
        std::vector<int> owner(static_cast<std::size_t>(right), -1);
        int size = 0;
        for (std::size_t l = 0; l < adj.size(); ++l) {
            std::vector<char> seen(static_cast<std::size_t>(right), 0);
            if (augment(static_cast<int>(l), adj, owner, seen))
                ++size;
        }
        return size;
    }

    static bool augment(int l, const std::vector<std::vector<int>>& adj, std::vector<int>& owner,
                        std::vector<char>& seen)
    {
        for (int r : adj[static_cast<std::size_t>(l)]) {
            if (seen[static_cast<std::size_t>(r)])
                continue;
            seen[static_cast<std::size_t>(r)] = 1;
            if (owner[static_cast<std::size_t>(r)] < 0 ||
                augment(owner[static_cast<std::size_t>(r)], adj, owner, seen)) {
                owner[static_cast<std::size_t>(r)] = l;
                return true;
            }
        }
        return false;
    }

    bool basket_fits(const Basket& b) const
    {
        for (const auto& s : strata_) {
            if (s.points < 0)
                continue;
            int needed = 0;
            for (const auto& [q, m] : b.entries())
                if (q.index() % s.g == 0)
                    needed += m;
            if (needed != s.points)
                return false;
        }
        return true;
    }

    const CandidateRecord& rec_;
    const FormatInstance& f_;
    const std::vector<int>& W_;
    int limit_;
    std::vector<Stratum> strata_;
};

} // namespace

RealisabilityFlags realisability_flags(const CandidateRecord& rec)
{
    FlagContext ctx(rec);
    RealisabilityFlags flags;
    flags.well_formed = ctx.well_formed();
    flags.variable_usage = ctx.variable_usage();
    flags.tangent_monomial = ctx.tangent_monomial();
    flags.index_capacity = ctx.index_capacity();
    return flags;
}

// ---------------------------------------------------------------------------
// Pipeline

namespace {

/// P_X - P_ini to the given order in machine integers.
std::vector<Wide> wide_target(const IntPoly& numerator, const std::vector<int>& W, int k, int order)
{
    const auto n = static_cast<std::size_t>(order) + 1;
    std::vector<Wide> p(n, 0);
    const auto& nc = numerator.coefficients();
    for (std::size_t i = 0; i < nc.size() && i < n; ++i)
        p[i] = static_cast<long long>(nc[i]);
    for (int a : W)
        for (std::size_t i = static_cast<std::size_t>(a); i < n; ++i)
            p[i] += p[i - static_cast<std::size_t>(a)];

    const int deg = k + 4;
    const int h = deg / 2;
    static const int binom4[5] = {1, -4, 6, -4, 1};
    std::vector<Wide> q(n, 0);
    for (int i = 0; i <= h; ++i) {
        Wide s = 0;
        for (int j = 0; j <= 4 && j <= i; ++j)
            s += binom4[j] * p[static_cast<std::size_t>(i - j)];
        q[static_cast<std::size_t>(i)] = s;
        if (static_cast<std::size_t>(deg - i) < n)
            q[static_cast<std::size_t>(deg - i)] = s;
    }
    for (int rep = 0; rep < 4; ++rep)
        for (std::size_t i = 1; i < n; ++i)
            q[i] += q[i - 1];
    for (std::size_t i = 0; i < n; ++i)
        p[i] -= q[i];
    return p;
}

} // namespace

std::optional<CandidateRecord> process_candidate(const FormatInstance& f, const std::vector<int>& W,
                                                 const SearchConfig& config)
{
    const int k = config.k;
    const SingularityClass cls = config.singularity_class();
    const auto prep = OrbCache::instance().prepared(subset_gcds(W), cls, k);
    const auto& candidates = prep->candidates;
    const int order = prep->order;

    // Cheap rejection in machine integers before any exact work.
    const std::vector<Wide> fast = wide_target(f.numerator, W, k, order);
    const bool zero = std::all_of(fast.begin(), fast.end(), [](Wide x) { return x == 0; });
    if (!zero) {
        if (candidates.empty())
            return std::nullopt;
        for (std::size_t j = 0; j < fast.size(); ++j) {
            const int sg = prep->sign[j];
            if ((sg == 2 && fast[j] != 0) || (sg == 1 && fast[j] < 0) || (sg == -1 && fast[j] > 0))
                return std::nullopt;
        }
        if (prep->solver.solve(fast, 1 << 20) == detail::FastVerdict::None)
            return std::nullopt;
    }

    CycloRational px = hilbert_series(f, W);
    const SeriesPrefix p = expand(px, order);
    IntPoly qini = initial_numerator(p, k);
    CycloRational pini(qini, {1, 1, 1, 1});
    const SeriesPrefix pi = expand(pini, order);
    std::vector<Integer> target(static_cast<std::size_t>(order) + 1);
    for (int i = 0; i <= order; ++i)
        target[static_cast<std::size_t>(i)] = p[i] - pi[i];

    CycloRational residual = px - pini;
    MatchResult match =
        match_prefix(residual, target, candidates, k, MatchOptions{config.basket_cap, config.kernel_cap});
    if (match.baskets.empty())
        return std::nullopt;

    CandidateRecord rec;
    rec.format = f;
    rec.dim = config.dim;
    rec.k = k;
    rec.ambient_weights = W;
    rec.hilbert = std::move(px);
    rec.initial = std::move(pini);
    rec.residual = std::move(residual);
    rec.baskets = std::move(match.baskets);
    rec.kernels = std::move(match.kernels);
    rec.chi = chi_O(rec.hilbert, k);
    rec.A3 = degree_A3(rec.hilbert);
    rec.K3 = rec.A3 * k * k * k;
    for (const auto& b : rec.baskets) {
        if (b.all_terminal())
            rec.Kc2.emplace_back(Kc2(b, rec.chi));
        else
            rec.Kc2.emplace_back(std::nullopt);
    }
    if (k == 1 && rec.baskets.front().all_terminal()) {
        const Basket& b = rec.baskets.front();
        K3_from_plurigenus(rec.hilbert, b, k);
        rec.plurigenera = plurigenera(rec.chi, rec.K3, b, 12);
        for (int m = 1; m <= 12; ++m)
            if (rec.plurigenera[static_cast<std::size_t>(m - 1)] != p[m])
                throw InconsistencyError("plurigenus P_" + std::to_string(m) + " disagrees with the Hilbert series");
    }
    rec.flags = realisability_flags(rec);
    return rec;
}

namespace {

bool degrees_allowed(const FormatInstance& f, const SearchConfig& config)
{
    if (config.ci_degrees.empty())
        return true;
    auto wanted = config.ci_degrees;
    std::sort(wanted.begin(), wanted.end());
    const std::size_t n = wanted.size();
    if (f.params.size() < n)
        return false;
    std::vector<int> tail(f.params.end() - static_cast<long>(n), f.params.end());
    std::sort(tail.begin(), tail.end());
    return tail == wanted;
}

} // namespace

SearchResult run_search(const SearchConfig& config)
{
    config.validate();
    const auto start = std::chrono::steady_clock::now();

    GradingOptions gopt;
    gopt.dim = config.dim;
    gopt.ci_codim = config.ci_codim;
    gopt.allow_zero_key_weights = config.allow_zero_key_weights;
    std::vector<FormatInstance> formats;
    for (int deg = config.min_adjunction; deg <= config.max_adjunction; ++deg) {
        for (int kv : adjunctions_of_search_degree(config.family, deg)) {
            for (auto& f : enumerate_gradings(config.family, kv, gopt))
                if (degrees_allowed(f, config))
                    formats.push_back(std::move(f));
        }
    }

    std::vector<std::vector<CandidateRecord>> per_format(formats.size());
    std::vector<std::size_t> weight_counts(formats.size(), 0);
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    WeightConstraints wc{config.min_weight, true};

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= formats.size())
                return;
            try {
                for_each_ambient_weights(formats[i], config.dim, config.k, wc, [&](const std::vector<int>& W) {
                    ++weight_counts[i];
                    if (auto rec = process_candidate(formats[i], W, config))
                        per_format[i].push_back(std::move(*rec));
                });
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next = formats.size();
                return;
            }
        }
    };
    const int jobs = std::max(1, std::min<int>(config.jobs, static_cast<int>(std::max<std::size_t>(formats.size(), 1))));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (int t = 0; t < jobs; ++t)
            threads.emplace_back(worker);
        for (auto& t : threads)
            t.join();
    }
    if (error)
        std::rethrow_exception(error);

    SearchResult result;
    for (auto& v : per_format)
        for (auto& r : v)
            result.records.push_back(std::move(r));
    std::stable_sort(result.records.begin(), result.records.end(), [](const auto& a, const auto& b) {
        return std::tie(a.format.adjunction, a.format.params, a.ambient_weights) <
               std::tie(b.format.adjunction, b.format.params, b.ambient_weights);
    });

    RunReport& rep = result.report;
    rep.config = config;
    rep.gradings = formats.size();
    rep.weight_vectors = std::accumulate(weight_counts.begin(), weight_counts.end(), std::size_t{0});
    rep.records = result.records.size();
    rep.k_max = config.max_adjunction;
    for (const auto& r : result.records) {
        rep.k_last = std::max(rep.k_last, search_degree(r.format));
        rep.all_flags_pass += r.flags.all();
        rep.fail_well_formed += !r.flags.well_formed;
        rep.fail_variable_usage += !r.flags.variable_usage;
        rep.fail_tangent_monomial += !r.flags.tangent_monomial;
        rep.fail_index_capacity += !r.flags.index_capacity;
    }
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

} // namespace grdb
