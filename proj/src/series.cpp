#include "grdb/series.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace grdb {

IntPoly::IntPoly(std::initializer_list<long long> coeffs)
{
    coeffs_.reserve(coeffs.size());
    for (long long c : coeffs)
        coeffs_.emplace_back(c);
    trim();
}

IntPoly::IntPoly(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly IntPoly::monomial(int exponent, const Integer& coeff)
{
    if (exponent < 0)
        throw InvalidInput("negative exponent");
    std::vector<Integer> c(static_cast<std::size_t>(exponent) + 1);
    c.back() = coeff;
    return IntPoly(std::move(c));
}

IntPoly IntPoly::geometric(int n)
{
    if (n < 0)
        throw InvalidInput("negative length");
    return IntPoly(std::vector<Integer>(static_cast<std::size_t>(n), Integer(1)));
}

IntPoly IntPoly::one_minus_t_pow(int e)
{
    if (e < 1)
        throw InvalidInput("exponent of (1 - t^e) must be positive");
    std::vector<Integer> c(static_cast<std::size_t>(e) + 1);
    c.front() = 1;
    c.back() = -1;
    return IntPoly(std::move(c));
}

void IntPoly::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

Integer IntPoly::coeff(int i) const
{
    if (i < 0 || i > degree())
        return 0;
    return coeffs_[static_cast<std::size_t>(i)];
}

int IntPoly::valuation() const
{
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0)
            return static_cast<int>(i);
    return -1;
}

Integer IntPoly::evaluate_at_one() const
{
    Integer s = 0;
    for (const auto& c : coeffs_)
        s += c;
    return s;
}

IntPoly IntPoly::divide_by_one_minus_t() const
{
    if (is_zero())
        return {};
    // p = (1 - t) q  <=>  q_i = p_0 + ... + p_i.
    std::vector<Integer> q(coeffs_.size() - 1);
    Integer running = 0;
    for (std::size_t i = 0; i + 1 < coeffs_.size(); ++i) {
        running += coeffs_[i];
        q[i] = running;
    }
    if (running + coeffs_.back() != 0)
        throw InvalidInput("polynomial is not divisible by (1 - t)");
    return IntPoly(std::move(q));
}

int IntPoly::order_at_one() const
{
    if (is_zero())
        throw InvalidInput("zero polynomial has infinite order at t = 1");
    int m = 0;
    IntPoly p = *this;
    while (p.evaluate_at_one() == 0) {
        p = p.divide_by_one_minus_t();
        ++m;
    }
    return m;
}

IntPoly IntPoly::shifted(int e) const
{
    if (is_zero())
        return {};
    if (e < 0)
        throw InvalidInput("negative shift");
    std::vector<Integer> c(static_cast<std::size_t>(e), Integer(0));
    c.insert(c.end(), coeffs_.begin(), coeffs_.end());
    return IntPoly(std::move(c));
}

IntPoly IntPoly::operator-() const
{
    IntPoly r = *this;
    for (auto& c : r.coeffs_)
        c = -c;
    return r;
}

IntPoly& IntPoly::operator+=(const IntPoly& other)
{
    if (other.coeffs_.size() > coeffs_.size())
        coeffs_.resize(other.coeffs_.size());
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i)
        coeffs_[i] += other.coeffs_[i];
    trim();
    return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& other)
{
    if (other.coeffs_.size() > coeffs_.size())
        coeffs_.resize(other.coeffs_.size());
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i)
        coeffs_[i] -= other.coeffs_[i];
    trim();
    return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<Integer> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return IntPoly(std::move(c));
}

IntPoly& IntPoly::operator*=(const IntPoly& other) { return *this = *this * other; }

IntPoly& IntPoly::operator*=(const Integer& scalar)
{
    for (auto& c : coeffs_)
        c *= scalar;
    trim();
    return *this;
}

std::string IntPoly::to_string() const
{
    if (is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const Integer& c = coeffs_[i];
        if (c == 0)
            continue;
        Integer mag = c < 0 ? Integer(-c) : c;
        if (c < 0)
            os << '-';
        else if (!first)
            os << '+';
        if (i == 0 || mag != 1)
            os << mag;
        if (i >= 1)
            os << 't';
        if (i >= 2)
            os << '^' << i;
        first = false;
    }
    return os.str();
}

// ---------------------------------------------------------------------------

CycloRational::CycloRational(IntPoly numerator, std::vector<int> denominator_exponents)
    : numerator_(std::move(numerator)), denominator_(std::move(denominator_exponents))
{
    for (int e : denominator_)
        if (e < 1)
            throw InvalidInput("denominator exponent must be at least 1");
    std::sort(denominator_.begin(), denominator_.end());
}

IntPoly CycloRational::denominator_polynomial() const
{
    IntPoly d{1};
    for (int e : denominator_)
        d *= IntPoly::one_minus_t_pow(e);
    return d;
}

std::vector<int> denominator_union(const std::vector<int>& a, const std::vector<int>& b)
{
    std::vector<int> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

IntPoly CycloRational::numerator_over(const std::vector<int>& common) const
{
    std::vector<int> extra;
    std::set_difference(common.begin(), common.end(), denominator_.begin(), denominator_.end(),
                        std::back_inserter(extra));
    if (extra.size() + denominator_.size() != common.size())
        throw InvalidInput("target denominator does not contain this denominator");
    IntPoly n = numerator_;
    for (int e : extra)
        n *= IntPoly::one_minus_t_pow(e);
    return n;
}

CycloRational CycloRational::operator-() const { return CycloRational(-numerator_, denominator_); }

CycloRational operator+(const CycloRational& a, const CycloRational& b)
{
    auto common = denominator_union(a.denominator_, b.denominator_);
    return CycloRational(a.numerator_over(common) + b.numerator_over(common), common);
}

CycloRational operator-(const CycloRational& a, const CycloRational& b) { return a + (-b); }

CycloRational operator*(const CycloRational& a, const Integer& s)
{
    return CycloRational(a.numerator_ * s, a.denominator_);
}

int CycloRational::pole_order_at_one() const
{
    if (numerator_.is_zero())
        throw InvalidInput("zero function has no pole order");
    return static_cast<int>(denominator_.size()) - numerator_.order_at_one();
}

SeriesPrefix expand(const CycloRational& f, int order)
{
    if (order < 0)
        throw InvalidInput("truncation order must be nonnegative");
    std::vector<Integer> s(static_cast<std::size_t>(order) + 1);
    const auto& num = f.numerator().coefficients();
    for (std::size_t i = 0; i < num.size() && i < s.size(); ++i)
        s[i] = num[i];
    // Division by (1 - t^e) is the running sum with stride e.
    for (int e : f.denominator_exponents())
        for (std::size_t i = static_cast<std::size_t>(e); i < s.size(); ++i)
            s[i] += s[i - static_cast<std::size_t>(e)];
    return SeriesPrefix{std::move(s)};
}

bool rational_equal(const CycloRational& f, const CycloRational& g)
{
    auto common = denominator_union(f.denominator_exponents(), g.denominator_exponents());
    return f.numerator_over(common) == g.numerator_over(common);
}

IntPoly reduce_mod_A(const IntPoly& p, int r, int lo, int hi)
{
    if (r < 2)
        throw InvalidInput("reduce_mod_A needs r > 1");
    if (hi - lo != r - 2)
        throw InvalidInput("window [lo, hi] must span r - 1 exponents");
    if (lo < 0)
        throw InvalidInput("window must start at a nonnegative exponent");
    // t^r == 1 modulo A_r, so fold onto the r exponents lo..lo+r-1, then
    // remove t^(lo+r-1) with t^lo * A_r == 0.
    std::vector<Integer> cyc(static_cast<std::size_t>(r));
    const auto& c = p.coefficients();
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0)
            cyc[static_cast<std::size_t>(mod_floor(static_cast<long long>(i) - lo, r))] += c[i];
    const Integer top = cyc.back();
    std::vector<Integer> out(static_cast<std::size_t>(hi) + 1);
    for (int j = 0; j + 1 < r; ++j)
        out[static_cast<std::size_t>(lo + j)] = cyc[static_cast<std::size_t>(j)] - top;
    return IntPoly(std::move(out));
}

bool is_gorenstein_symmetric(const IntPoly& numerator, int k, int c)
{
    if (numerator.degree() > k || k < 0)
        return numerator.is_zero();
    const int sign = (c % 2 == 0) ? 1 : -1;
    for (int i = 0; i <= k; ++i)
        if (numerator.coeff(k - i) != numerator.coeff(i) * sign)
            return false;
    return true;
}

namespace {

int mobius(int n)
{
    int result = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p != 0)
            continue;
        n /= p;
        if (n % p == 0)
            return 0;
        result = -result;
    }
    if (n > 1)
        result = -result;
    return result;
}

/// Quotient of p by the monic polynomial q, or nullopt-equivalent flag if
/// the remainder is nonzero.
bool divide_monic(const IntPoly& p, const IntPoly& q, IntPoly& quotient)
{
    const int dp = p.degree(), dq = q.degree();
    if (dp < dq) {
        quotient = {};
        return p.is_zero();
    }
    std::vector<Integer> rem = p.coefficients();
    std::vector<Integer> quo(static_cast<std::size_t>(dp - dq) + 1);
    const auto& qc = q.coefficients();
    for (int i = dp - dq; i >= 0; --i) {
        const Integer lead = rem[static_cast<std::size_t>(i + dq)];
        quo[static_cast<std::size_t>(i)] = lead;
        if (lead == 0)
            continue;
        for (int j = 0; j <= dq; ++j)
            rem[static_cast<std::size_t>(i + j)] -= lead * qc[static_cast<std::size_t>(j)];
    }
    for (const auto& x : rem)
        if (x != 0)
            return false;
    quotient = IntPoly(std::move(quo));
    return true;
}

} // namespace

IntPoly cyclotomic(int d)
{
    if (d < 1)
        throw InvalidInput("cyclotomic index must be positive");
    static std::mutex mutex;
    static std::map<int, IntPoly> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(d); it != cache.end())
            return it->second;
    }
    IntPoly result;
    if (d == 1) {
        result = IntPoly{-1, 1};
    } else {
        // Phi_d = prod_{e | d} (1 - t^e)^mu(d/e); the signs cancel for d > 1.
        IntPoly num{1};
        std::vector<int> den;
        for (int e = 1; e <= d; ++e) {
            if (d % e != 0)
                continue;
            const int mu = mobius(d / e);
            if (mu == 1)
                num *= IntPoly::one_minus_t_pow(e);
            else if (mu == -1)
                den.push_back(e);
        }
        result = IntPoly(expand(CycloRational(num, den), num.degree()).coefficients);
    }
    std::lock_guard lock(mutex);
    return cache.emplace(d, std::move(result)).first->second;
}

int cyclotomic_multiplicity(const IntPoly& p, int d)
{
    if (p.is_zero())
        throw InvalidInput("zero polynomial has infinite multiplicity");
    const IntPoly phi = cyclotomic(d);
    int m = 0;
    IntPoly cur = p, next;
    while (divide_monic(cur, phi, next)) {
        cur = std::move(next);
        ++m;
    }
    return m;
}

} // namespace grdb
