#pragma once

// Exact arithmetic on integer polynomials and on rational functions whose
// denominators are products of cyclotomic-type factors (1 - t^e).

#include <initializer_list>
#include <string>
#include <vector>

#include "grdb/arith.hpp"

namespace grdb {

/// Dense univariate polynomial over Z. The zero polynomial has no
/// coefficients; otherwise the last stored coefficient is nonzero.
class IntPoly {
public:
    IntPoly() = default;
    IntPoly(std::initializer_list<long long> coeffs);
    explicit IntPoly(std::vector<Integer> coeffs);

    static IntPoly monomial(int exponent, const Integer& coeff = 1);
    /// 1 + t + ... + t^(n-1).
    static IntPoly geometric(int n);
    /// 1 - t^e.
    static IntPoly one_minus_t_pow(int e);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    /// Coefficient of t^i; zero outside the stored range.
    Integer coeff(int i) const;
    const std::vector<Integer>& coefficients() const { return coeffs_; }

    /// Lowest exponent with a nonzero coefficient, or -1 for zero.
    int valuation() const;

    Integer evaluate_at_one() const;
    /// Exact quotient by (1 - t); throws InvalidInput if p(1) != 0.
    IntPoly divide_by_one_minus_t() const;
    /// Largest m with (1 - t)^m dividing this polynomial (zero: throws).
    int order_at_one() const;

    IntPoly shifted(int e) const;
    IntPoly operator-() const;
    IntPoly& operator+=(const IntPoly& other);
    IntPoly& operator-=(const IntPoly& other);
    IntPoly& operator*=(const IntPoly& other);
    IntPoly& operator*=(const Integer& scalar);

    friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
    friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(IntPoly a, const Integer& s) { return a *= s; }
    friend bool operator==(const IntPoly&, const IntPoly&) = default;

    /// Compact form such as "1-4t^3+4t^5-t^8"; "0" for the zero polynomial.
    std::string to_string() const;

private:
    void trim();
    std::vector<Integer> coeffs_;
};

/// Coefficients 0..D of a power series.
struct SeriesPrefix {
    std::vector<Integer> coefficients;

    int truncation_order() const { return static_cast<int>(coefficients.size()) - 1; }
    const Integer& operator[](int i) const { return coefficients[static_cast<std::size_t>(i)]; }
    friend bool operator==(const SeriesPrefix&, const SeriesPrefix&) = default;
};

/// numerator / prod_{e in denominator} (1 - t^e).
class CycloRational {
public:
    CycloRational() = default;
    /// Throws InvalidInput if some exponent is < 1.
    CycloRational(IntPoly numerator, std::vector<int> denominator_exponents);

    const IntPoly& numerator() const { return numerator_; }
    /// Sorted ascending; a multiset.
    const std::vector<int>& denominator_exponents() const { return denominator_; }
    IntPoly denominator_polynomial() const;

    /// Expresses this value over a denominator multiset that contains ours.
    IntPoly numerator_over(const std::vector<int>& common) const;

    CycloRational operator-() const;
    friend CycloRational operator+(const CycloRational& a, const CycloRational& b);
    friend CycloRational operator-(const CycloRational& a, const CycloRational& b);
    friend CycloRational operator*(const CycloRational& a, const Integer& s);

    /// Order of the pole at t = 1 (negative for a zero there).
    int pole_order_at_one() const;

private:
    IntPoly numerator_;
    std::vector<int> denominator_;
};

/// Taylor coefficients 0..order of f.
SeriesPrefix expand(const CycloRational& f, int order);

/// Exact equality of rational functions by cross-multiplication over the
/// multiset union of the two denominators.
bool rational_equal(const CycloRational& f, const CycloRational& g);

/// Multiset union with maximal multiplicities; a common multiple of both.
std::vector<int> denominator_union(const std::vector<int>& a, const std::vector<int>& b);

/// The unique polynomial supported on [lo, hi] congruent to p modulo
/// A_r = (1 - t^r)/(1 - t). Requires r > 1 and hi - lo = r - 2.
IntPoly reduce_mod_A(const IntPoly& p, int r, int lo, int hi);

/// t^k N(1/t) == (-1)^c N(t).
bool is_gorenstein_symmetric(const IntPoly& numerator, int k, int c);

/// Cyclotomic polynomial Phi_d.
IntPoly cyclotomic(int d);

/// Multiplicity of Phi_d as a factor of p (p nonzero).
int cyclotomic_multiplicity(const IntPoly& p, int d);

} // namespace grdb
