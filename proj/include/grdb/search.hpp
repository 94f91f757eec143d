#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "grdb/basket.hpp"
#include "grdb/formats.hpp"
#include "grdb/orbifold.hpp"
#include "grdb/series.hpp"

namespace grdb {

struct SearchConfig {
    int dim = 3;
    /// K_X = k A.
    int k = 1;
    Family family = Family::GR25;
    /// Number of equations for CI, or of hypersurfaces for GR25xCI.
    int ci_codim = 1;
    /// When nonempty, only these degrees for the complete intersection part.
    std::vector<int> ci_degrees;
    int min_adjunction = 1;
    int max_adjunction = 40;
    /// Unset means terminal for k != 0 and canonical-isolated for k = 0.
    std::optional<SingularityClass> sing_class;
    int basket_cap = 24;
    int kernel_cap = 12;
    int min_weight = 1;
    int jobs = 1;
    bool allow_zero_key_weights = false;

    SingularityClass singularity_class() const;
    /// Throws InvalidInput on an unusable configuration.
    void validate() const;
};

struct WeightConstraints {
    int min_weight = 1;
    /// Drop W whose Hilbert series has a pole of order two or more at some
    /// root of unity other than 1; such series cannot be matched by
    /// isolated points.
    bool prune_poles = false;
};

using WeightVisitor = std::function<void(const std::vector<int>&)>;

/// Calls visit on each weight list enumerate_ambient_weights would return,
/// in the same order, without storing them.
void for_each_ambient_weights(const FormatInstance& f, int dim, int k, const WeightConstraints& constraints,
                              const WeightVisitor& visit);

/// Ascending weight lists of length dim + codim + 1 with sum k_V - k,
/// entries in [min_weight, chi_max] and no common factor.
std::vector<std::vector<int>> enumerate_ambient_weights(const FormatInstance& f, int dim, int k,
                                                        const WeightConstraints& constraints = {});

/// numerator(f) / prod_{a in W} (1 - t^a).
CycloRational hilbert_series(const FormatInstance& f, const std::vector<int>& W);

/// The palindromic numerator of degree k + 4 over (1 - t)^4 agreeing with
/// the series in degrees up to floor((k+4)/2).
CycloRational initial_series(const CycloRational& hilbert, int dim, int k);

/// Every point of the class compatible with k whose index is the gcd of
/// some subset of W.
std::vector<QuotientSingularity> candidate_singularities(const std::vector<int>& W, SingularityClass cls, int k);

struct MatchOptions {
    int basket_cap = 24;
    int kernel_cap = 12;
};

struct MatchResult {
    std::vector<Basket> baskets;
    std::vector<Basket> kernels;
};

/// All baskets of candidates whose contributions sum to the residual exactly.
/// Baskets containing a kernel are left out; kernels are listed separately.
MatchResult match_baskets(const CycloRational& residual, const std::vector<QuotientSingularity>& candidates, int k,
                          const MatchOptions& options = {});

struct RealisabilityFlags {
    bool well_formed = true;
    bool variable_usage = true;
    bool tangent_monomial = true;
    bool index_capacity = true;

    bool all() const { return well_formed && variable_usage && tangent_monomial && index_capacity; }
};

struct CandidateRecord {
    FormatInstance format;
    int dim = 3;
    int k = 1;
    std::vector<int> ambient_weights;
    CycloRational hilbert;
    CycloRational initial;
    CycloRational residual;
    std::vector<Basket> baskets;
    std::vector<Basket> kernels;
    Integer chi;
    Rational A3;
    Rational K3;
    /// Parallel to baskets; only set for terminal baskets.
    std::vector<std::optional<Rational>> Kc2;
    /// P_1.. from the plurigenus formula (k = 1 and a terminal basket).
    std::vector<Integer> plurigenera;
    RealisabilityFlags flags;
};

RealisabilityFlags realisability_flags(const CandidateRecord& rec);

/// Runs the pipeline for one (format, W) pair; empty when no basket fits.
std::optional<CandidateRecord> process_candidate(const FormatInstance& f, const std::vector<int>& W,
                                                 const SearchConfig& config);

struct RunReport {
    SearchConfig config;
    std::size_t gradings = 0;
    std::size_t weight_vectors = 0;
    std::size_t records = 0;
    std::size_t all_flags_pass = 0;
    std::size_t fail_well_formed = 0;
    std::size_t fail_variable_usage = 0;
    std::size_t fail_tangent_monomial = 0;
    std::size_t fail_index_capacity = 0;
    /// Largest adjunction number with a record; 0 when there is none.
    int k_last = 0;
    int k_max = 0;
    double wall_seconds = 0;
};

struct SearchResult {
    std::vector<CandidateRecord> records;
    RunReport report;
};

/// Searches adjunction numbers min..max in order. Records come out sorted
/// by (adjunction, grading, W) whatever the number of workers.
SearchResult run_search(const SearchConfig& config);

} // namespace grdb
