#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "subriem/spectra/spectrum.hpp"

namespace subriem::spectra {

/// Nonzero |mu| values with cumulative multiplicity, for repeated counting queries.
class CountingIndex {
public:
    explicit CountingIndex(const SpectrumTable& table);

    /// Number of eigenvalues with 0 < |mu| <= t, with multiplicity.
    std::uint64_t count(double t) const;
    double largest() const { return values_.empty() ? 0.0 : values_.back(); }
    double smallest() const { return values_.empty() ? 0.0 : values_.front(); }

private:
    std::vector<double> values_;
    std::vector<std::uint64_t> cumulative_;
};

std::uint64_t counting_function(const SpectrumTable& table, double t);

inline constexpr int kDefaultFitSamples = 128;

struct DimensionFit {
    double exponent = 0.0;
    double intercept = 0.0;
    int samples_used = 0;
    std::vector<double> t;
    std::vector<std::uint64_t> counts;
};

/// OLS slope of log N(t) against log t over log-spaced samples in [t_lo, t_hi];
/// samples with N(t) = 0 are dropped. Raises CutoffError when the table is not complete
/// up to t_hi.
DimensionFit dimension_fit(const SpectrumTable& table, double t_lo, double t_hi,
                           int samples = kDefaultFitSamples);

/// Throws CutoffError unless the table is complete past t and has values beyond it.
void require_complete(const SpectrumTable& table, double t);

struct ZetaScan {
    double p = 0.0;
    std::vector<double> grid;       // log-spaced |mu| levels
    std::vector<double> partial;    // sum_{0<|mu|<=grid[g]} |mu|^{-p}
    std::vector<double> increments; // partial[g] - partial[g-1], g >= 1
    double tail_exponent = 0.0;     // log-log slope of the increments over the last half
    bool diverging = false;
    double total = 0.0;
    double last_increment = 0.0;
};

inline constexpr int kZetaGrid = 9;

/// Partial sums of |mu|^{-p} up to the table's completeness bound. A scan is flagged
/// diverging when its tail increments do not decay (exponent > -0.1).
std::vector<ZetaScan> zeta_scan(const SpectrumTable& table, std::span<const double> p_list);

} // namespace subriem::spectra
