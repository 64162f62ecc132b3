#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace lagcorr {

enum class TailSide { positive, negative };

[[nodiscard]] TailSide parse_side(std::string_view name);
[[nodiscard]] std::string_view to_string(TailSide side) noexcept;

/// Closed range of |return| values.
struct MagnitudeRange {
    double lo = 0.0;
    double hi = 0.0;
};

/// Density of |x| on a geometric grid for one side of the distribution. The
/// density is normalised by the total sample count over both sides, so the
/// two sides plus whatever falls outside the grid integrate to one.
struct TailHistogram {
    TailSide side = TailSide::positive;
    std::vector<double> bin_edges;  ///< size bins + 1, geometric
    std::vector<std::size_t> counts;
    std::vector<double> densities;
    std::vector<double> density_errors;
    std::size_t sample_count = 0;    ///< all samples, both signs
    std::size_t in_range_count = 0;  ///< samples of this side inside the grid

    [[nodiscard]] std::size_t bins() const noexcept { return counts.size(); }
    [[nodiscard]] double bin_width(std::size_t k) const { return bin_edges[k + 1] - bin_edges[k]; }
    /// Geometric centre sqrt(lo * hi) of bin k.
    [[nodiscard]] double bin_center(std::size_t k) const;
};

/// Power law dP/dx = p0 * x^p1.
struct PowerLawFit {
    double p0 = 0.0;
    double p1 = 0.0;
    double p0_error = 0.0;
    double p1_error = 0.0;
    double chi2 = 0.0;
    int degrees_of_freedom = 0;
    MagnitudeRange fit_range;
};

struct MomentBound {
    int order = -1;          ///< largest convergent moment; -1 when none converge
    bool convergent = false;
};

inline constexpr std::size_t kDefaultTailBins = 20;
inline constexpr std::size_t kMinTailSamples = 100;

/// From the 90th percentile of |x| to the maximum |x| over all samples.
[[nodiscard]] MagnitudeRange default_tail_range(std::span<const double> returns);

/// Throws InsufficientDataError when fewer than kMinTailSamples samples of
/// the requested side fall inside `range`.
[[nodiscard]] TailHistogram tail_histogram(std::span<const double> returns, TailSide side,
                                           std::size_t bins = kDefaultTailBins,
                                           std::optional<MagnitudeRange> range = std::nullopt);

/// Probability mass of both sides' bins plus every sample outside them.
/// Equals one for histograms built from the same sample and grid.
[[nodiscard]] double total_probability(const TailHistogram& positive, const TailHistogram& negative);

/// Weighted least squares of ln(density) on ln(bin centre) over non-empty
/// bins whose centre lies in `fit_range` (default: the whole grid).
/// Throws UnderdeterminedFitError with fewer than three usable bins.
[[nodiscard]] PowerLawFit fit_power_law(const TailHistogram& hist,
                                        std::optional<MagnitudeRange> fit_range = std::nullopt);

/// Largest n >= 0 with n + p1 < -1.
[[nodiscard]] MomentBound max_convergent_moment(const PowerLawFit& fit);
[[nodiscard]] MomentBound max_convergent_moment(double exponent);

}  // namespace lagcorr
