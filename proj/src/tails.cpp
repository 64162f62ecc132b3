#include "lagcorr/tails.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lagcorr/errors.hpp"

namespace lagcorr {

TailSide parse_side(std::string_view name) {
    if (name == "positive" || name == "pos" || name == "+") return TailSide::positive;
    if (name == "negative" || name == "neg" || name == "-") return TailSide::negative;
    throw ValidationError("unknown tail side '" + std::string(name) + "' (expected positive or negative)");
}

std::string_view to_string(TailSide side) noexcept {
    return side == TailSide::positive ? "positive" : "negative";
}

double TailHistogram::bin_center(std::size_t k) const {
    return std::sqrt(bin_edges[k] * bin_edges[k + 1]);
}

MagnitudeRange default_tail_range(std::span<const double> returns) {
    if (returns.empty()) throw InsufficientDataError("no returns to derive a tail range from");
    std::vector<double> mags(returns.size());
    std::transform(returns.begin(), returns.end(), mags.begin(), [](double x) { return std::abs(x); });
    const auto k = static_cast<std::size_t>(std::floor(0.9 * static_cast<double>(mags.size() - 1)));
    std::nth_element(mags.begin(), mags.begin() + static_cast<std::ptrdiff_t>(k), mags.end());
    const double lo = mags[k];
    const double hi = *std::max_element(mags.begin() + static_cast<std::ptrdiff_t>(k), mags.end());
    return {lo, hi};
}

TailHistogram tail_histogram(std::span<const double> returns, TailSide side, std::size_t bins,
                             std::optional<MagnitudeRange> range) {
    if (bins == 0) throw ValidationError("tail histogram needs at least one bin");
    const MagnitudeRange r = range ? *range : default_tail_range(returns);
    if (!(r.lo > 0.0) || !(r.hi > r.lo) || !std::isfinite(r.hi))
        throw ValidationError("tail range must satisfy 0 < lo < hi");

    TailHistogram h;
    h.side = side;
    h.sample_count = returns.size();
    h.bin_edges.resize(bins + 1);
    const double ratio = r.hi / r.lo;
    for (std::size_t k = 0; k <= bins; ++k)
        h.bin_edges[k] = r.lo * std::pow(ratio, static_cast<double>(k) / static_cast<double>(bins));
    h.bin_edges.front() = r.lo;
    h.bin_edges.back() = r.hi;
    h.counts.assign(bins, 0);

    for (double x : returns) {
        const bool on_side = side == TailSide::positive ? x > 0.0 : x < 0.0;
        if (!on_side) continue;
        const double m = std::abs(x);
        if (m < r.lo || m > r.hi) continue;
        auto it = std::upper_bound(h.bin_edges.begin(), h.bin_edges.end(), m);
        auto k = static_cast<std::size_t>(it - h.bin_edges.begin());
        k = k == 0 ? 0 : k - 1;
        if (k >= bins) k = bins - 1;  // m == hi
        ++h.counts[k];
        ++h.in_range_count;
    }
    if (h.in_range_count < kMinTailSamples) {
        throw InsufficientDataError("only " + std::to_string(h.in_range_count) + " " + std::string(to_string(side)) +
                                    " samples in tail range, need at least " + std::to_string(kMinTailSamples));
    }

    const auto total = static_cast<double>(h.sample_count);
    h.densities.resize(bins);
    h.density_errors.resize(bins);
    for (std::size_t k = 0; k < bins; ++k) {
        const double norm = total * h.bin_width(k);
        const auto c = static_cast<double>(h.counts[k]);
        h.densities[k] = c / norm;
        h.density_errors[k] = std::sqrt(c) / norm;
    }
    return h;
}

double total_probability(const TailHistogram& positive, const TailHistogram& negative) {
    if (positive.sample_count != negative.sample_count)
        throw ValidationError("histograms were built from different samples");
    double mass = 0.0;
    for (const auto* h : {&positive, &negative}) {
        for (std::size_t k = 0; k < h->bins(); ++k) mass += h->densities[k] * h->bin_width(k);
    }
    const auto outside = positive.sample_count - positive.in_range_count - negative.in_range_count;
    return mass + static_cast<double>(outside) / static_cast<double>(positive.sample_count);
}

PowerLawFit fit_power_law(const TailHistogram& hist, std::optional<MagnitudeRange> fit_range) {
    const MagnitudeRange fr = fit_range ? *fit_range : MagnitudeRange{hist.bin_edges.front(), hist.bin_edges.back()};

    // Normal equations of y = a + b*u with weights w = 1/sigma_ln^2.
    double sw = 0, su = 0, sy = 0, suu = 0, suy = 0;
    std::vector<double> us, ys, ws;
    for (std::size_t k = 0; k < hist.bins(); ++k) {
        const double c = hist.bin_center(k);
        if (c < fr.lo || c > fr.hi) continue;
        if (!(hist.densities[k] > 0.0) || !(hist.density_errors[k] > 0.0)) continue;
        const double sigma = hist.density_errors[k] / hist.densities[k];
        const double w = 1.0 / (sigma * sigma);
        const double u = std::log(c);
        const double y = std::log(hist.densities[k]);
        us.push_back(u);
        ys.push_back(y);
        ws.push_back(w);
        sw += w;
        su += w * u;
        sy += w * y;
        suu += w * u * u;
        suy += w * u * y;
    }
    if (us.size() < 3) {
        throw UnderdeterminedFitError("power-law fit needs at least 3 non-empty bins in range, got " +
                                      std::to_string(us.size()));
    }
    // Centre u for conditioning.
    const double ubar = su / sw;
    const double ybar = sy / sw;
    const double sxx = suu - sw * ubar * ubar;
    const double sxy = suy - sw * ubar * ybar;
    if (!(sxx > 0.0)) throw UnderdeterminedFitError("power-law fit bins have no spread in |x|");

    PowerLawFit fit;
    fit.p1 = sxy / sxx;
    const double intercept = ybar - fit.p1 * ubar;
    fit.p0 = std::exp(intercept);
    fit.p1_error = std::sqrt(1.0 / sxx);
    fit.p0_error = fit.p0 * std::sqrt(1.0 / sw + ubar * ubar / sxx);
    for (std::size_t k = 0; k < us.size(); ++k) {
        const double resid = ys[k] - intercept - fit.p1 * us[k];
        fit.chi2 += ws[k] * resid * resid;
    }
    fit.degrees_of_freedom = static_cast<int>(us.size()) - 2;
    fit.fit_range = fr;
    return fit;
}

MomentBound max_convergent_moment(double exponent) {
    if (!(exponent < -1.0)) return {-1, false};
    // n < -1 - p1, strictly.
    const double bound = -1.0 - exponent;
    const int n = static_cast<int>(std::ceil(bound)) - 1;
    return {n, true};
}

MomentBound max_convergent_moment(const PowerLawFit& fit) { return max_convergent_moment(fit.p1); }

}  // namespace lagcorr
