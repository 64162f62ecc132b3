#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lagcorr/correlation.hpp"
#include "lagcorr/diagnostics.hpp"
#include "lagcorr/marketdata.hpp"
#include "lagcorr/tails.hpp"

// Plot-ready CSV, JSON and text renderings of every result type. Numbers in
// CSV/JSON use shortest round-trip precision; text tables use 3 significant
// figures.

namespace lagcorr::report {

inline constexpr std::string_view kCorrelationHeader = "lag,raw,normalized,std_error,pair_count";
inline constexpr std::string_view kCbpiHeader = "bucket_start,cbpi,cbpi0,coefficient_count,low_statistics";
inline constexpr std::string_view kHistoryHeader = "window_start,window_end,value,std_error,rows,pair_count";
inline constexpr std::string_view kFitFooterHeader = "p0,chi2,dof,p_value";

void write_csv(std::ostream& out, const CorrelationFunction& f);
void write_json(std::ostream& out, const CorrelationFunction& f);

void write_csv(std::ostream& out, std::span<const LeaderFollowerEntry> entries);
void write_json(std::ostream& out, std::span<const LeaderFollowerEntry> entries);
/// Leaders as rows, followers as columns, signed significance; blank cells
/// for pairs below threshold and on the diagonal.
void write_table_text(std::ostream& out, std::span<const std::string> instruments,
                      std::span<const LeaderFollowerEntry> entries);

void write_csv(std::ostream& out, const CoefficientHistory& history, const ConstancyFit* fit);
void write_json(std::ostream& out, const CoefficientHistory& history, const ConstancyFit* fit);

void write_csv(std::ostream& out, std::span<const CbpiReport> reports);
void write_json(std::ostream& out, std::span<const CbpiReport> reports);

struct TailResult {
    std::string instrument_id;
    TailHistogram histogram;
    std::optional<PowerLawFit> fit;
    std::string fit_error;  ///< set when the fit could not be made
};

void write_csv(std::ostream& out, std::span<const TailResult> results);
void write_json(std::ostream& out, std::span<const TailResult> results);

void write_csv(std::ostream& out, std::span<const VolumeBucket> buckets);
void write_json(std::ostream& out, std::span<const VolumeBucket> buckets);

/// 3 significant figures, as in rendered tables.
[[nodiscard]] std::string three_significant(double v);

}  // namespace lagcorr::report
