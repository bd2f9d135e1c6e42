#pragma once

#include <optional>
#include <set>
#include <span>
#include <vector>

#include "cwerank/ingest.hpp"
#include "cwerank/taxonomy.hpp"

namespace cwerank {

/// Frequency and mean CVSS score of one weakness under a propagation map.
struct WeaknessAggregate {
    CweId cwe_id = 0;
    long n = 0;
    std::optional<double> mean_severity; // empty when n == 0

    bool operator==(const WeaknessAggregate&) const = default;
};

/// Scope-wide extremes used by the normalizations. Fields that a given
/// equation does not use stay empty.
struct ScoringContext {
    std::optional<double> k;
    long min_n = 0;
    long max_n = 0;
    std::optional<double> min_cvss, max_cvss;
    std::optional<double> min_mean, max_mean;
};

struct ScoreRow {
    CweId cwe_id = 0;
    long n = 0;
    std::optional<double> mean_severity;

    // MDSE terms
    double f = 0.0;               // normalized frequency
    std::optional<double> s;      // severity normalized by per-CVE extremes
    double mdse = 0.0;

    // MSSW terms
    double f1 = 0.0;              // ln n
    double f2 = 0.0;              // k ln ln n
    double s1 = 0.0;              // severity normalized by per-CWE mean extremes
    double mssw = 0.0;
};

struct ScoredRows {
    ScoringContext context;
    std::vector<ScoreRow> rows;
};

/// One aggregate per scope member (n = 0 members included), ordered by id.
/// Throws IntegrityError if the map references a CVE absent from the
/// dataset.
std::vector<WeaknessAggregate> aggregate(const PropagationMap& pmap, const Dataset& dataset,
                                         const std::set<CweId>& scope);

/// Most Dangerous Software Errors score. Severity is normalized against the
/// smallest and largest per-CVE base score of the whole dataset, so the
/// resulting s values do not span [0, 1].
ScoredRows mdse_scores(std::span<const WeaknessAggregate> aggregates, const Dataset& dataset);

/// Most Significant Software Weaknesses score: double-log frequency times
/// severity normalized over the per-CWE means in scope.
ScoredRows mssw_scores(std::span<const WeaknessAggregate> aggregates);

/// Rows carrying both the MDSE and the MSSW terms; the context merges both.
ScoredRows score_all(std::span<const WeaknessAggregate> aggregates, const Dataset& dataset);

/// ln n for n >= 1, else 0.
double log_frequency(long n);

/// ln(f1) / ln(ln(max_n)) when f1 >= 1, else 0. Dividing instead of
/// multiplying by k keeps f2(max_n) == 1 exact.
double double_log_frequency(double f1, long max_n);

struct FrequencySeries {
    std::vector<long> n_sorted;
    std::vector<double> raw;
    std::vector<double> log;
    std::vector<double> double_log;
};

/// Ascending-sorted frequencies with three min-max normalized series:
/// n, ln n and ln ln n (zero branches applied before normalization).
FrequencySeries frequency_transform_series(std::span<const long> n_values);

} // namespace cwerank
