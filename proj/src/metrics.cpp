#include "cwerank/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <fmt/format.h>

#include "cwerank/error.hpp"

namespace cwerank {

namespace {

struct Extremes {
    long min_n = 0;
    long max_n = 0;
    double min_mean = 0.0;
    double max_mean = 0.0;
    std::size_t scored = 0;
};

// Rows with n == 0 carry no mean and stay out of every extreme.
Extremes scope_extremes(std::span<const WeaknessAggregate> aggregates)
{
    Extremes ex;
    for (const auto& a : aggregates) {
        if (a.n < 1 || !a.mean_severity) {
            continue;
        }
        if (ex.scored == 0) {
            ex.min_n = ex.max_n = a.n;
            ex.min_mean = ex.max_mean = *a.mean_severity;
        } else {
            ex.min_n = std::min(ex.min_n, a.n);
            ex.max_n = std::max(ex.max_n, a.n);
            ex.min_mean = std::min(ex.min_mean, *a.mean_severity);
            ex.max_mean = std::max(ex.max_mean, *a.mean_severity);
        }
        ++ex.scored;
    }
    if (ex.scored == 0) {
        throw ComputationError("empty scope: no CWE in scope has an assigned CVE");
    }
    return ex;
}

ScoreRow base_row(const WeaknessAggregate& a)
{
    ScoreRow row;
    row.cwe_id = a.cwe_id;
    row.n = a.n;
    row.mean_severity = a.n >= 1 ? a.mean_severity : std::nullopt;
    return row;
}

} // namespace

std::vector<WeaknessAggregate> aggregate(const PropagationMap& pmap, const Dataset& dataset,
                                         const std::set<CweId>& scope)
{
    std::unordered_map<std::string, double> score_by_id;
    score_by_id.reserve(dataset.records.size());
    for (const auto& rec : dataset.records) {
        score_by_id.emplace(rec.cve_id, rec.base_score);
    }
    for (const auto& [cwe, cves] : pmap.assignments) {
        for (const auto& id : cves) {
            if (!score_by_id.contains(id)) {
                throw IntegrityError(fmt::format("CVE {} assigned to CWE-{} is not in the dataset", id, cwe));
            }
        }
    }

    std::vector<WeaknessAggregate> out;
    out.reserve(scope.size());
    for (CweId id : scope) {
        WeaknessAggregate agg{id, 0, std::nullopt};
        if (auto it = pmap.assignments.find(id); it != pmap.assignments.end() && !it->second.empty()) {
            double sum = 0.0;
            for (const auto& cve : it->second) {
                sum += score_by_id.at(cve);
            }
            agg.n = static_cast<long>(it->second.size());
            agg.mean_severity = sum / static_cast<double>(agg.n);
        }
        out.push_back(agg);
    }
    return out;
}

double log_frequency(long n)
{
    return n >= 1 ? std::log(static_cast<double>(n)) : 0.0;
}

double double_log_frequency(double f1, long max_n)
{
    if (max_n < 3) {
        throw ComputationError(fmt::format("double-log undefined: max frequency {} < 3", max_n));
    }
    if (!(f1 >= 1.0)) {
        return 0.0;
    }
    return std::log(f1) / std::log(log_frequency(max_n));
}

ScoredRows mdse_scores(std::span<const WeaknessAggregate> aggregates, const Dataset& dataset)
{
    const Extremes ex = scope_extremes(aggregates);
    if (ex.max_n == ex.min_n) {
        throw ComputationError(
            fmt::format("degenerate scope: every scored CWE has frequency {}", ex.max_n));
    }
    if (dataset.records.empty()) {
        throw ComputationError("degenerate severity: dataset has no CVEs");
    }
    auto [lo, hi] = std::minmax_element(dataset.records.begin(), dataset.records.end(),
                                        [](const auto& a, const auto& b) { return a.base_score < b.base_score; });
    const double min_cvss = lo->base_score;
    const double max_cvss = hi->base_score;
    if (max_cvss == min_cvss) {
        throw ComputationError(fmt::format("degenerate severity: every CVE scores {}", max_cvss));
    }

    ScoredRows out;
    out.context.min_n = ex.min_n;
    out.context.max_n = ex.max_n;
    out.context.min_cvss = min_cvss;
    out.context.max_cvss = max_cvss;

    const double n_range = static_cast<double>(ex.max_n - ex.min_n);
    for (const auto& a : aggregates) {
        ScoreRow row = base_row(a);
        if (row.mean_severity) {
            row.f = static_cast<double>(a.n - ex.min_n) / n_range;
            row.s = (*row.mean_severity - min_cvss) / (max_cvss - min_cvss);
            row.mdse = row.f * *row.s * 100.0;
        }
        out.rows.push_back(row);
    }
    return out;
}

ScoredRows mssw_scores(std::span<const WeaknessAggregate> aggregates)
{
    const Extremes ex = scope_extremes(aggregates);
    if (ex.max_n < 3) {
        throw ComputationError(fmt::format("double-log undefined: max frequency {} < 3", ex.max_n));
    }
    if (ex.max_mean == ex.min_mean) {
        throw ComputationError(fmt::format("degenerate means: every scored CWE has mean {}", ex.max_mean));
    }

    ScoredRows out;
    out.context.k = 1.0 / std::log(log_frequency(ex.max_n));
    out.context.min_n = ex.min_n;
    out.context.max_n = ex.max_n;
    out.context.min_mean = ex.min_mean;
    out.context.max_mean = ex.max_mean;

    const double mean_range = ex.max_mean - ex.min_mean;
    for (const auto& a : aggregates) {
        ScoreRow row = base_row(a);
        if (row.mean_severity) {
            row.f1 = log_frequency(a.n);
            row.f2 = double_log_frequency(row.f1, ex.max_n);
            row.s1 = (*row.mean_severity - ex.min_mean) / mean_range;
            row.mssw = row.f2 * row.s1 * 100.0;
        }
        out.rows.push_back(row);
    }
    return out;
}

ScoredRows score_all(std::span<const WeaknessAggregate> aggregates, const Dataset& dataset)
{
    ScoredRows mdse = mdse_scores(aggregates, dataset);
    ScoredRows mssw = mssw_scores(aggregates);
    for (std::size_t i = 0; i < mdse.rows.size(); ++i) {
        auto& row = mdse.rows[i];
        const auto& other = mssw.rows[i];
        row.f1 = other.f1;
        row.f2 = other.f2;
        row.s1 = other.s1;
        row.mssw = other.mssw;
    }
    mdse.context.k = mssw.context.k;
    mdse.context.min_mean = mssw.context.min_mean;
    mdse.context.max_mean = mssw.context.max_mean;
    return mdse;
}

FrequencySeries frequency_transform_series(std::span<const long> n_values)
{
    if (n_values.empty()) {
        throw ComputationError("frequency series: no values");
    }
    FrequencySeries out;
    out.n_sorted.assign(n_values.begin(), n_values.end());
    std::sort(out.n_sorted.begin(), out.n_sorted.end());
    const long max_n = out.n_sorted.back();
    if (max_n < 3) {
        throw ComputationError(fmt::format("double-log undefined: max frequency {} < 3", max_n));
    }

    for (long n : out.n_sorted) {
        const double f1 = log_frequency(n);
        out.raw.push_back(static_cast<double>(n));
        out.log.push_back(f1);
        out.double_log.push_back(f1 >= 1.0 ? std::log(f1) : 0.0);
    }

    auto normalize = [](std::vector<double>& v, std::string_view name) {
        auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        const double min = *lo;
        const double range = *hi - *lo;
        if (range == 0.0) {
            throw ComputationError(fmt::format("frequency series: {} series has zero range", name));
        }
        for (double& x : v) {
            x = (x - min) / range;
        }
    };
    normalize(out.raw, "raw");
    normalize(out.log, "log");
    normalize(out.double_log, "double-log");
    return out;
}

} // namespace cwerank
