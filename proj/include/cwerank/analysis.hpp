#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cwerank/ingest.hpp"
#include "cwerank/metrics.hpp"
#include "cwerank/taxonomy.hpp"

namespace cwerank {

enum class Metric { MDSE, MSSW, FrequencyOnly, SeverityOnly };

std::string_view to_string(Metric m);
Metric metric_from_string(std::string_view s);

/// Score of a row under `metric`; empty for rows with no assigned CVEs.
std::optional<double> score_of(const ScoreRow& row, Metric metric);

/// Indices of the scored rows, best first: score desc, n desc, id asc.
std::vector<std::size_t> ranking_order(std::span<const ScoreRow> rows, Metric metric);

struct RankConfig {
    Metric metric = Metric::MSSW;
    AbstractionPartition partition = AbstractionPartition::All;
    bool propagation = false;
    std::size_t size = 0;
};

struct RankedEntry {
    std::size_t rank = 0;
    CweId cwe_id = 0;
    std::string name;
    double score = 0.0;
    long n = 0;
    double mean_severity = 0.0;
};

struct RankedList {
    RankConfig config;
    std::vector<RankedEntry> entries;
    std::vector<std::string> warnings;
};

/// The `size` best rows under `metric`. Names come from `graph` when given.
/// Asking for more rows than are scored truncates and adds a warning.
RankedList top_list(std::span<const ScoreRow> rows, Metric metric, std::size_t size,
                    const TaxonomyGraph* graph = nullptr);

struct SetDifferencePoint {
    std::size_t size = 0;
    std::size_t diff_vs_frequency = 0;
    std::size_t diff_vs_severity = 0;
    std::size_t theoretical_max = 0;
};

struct SetDifferenceCurve {
    Metric metric = Metric::MDSE;
    std::vector<SetDifferencePoint> points;
};

/// |Top_s(a) \ Top_s(b)| for two rankings given as id sequences.
std::size_t set_difference_size(std::span<const CweId> a, std::span<const CweId> b, std::size_t s);

/// For every list size s, how many of the metric's top s are missing from
/// the frequency-only and the severity-only top s.
SetDifferenceCurve set_difference_curve(std::span<const ScoreRow> rows, Metric metric);

/// Sample Pearson coefficient. Throws ComputationError on mismatched or
/// too-short input and on zero variance.
double pearson(std::span<const double> xs, std::span<const double> ys);

/// Which rows enter a ranking: abstraction partition, propagation and views.
struct ScopeConfig {
    AbstractionPartition partition = AbstractionPartition::All;
    bool propagate = true;
    ViewSet views = kDefaultViews;
    bool restrict_to_1003 = true;
};

struct ScopeAggregates {
    std::vector<WeaknessAggregate> aggregates;
    std::vector<std::string> warnings;
};

/// propagate + partition_nodes + aggregate for one configuration.
ScopeAggregates aggregate_scope(const Dataset& dataset, const TaxonomyGraph& graph,
                                const ScopeConfig& config);

struct CorrelationRow {
    Metric equation = Metric::MDSE;
    AbstractionPartition abstraction = AbstractionPartition::All;
    bool propagation = false;
    std::optional<double> corr_frequency;
    std::optional<double> corr_severity;
    std::string error; // set when this configuration could not be scored
};

struct CorrelationTable {
    std::vector<CorrelationRow> rows;
};

/// Pearson correlation of each equation's scores against raw frequency and
/// mean severity, for every abstraction x propagation configuration.
/// Failures are recorded per row instead of aborting the table.
CorrelationTable correlation_table(const Dataset& dataset, const TaxonomyGraph& graph,
                                   const ViewSet& views = kDefaultViews,
                                   bool restrict_to_1003 = true);

struct RiskPoint {
    CweId cwe_id = 0;
    double x = 0.0; // normalized severity
    double y = 0.0; // normalized frequency
};

/// (s, f) for MDSE, (s1, f2) for MSSW; one point per scored row.
std::vector<RiskPoint> risk_map_export(std::span<const ScoreRow> rows, Metric metric);

// CSV rendering: header row, LF endings, fields in declaration order.
std::string to_csv(const RankedList& list);
std::string to_csv(const SetDifferenceCurve& curve);
std::string to_csv(const CorrelationTable& table);
std::string to_csv(std::span<const RiskPoint> points);
std::string to_csv(const FrequencySeries& series);
std::string to_csv(const FrequencySeries& series, std::span<const CweId> ids);

std::string to_table(const RankedList& list);
std::string to_json(const RankedList& list);

} // namespace cwerank
