#include "cwerank/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <unordered_set>

#include <fmt/format.h>
#include <json.hpp>

#include "cwerank/error.hpp"
#include "cwerank/text.hpp"

namespace cwerank {

std::string_view to_string(Metric m)
{
    switch (m) {
    case Metric::MDSE: return "mdse";
    case Metric::MSSW: return "mssw";
    case Metric::FrequencyOnly: return "frequency";
    case Metric::SeverityOnly: return "severity";
    }
    return "mssw";
}

Metric metric_from_string(std::string_view s)
{
    if (s == "mdse" || s == "MDSE") return Metric::MDSE;
    if (s == "mssw" || s == "MSSW") return Metric::MSSW;
    if (s == "frequency") return Metric::FrequencyOnly;
    if (s == "severity") return Metric::SeverityOnly;
    throw ParseError(fmt::format("unknown metric '{}'", s));
}

std::optional<double> score_of(const ScoreRow& row, Metric metric)
{
    if (row.n < 1 || !row.mean_severity) {
        return std::nullopt;
    }
    switch (metric) {
    case Metric::MDSE: return row.mdse;
    case Metric::MSSW: return row.mssw;
    case Metric::FrequencyOnly: return static_cast<double>(row.n);
    case Metric::SeverityOnly: return *row.mean_severity;
    }
    return std::nullopt;
}

std::vector<std::size_t> ranking_order(std::span<const ScoreRow> rows, Metric metric)
{
    struct Keyed {
        double score;
        long n;
        CweId id;
        std::size_t index;
    };
    std::vector<Keyed> keyed;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (auto score = score_of(rows[i], metric)) {
            keyed.push_back({*score, rows[i].n, rows[i].cwe_id, i});
        }
    }
    std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.n != b.n) return a.n > b.n;
        return a.id < b.id;
    });
    std::vector<std::size_t> out;
    out.reserve(keyed.size());
    for (const auto& k : keyed) {
        out.push_back(k.index);
    }
    return out;
}

RankedList top_list(std::span<const ScoreRow> rows, Metric metric, std::size_t size,
                    const TaxonomyGraph* graph)
{
    RankedList list;
    list.config.metric = metric;
    list.config.size = size;
    const auto order = ranking_order(rows, metric);
    if (size > order.size()) {
        list.warnings.push_back(fmt::format("requested top {} but only {} CWEs are scored; list truncated",
                                            size, order.size()));
    }
    const std::size_t count = std::min(size, order.size());
    for (std::size_t i = 0; i < count; ++i) {
        const ScoreRow& row = rows[order[i]];
        RankedEntry e;
        e.rank = i + 1;
        e.cwe_id = row.cwe_id;
        e.name = graph != nullptr ? graph->name_of(row.cwe_id) : std::string{};
        e.score = *score_of(row, metric);
        e.n = row.n;
        e.mean_severity = *row.mean_severity;
        list.entries.push_back(std::move(e));
    }
    return list;
}

std::size_t set_difference_size(std::span<const CweId> a, std::span<const CweId> b, std::size_t s)
{
    const std::size_t sa = std::min(s, a.size());
    const std::size_t sb = std::min(s, b.size());
    std::unordered_set<CweId> top_b(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(sb));
    std::size_t diff = 0;
    for (std::size_t i = 0; i < sa; ++i) {
        if (!top_b.contains(a[i])) {
            ++diff;
        }
    }
    return diff;
}

namespace {

std::vector<CweId> ordered_ids(std::span<const ScoreRow> rows, Metric metric)
{
    std::vector<CweId> ids;
    for (std::size_t i : ranking_order(rows, metric)) {
        ids.push_back(rows[i].cwe_id);
    }
    return ids;
}

// diff[s-1] = |Top_s(a) \ Top_s(b)| for every s, in one pass.
std::vector<std::size_t> prefix_differences(const std::vector<CweId>& a, const std::vector<CweId>& b)
{
    std::unordered_set<CweId> in_a, in_b;
    std::size_t common = 0;
    std::vector<std::size_t> out;
    out.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (in_b.contains(a[i])) ++common;
        in_a.insert(a[i]);
        if (in_a.contains(b[i])) ++common;
        in_b.insert(b[i]);
        out.push_back(i + 1 - common);
    }
    return out;
}

} // namespace

SetDifferenceCurve set_difference_curve(std::span<const ScoreRow> rows, Metric metric)
{
    const auto by_metric = ordered_ids(rows, metric);
    const auto by_frequency = ordered_ids(rows, Metric::FrequencyOnly);
    const auto by_severity = ordered_ids(rows, Metric::SeverityOnly);
    const auto diff_f = prefix_differences(by_metric, by_frequency);
    const auto diff_s = prefix_differences(by_metric, by_severity);

    SetDifferenceCurve curve;
    curve.metric = metric;
    const std::size_t total = by_metric.size();
    for (std::size_t s = 1; s <= total; ++s) {
        curve.points.push_back({s, diff_f[s - 1], diff_s[s - 1], std::min(s, total - s)});
    }
    return curve;
}

double pearson(std::span<const double> xs, std::span<const double> ys)
{
    if (xs.size() != ys.size()) {
        throw ComputationError(fmt::format("pearson: length mismatch {} vs {}", xs.size(), ys.size()));
    }
    if (xs.size() < 2) {
        throw ComputationError("pearson: need at least two points");
    }
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw ComputationError("undefined correlation: zero variance");
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

ScopeAggregates aggregate_scope(const Dataset& dataset, const TaxonomyGraph& graph, const ScopeConfig& config)
{
    auto prop = propagate(dataset, graph, config.views, config.propagate);
    const auto scope = partition_nodes(graph, config.partition, config.restrict_to_1003);
    return {aggregate(prop.map, dataset, scope), std::move(prop.warnings)};
}

CorrelationTable correlation_table(const Dataset& dataset, const TaxonomyGraph& graph, const ViewSet& views,
                                   bool restrict_to_1003)
{
    constexpr AbstractionPartition kPartitions[] = {AbstractionPartition::All, AbstractionPartition::High,
                                                    AbstractionPartition::Low};
    std::map<std::pair<AbstractionPartition, bool>, std::vector<WeaknessAggregate>> cache;
    for (auto partition : kPartitions) {
        for (bool prop : {true, false}) {
            ScopeConfig cfg{partition, prop, views, restrict_to_1003};
            cache[{partition, prop}] = aggregate_scope(dataset, graph, cfg).aggregates;
        }
    }

    CorrelationTable table;
    for (Metric eq : {Metric::MDSE, Metric::MSSW}) {
        for (auto partition : kPartitions) {
            for (bool prop : {true, false}) {
                CorrelationRow row;
                row.equation = eq;
                row.abstraction = partition;
                row.propagation = prop;
                try {
                    const auto& aggs = cache.at({partition, prop});
                    ScoredRows scored = eq == Metric::MDSE ? mdse_scores(aggs, dataset) : mssw_scores(aggs);
                    std::vector<double> score, freq, sev;
                    for (const auto& r : scored.rows) {
                        if (auto s = score_of(r, eq)) {
                            score.push_back(*s);
                            freq.push_back(static_cast<double>(r.n));
                            sev.push_back(*r.mean_severity);
                        }
                    }
                    row.corr_frequency = pearson(score, freq);
                    row.corr_severity = pearson(score, sev);
                } catch (const ComputationError& e) {
                    row.error = e.what();
                }
                table.rows.push_back(std::move(row));
            }
        }
    }
    return table;
}

std::vector<RiskPoint> risk_map_export(std::span<const ScoreRow> rows, Metric metric)
{
    if (metric != Metric::MDSE && metric != Metric::MSSW) {
        throw ComputationError("risk map is defined for the mdse and mssw metrics only");
    }
    std::vector<RiskPoint> out;
    for (const auto& r : rows) {
        if (r.n < 1 || !r.mean_severity) {
            continue;
        }
        if (metric == Metric::MDSE) {
            out.push_back({r.cwe_id, r.s.value_or(0.0), r.f});
        } else {
            out.push_back({r.cwe_id, r.s1, r.f2});
        }
    }
    return out;
}

namespace {

std::string_view score_header(Metric m)
{
    switch (m) {
    case Metric::MDSE: return "MDSE Score";
    case Metric::MSSW: return "MSSW Score";
    case Metric::FrequencyOnly: return "Frequency";
    case Metric::SeverityOnly: return "Mean CVSS";
    }
    return "Score";
}

std::string format_score(Metric m, double score)
{
    return m == Metric::FrequencyOnly ? fmt::format("{}", static_cast<long>(score)) : format_half_up(score, 2);
}

std::string optional_real(const std::optional<double>& v)
{
    return v ? format_real(*v) : std::string{};
}

} // namespace

std::string to_csv(const RankedList& list)
{
    std::string out = "rank,cwe_id,name,score,n,mean_severity\n";
    for (const auto& e : list.entries) {
        out += fmt::format("{},CWE-{},{},{},{},{}\n", e.rank, e.cwe_id, csv_field(e.name),
                           format_score(list.config.metric, e.score), e.n, format_half_up(e.mean_severity, 2));
    }
    return out;
}

std::string to_csv(const SetDifferenceCurve& curve)
{
    std::string out = "size,diff_vs_frequency,diff_vs_severity,theoretical_max\n";
    for (const auto& p : curve.points) {
        out += fmt::format("{},{},{},{}\n", p.size, p.diff_vs_frequency, p.diff_vs_severity, p.theoretical_max);
    }
    return out;
}

std::string to_csv(const CorrelationTable& table)
{
    std::string out = "equation,abstraction,propagation,corr_frequency,corr_severity,error\n";
    for (const auto& r : table.rows) {
        out += fmt::format("{},{},{},{},{},{}\n", r.equation == Metric::MDSE ? "MDSE" : "MSSW",
                           to_string(r.abstraction), r.propagation ? "yes" : "no",
                           optional_real(r.corr_frequency), optional_real(r.corr_severity), csv_field(r.error));
    }
    return out;
}

std::string to_csv(std::span<const RiskPoint> points)
{
    std::string out = "cwe_id,x,y\n";
    for (const auto& p : points) {
        out += fmt::format("CWE-{},{},{}\n", p.cwe_id, format_real(p.x), format_real(p.y));
    }
    return out;
}

std::string to_csv(const FrequencySeries& series)
{
    std::string out = "index,n,frequency,log_frequency,double_log_frequency\n";
    for (std::size_t i = 0; i < series.n_sorted.size(); ++i) {
        out += fmt::format("{},{},{},{},{}\n", i, series.n_sorted[i], format_real(series.raw[i]),
                           format_real(series.log[i]), format_real(series.double_log[i]));
    }
    return out;
}

std::string to_csv(const FrequencySeries& series, std::span<const CweId> ids)
{
    if (ids.size() != series.n_sorted.size()) {
        throw ComputationError("to_csv: id count does not match series length");
    }
    std::string out = "index,cwe_id,n,frequency,log_frequency,double_log_frequency\n";
    for (std::size_t i = 0; i < series.n_sorted.size(); ++i) {
        out += fmt::format("{},CWE-{},{},{},{},{}\n", i, ids[i], series.n_sorted[i], format_real(series.raw[i]),
                           format_real(series.log[i]), format_real(series.double_log[i]));
    }
    return out;
}

std::string to_table(const RankedList& list)
{
    std::vector<std::array<std::string, 6>> cells;
    cells.push_back({"Rank", "Identifier", "CWE Description", std::string(score_header(list.config.metric)),
                     "Frequency", "Mean CVSS"});
    for (const auto& e : list.entries) {
        cells.push_back({std::to_string(e.rank), fmt::format("CWE-{}", e.cwe_id), e.name,
                         format_score(list.config.metric, e.score), std::to_string(e.n),
                         format_half_up(e.mean_severity, 2)});
    }
    std::array<std::size_t, 6> width{};
    for (const auto& row : cells) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            width[c] = std::max(width[c], row[c].size());
        }
    }
    std::string out;
    for (const auto& row : cells) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) {
                line += "  ";
            }
            line += fmt::format("{:<{}}", row[c], width[c]);
        }
        while (!line.empty() && line.back() == ' ') {
            line.pop_back();
        }
        out += line + '\n';
    }
    return out;
}

std::string to_json(const RankedList& list)
{
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const auto& e : list.entries) {
        entries.push_back({{"rank", e.rank},
                           {"cwe_id", e.cwe_id},
                           {"name", e.name},
                           {"score", e.score},
                           {"n", e.n},
                           {"mean_severity", e.mean_severity}});
    }
    nlohmann::ordered_json doc = {{"config",
                                   {{"metric", std::string(to_string(list.config.metric))},
                                    {"partition", std::string(to_string(list.config.partition))},
                                    {"propagation", list.config.propagation},
                                    {"size", list.config.size}}},
                                  {"entries", std::move(entries)},
                                  {"warnings", list.warnings}};
    return doc.dump(2) + '\n';
}

} // namespace cwerank
