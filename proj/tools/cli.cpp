#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cwerank/analysis.hpp"
#include "cwerank/error.hpp"
#include "cwerank/ingest.hpp"
#include "cwerank/metrics.hpp"
#include "cwerank/plot.hpp"
#include "cwerank/synth.hpp"
#include "cwerank/taxonomy.hpp"
#include "cwerank/version.hpp"

namespace cwerank::cli {

namespace {

/// An error that maps directly onto an exit code.
struct ExitError {
    int code;
    std::string message;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ExitError{kUsage, fmt::format("cannot read {}", path)};
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << content)) {
        throw ExitError{kUsage, fmt::format("cannot write {}", path)};
    }
}

std::set<int> parse_views(const std::string& text)
{
    std::set<int> views;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) {
            continue;
        }
        try {
            std::size_t used = 0;
            int v = std::stoi(item, &used);
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
            views.insert(v);
        } catch (const std::exception&) {
            throw ExitError{kUsage, fmt::format("--views: '{}' is not an integer", item)};
        }
    }
    return views;
}

std::string join_views(const std::set<int>& views)
{
    return views.empty() ? std::string("none") : fmt::format("{}", fmt::join(views, ","));
}

std::string yes_no(bool b)
{
    return b ? "yes" : "no";
}

/// Resolved options shared by rank and analyze.
struct RunConfig {
    std::string dataset_path;
    std::string taxonomy_path;
    std::string metric = "mssw";
    std::string level = "high";
    bool propagate = true;
    std::string views_text;
    bool restrict_1003 = true;
    long top = 20;
    std::string format = "table";
    std::string out_path;
    bool plot = false;

    std::set<int> views;

    std::string describe(std::string_view command) const
    {
        return fmt::format("cwerank {} {} dataset={} taxonomy={} metric={} level={} propagate={} views={} "
                           "restrict_1003={} top={} format={}{}",
                           kVersion, command, dataset_path, taxonomy_path, metric, level, yes_no(propagate),
                           join_views(views), yes_no(restrict_1003), top, format,
                           out_path.empty() ? "" : " out=" + out_path);
    }
};

void add_scope_options(CLI::App* cmd, RunConfig& cfg)
{
    cmd->add_option("--dataset", cfg.dataset_path, "Normalized dataset (JSON lines)")->required();
    cmd->add_option("--taxonomy", cfg.taxonomy_path, "Taxonomy document")->required();
    cmd->add_option("--metric", cfg.metric, "mdse|mssw")->check(CLI::IsMember({"mdse", "mssw"}));
    cmd->add_option("--level", cfg.level, "high|low|all")->check(CLI::IsMember({"high", "low", "all"}));
    cmd->add_flag("--propagate,!--no-propagate", cfg.propagate, "Count CVEs toward taxonomy ancestors");
    cmd->add_option("--views", cfg.views_text, "Comma-separated view ids used for propagation");
    cmd->add_flag("--restrict-1003,!--no-restrict-1003", cfg.restrict_1003, "Rank only view-1003 CWEs");
    cmd->add_option("--out", cfg.out_path, "Output file (default: stdout)");
}

struct Loaded {
    Dataset dataset;
    TaxonomyGraph graph;
};

Loaded load_inputs(RunConfig& cfg)
{
    Loaded in;
    std::istringstream ds(read_file(cfg.dataset_path));
    in.dataset = read_dataset(ds);
    in.graph = TaxonomyGraph(load_taxonomy(read_file(cfg.taxonomy_path)));

    const ViewSet present = in.graph.views();
    if (!cfg.views_text.empty()) {
        cfg.views = parse_views(cfg.views_text);
        for (int v : cfg.views) {
            if (!present.contains(v)) {
                throw ExitError{kUsage, fmt::format("--views: view {} has no edges in {}", v, cfg.taxonomy_path)};
            }
        }
    } else {
        for (int v : kDefaultViews) {
            if (present.contains(v)) {
                cfg.views.insert(v);
            }
        }
    }
    return in;
}

ScopeConfig scope_of(const RunConfig& cfg)
{
    return {partition_from_string(cfg.level), cfg.propagate, cfg.views, cfg.restrict_1003};
}

void emit(const RunConfig& cfg, const std::string& body, std::ostream& out)
{
    if (cfg.out_path.empty()) {
        out << body;
    } else {
        write_file(cfg.out_path, body);
    }
}

std::string plot_path(const RunConfig& cfg, std::string_view fallback)
{
    if (cfg.out_path.empty()) {
        return std::string(fallback);
    }
    std::filesystem::path p(cfg.out_path);
    p.replace_extension(".svg");
    return p.string();
}

int cmd_ingest(const std::vector<std::string>& feeds, int year, const std::string& out_path,
               const std::string& source_label, const std::string& cutoff_date, std::ostream& out)
{
    if (feeds.empty()) {
        throw ExitError{kUsage, "ingest: at least one --feed is required"};
    }
    std::vector<FeedParseResult> parsed;
    std::size_t skipped = 0;
    for (const auto& path : feeds) {
        parsed.push_back(parse_nvd_feed(read_file(path)));
        skipped += parsed.back().skipped.size();
    }
    auto records = merge_feeds(parsed);
    const std::size_t scored = records.size();
    Dataset ds = filter_year(records, year, source_label, cutoff_date);

    std::string feed_list;
    for (const auto& f : feeds) {
        feed_list += (feed_list.empty() ? "" : ",") + f;
    }
    const std::string comment = fmt::format("cwerank {} ingest feeds={} year={} source_label={} cutoff_date={}",
                                            kVersion, feed_list, year, source_label, cutoff_date);
    std::ostringstream body;
    write_dataset(body, ds, comment);
    if (out_path.empty()) {
        out << body.str();
    } else {
        write_file(out_path, body.str());
        out << fmt::format("records: {}\nskipped: {}\nother-years: {}\n", ds.records.size(), skipped,
                           scored - ds.records.size());
    }
    return kOk;
}

int cmd_rank(RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    if (cfg.top < 0) {
        throw ExitError{kUsage, "--top must be >= 0"};
    }
    if (cfg.format != "table" && cfg.format != "csv" && cfg.format != "json") {
        throw ExitError{kUsage, fmt::format("--format: unknown format '{}'", cfg.format)};
    }
    Loaded in = load_inputs(cfg);
    auto scope = aggregate_scope(in.dataset, in.graph, scope_of(cfg));
    for (const auto& w : scope.warnings) {
        err << w << '\n';
    }

    const Metric metric = metric_from_string(cfg.metric);
    ScoredRows scored = metric == Metric::MDSE ? mdse_scores(scope.aggregates, in.dataset)
                                               : mssw_scores(scope.aggregates);
    RankedList list = top_list(scored.rows, metric, static_cast<std::size_t>(cfg.top), &in.graph);
    list.config.partition = partition_from_string(cfg.level);
    list.config.propagation = cfg.propagate;
    for (const auto& w : list.warnings) {
        err << "WARN " << w << '\n';
    }

    const std::string header = "# " + cfg.describe("rank") + '\n';
    std::string body;
    if (cfg.format == "csv") {
        body = header + to_csv(list);
    } else if (cfg.format == "json") {
        // JSON has no comment syntax; the run description travels as a member.
        auto doc = nlohmann::ordered_json::parse(to_json(list));
        nlohmann::ordered_json wrapped = {{"run_config", cfg.describe("rank")}};
        for (auto& [k, v] : doc.items()) {
            wrapped[k] = v;
        }
        body = wrapped.dump(2) + '\n';
    } else {
        body = header + to_table(list);
    }
    emit(cfg, body, out);
    return kOk;
}

int cmd_analyze(const std::string& sub, RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    cfg.format = "csv";
    Loaded in = load_inputs(cfg);
    const std::string header = "# " + cfg.describe("analyze " + sub) + '\n';
    std::string body;
    std::vector<PlotSeries> series;
    PlotKind kind = PlotKind::Curve;
    PlotLabels labels;

    if (sub == "correlations") {
        auto table = correlation_table(in.dataset, in.graph, cfg.views, cfg.restrict_1003);
        body = to_csv(table);
        PlotSeries mdse{"MDSE", {}, {}}, mssw{"MSSW", {}, {}};
        for (const auto& r : table.rows) {
            if (r.error.empty()) {
                auto& s = r.equation == Metric::MDSE ? mdse : mssw;
                s.x.push_back(*r.corr_severity);
                s.y.push_back(*r.corr_frequency);
            } else {
                err << "WARN " << to_string(r.equation) << " " << to_string(r.abstraction) << " propagation="
                    << yes_no(r.propagation) << ": " << r.error << '\n';
            }
        }
        series = {mdse, mssw};
        kind = PlotKind::Scatter;
        labels = {"Correlation of scores with frequency and severity", "corr(score, mean severity)",
                  "corr(score, frequency)"};
    } else {
        auto scope = aggregate_scope(in.dataset, in.graph, scope_of(cfg));
        for (const auto& w : scope.warnings) {
            err << w << '\n';
        }
        const Metric metric = metric_from_string(cfg.metric);
        if (sub == "set-diff") {
            ScoredRows scored = score_all(scope.aggregates, in.dataset);
            auto curve = set_difference_curve(scored.rows, metric);
            body = to_csv(curve);
            PlotSeries f{"vs frequency", {}, {}}, s{"vs severity", {}, {}}, t{"theoretical max", {}, {}};
            for (const auto& p : curve.points) {
                const auto x = static_cast<double>(p.size);
                f.x.push_back(x);
                f.y.push_back(static_cast<double>(p.diff_vs_frequency));
                s.x.push_back(x);
                s.y.push_back(static_cast<double>(p.diff_vs_severity));
                t.x.push_back(x);
                t.y.push_back(static_cast<double>(p.theoretical_max));
            }
            series = {f, s, t};
            labels = {fmt::format("Set difference of {} top lists", cfg.metric == "mdse" ? "MDSE" : "MSSW"),
                      "top list size", "set difference size"};
        } else if (sub == "risk-map") {
            ScoredRows scored = metric == Metric::MDSE ? mdse_scores(scope.aggregates, in.dataset)
                                                       : mssw_scores(scope.aggregates);
            auto points = risk_map_export(scored.rows, metric);
            body = to_csv(std::span<const RiskPoint>(points));
            PlotSeries p{"CWE", {}, {}};
            for (const auto& pt : points) {
                p.x.push_back(pt.x);
                p.y.push_back(pt.y);
            }
            series = {p};
            kind = PlotKind::Scatter;
            labels = {fmt::format("{} risk map", cfg.metric == "mdse" ? "MDSE" : "MSSW"), "normalized severity",
                      "normalized frequency"};
        } else if (sub == "distributions") {
            std::vector<std::pair<long, CweId>> pairs;
            for (const auto& a : scope.aggregates) {
                if (a.n >= 1) {
                    pairs.emplace_back(a.n, a.cwe_id);
                }
            }
            std::sort(pairs.begin(), pairs.end());
            std::vector<long> ns;
            std::vector<CweId> ids;
            for (const auto& [n, id] : pairs) {
                ns.push_back(n);
                ids.push_back(id);
            }
            auto fs = frequency_transform_series(ns);
            body = to_csv(fs, ids);
            PlotSeries raw{"frequency", {}, fs.raw}, log{"log of frequency", {}, fs.log},
                dlog{"double log of frequency", {}, fs.double_log};
            for (std::size_t i = 0; i < fs.raw.size(); ++i) {
                raw.x.push_back(static_cast<double>(i));
            }
            log.x = raw.x;
            dlog.x = raw.x;
            series = {raw, log, dlog};
            labels = {"Normalized frequency distributions", "CWE (least to most frequent)", "normalized value"};
        } else {
            throw ExitError{kUsage, fmt::format("analyze: unknown analysis '{}'", sub)};
        }
    }

    emit(cfg, header + body, out);
    if (cfg.plot) {
        write_file(plot_path(cfg, sub + ".svg"), render_plot(series, kind, labels));
    }
    return kOk;
}

int cmd_synth(const SyntheticConfig& config, const std::string& dataset_out, const std::string& taxonomy_out,
              std::ostream& out)
{
    auto pop = generate_population(config);
    std::ostringstream ds;
    write_dataset(ds, pop.dataset, fmt::format("cwerank {} synth seed={} cwe_count={}", kVersion, config.seed,
                                               config.cwe_count));
    write_file(dataset_out, ds.str());
    write_file(taxonomy_out, taxonomy_to_json(pop.taxonomy).dump(2) + '\n');
    out << fmt::format("records: {}\ncwes: {}\n", pop.dataset.records.size(), pop.taxonomy.nodes.size());
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Rank software weaknesses (CWEs) from CVE data with the MDSE and MSSW metrics", "cwerank"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    std::vector<std::string> feeds;
    int year = 2019;
    std::string ingest_out, source_label = "NVD", cutoff_date;
    auto* ingest = app.add_subcommand("ingest", "Normalize NVD JSON feeds into a dataset file");
    ingest->add_option("--feed", feeds, "NVD 1.1 JSON feed file(s)");
    ingest->add_option("--year", year, "Keep CVEs with this year in their id");
    ingest->add_option("--out", ingest_out, "Dataset output file (default: stdout)");
    ingest->add_option("--source-label", source_label, "Label stored with the dataset");
    ingest->add_option("--cutoff-date", cutoff_date, "ISO-8601 snapshot date stored with the dataset");

    RunConfig rank_cfg;
    auto* rank = app.add_subcommand("rank", "Print a ranked top list");
    add_scope_options(rank, rank_cfg);
    rank->add_option("--top", rank_cfg.top, "List size");
    rank->add_option("--format", rank_cfg.format, "table|csv|json");

    RunConfig analyze_cfg;
    std::string analysis;
    auto* analyze = app.add_subcommand("analyze", "Diagnostic analyses as CSV (and optional SVG)");
    analyze->add_option("analysis", analysis, "set-diff|correlations|risk-map|distributions")
        ->required()
        ->check(CLI::IsMember({"set-diff", "correlations", "risk-map", "distributions"}));
    add_scope_options(analyze, analyze_cfg);
    analyze->add_flag("--plot", analyze_cfg.plot, "Also write an SVG plot next to the CSV");

    SyntheticConfig synth_cfg;
    std::string synth_dataset, synth_taxonomy;
    auto* synth = app.add_subcommand("synth", "Generate a seed-fixed synthetic population");
    synth->add_option("--seed", synth_cfg.seed, "Random seed");
    synth->add_option("--cwe-count", synth_cfg.cwe_count, "Number of CWEs");
    synth->add_option("--dataset-out", synth_dataset, "Dataset output file")->required();
    synth->add_option("--taxonomy-out", synth_taxonomy, "Taxonomy output file")->required();

    std::vector<std::string> argv_store{"cwerank"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) {
        argv.push_back(a.c_str());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForVersion& e) {
        out << kVersion << '\n';
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*ingest) {
            return cmd_ingest(feeds, year, ingest_out, source_label, cutoff_date, out);
        }
        if (*rank) {
            return cmd_rank(rank_cfg, out, err);
        }
        if (*analyze) {
            return cmd_analyze(analysis, analyze_cfg, out, err);
        }
        if (*synth) {
            return cmd_synth(synth_cfg, synth_dataset, synth_taxonomy, out);
        }
    } catch (const ExitError& e) {
        err << "error: " << e.message << '\n';
        return e.code;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kParse;
    } catch (const IntegrityError& e) {
        err << "input error: " << e.what() << '\n';
        return kParse;
    } catch (const ComputationError& e) {
        err << "computation error: " << e.what() << '\n';
        return kCompute;
    }
    return kUsage;
}

} // namespace cwerank::cli
