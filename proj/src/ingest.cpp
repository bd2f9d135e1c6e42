#include "cwerank/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include <fmt/format.h>

#include "cwerank/error.hpp"
#include "cwerank/text.hpp"

namespace cwerank {

using nlohmann::json;

namespace {

constexpr std::string_view kNoInfo = "NVD-CWE-noinfo";
constexpr std::string_view kOther = "NVD-CWE-Other";

bool all_digits(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::optional<CweId> parse_cwe_value(std::string_view value)
{
    constexpr std::string_view prefix = "CWE-";
    if (!value.starts_with(prefix)) {
        return std::nullopt;
    }
    auto digits = value.substr(prefix.size());
    if (!all_digits(digits)) {
        return std::nullopt;
    }
    CweId id = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), id);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || id <= 0) {
        return std::nullopt;
    }
    return id;
}

const json* find_path(const json& root, std::initializer_list<const char*> path)
{
    const json* cur = &root;
    for (const char* key : path) {
        if (!cur->is_object()) {
            return nullptr;
        }
        auto it = cur->find(key);
        if (it == cur->end()) {
            return nullptr;
        }
        cur = &*it;
    }
    return cur;
}

void sort_unique(std::vector<CweId>& ids)
{
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
}

std::vector<CweId> parse_problem_types(const json& item, std::size_t index)
{
    const json* data = find_path(item, {"cve", "problemtype", "problemtype_data"});
    if (data == nullptr || !data->is_array()) {
        throw ParseError(fmt::format("item {}: missing cve.problemtype.problemtype_data array", index));
    }
    std::vector<CweId> ids;
    for (const auto& entry : *data) {
        auto desc = entry.find("description");
        if (!entry.is_object() || desc == entry.end() || !desc->is_array()) {
            throw ParseError(fmt::format("item {}: problem-type entry without description array", index));
        }
        for (const auto& d : *desc) {
            auto value = d.find("value");
            if (!d.is_object() || value == d.end() || !value->is_string()) {
                throw ParseError(fmt::format("item {}: problem-type description without string value", index));
            }
            const auto& text = value->get_ref<const std::string&>();
            if (text == kNoInfo || text == kOther) {
                continue;
            }
            auto id = parse_cwe_value(text);
            if (!id) {
                throw ParseError(fmt::format("item {}: unrecognized problem-type value '{}'", index, text));
            }
            ids.push_back(*id);
        }
    }
    sort_unique(ids);
    return ids;
}

std::optional<double> parse_v3_score(const json& item, std::size_t index)
{
    auto impact = item.find("impact");
    if (impact == item.end()) {
        return std::nullopt;
    }
    if (!impact->is_object()) {
        throw ParseError(fmt::format("item {}: impact is not an object", index));
    }
    const json* score = find_path(*impact, {"baseMetricV3", "cvssV3", "baseScore"});
    if (score == nullptr) {
        return std::nullopt;
    }
    if (!score->is_number()) {
        throw ParseError(fmt::format("item {}: baseScore is not a number", index));
    }
    const double value = score->get<double>();
    if (!(value >= 0.0 && value <= 10.0)) {
        throw ParseError(fmt::format("item {}: baseScore {} outside [0, 10]", index, value));
    }
    return value;
}

// Returns the cycle as a node sequence whose first and last entries match,
// or an empty vector.
std::vector<CweId> find_cycle(const std::map<CweId, std::vector<CweId>>& adjacency)
{
    enum class Mark { White, Grey, Black };
    std::map<CweId, Mark> mark;
    std::vector<CweId> stack;
    std::vector<CweId> cycle;

    auto visit = [&](auto&& self, CweId node) -> bool {
        mark[node] = Mark::Grey;
        stack.push_back(node);
        if (auto it = adjacency.find(node); it != adjacency.end()) {
            for (CweId next : it->second) {
                const Mark m = mark.contains(next) ? mark[next] : Mark::White;
                if (m == Mark::Grey) {
                    auto from = std::find(stack.begin(), stack.end(), next);
                    cycle.assign(from, stack.end());
                    cycle.push_back(next);
                    return true;
                }
                if (m == Mark::White && self(self, next)) {
                    return true;
                }
            }
        }
        stack.pop_back();
        mark[node] = Mark::Black;
        return false;
    };

    for (const auto& [node, _] : adjacency) {
        if (!mark.contains(node) && visit(visit, node)) {
            return cycle;
        }
    }
    return {};
}

std::string join_ids(const std::vector<CweId>& ids, std::string_view sep)
{
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i > 0) {
            out += sep;
        }
        out += std::to_string(ids[i]);
    }
    return out;
}

} // namespace

std::string_view to_string(Abstraction a)
{
    switch (a) {
    case Abstraction::Pillar: return "Pillar";
    case Abstraction::Class: return "Class";
    case Abstraction::Base: return "Base";
    case Abstraction::Variant: return "Variant";
    case Abstraction::Compound: return "Compound";
    }
    return "Base";
}

Abstraction abstraction_from_string(std::string_view s)
{
    if (s == "Pillar") return Abstraction::Pillar;
    if (s == "Class") return Abstraction::Class;
    if (s == "Base") return Abstraction::Base;
    if (s == "Variant") return Abstraction::Variant;
    if (s == "Compound") return Abstraction::Compound;
    throw ParseError(fmt::format("unknown abstraction '{}'", s));
}

bool is_valid_cve_id(std::string_view id)
{
    constexpr std::string_view prefix = "CVE-";
    if (!id.starts_with(prefix)) {
        return false;
    }
    auto rest = id.substr(prefix.size());
    if (rest.size() < 6 || rest[4] != '-') {
        return false;
    }
    return all_digits(rest.substr(0, 4)) && all_digits(rest.substr(5));
}

std::optional<int> cve_year(std::string_view id)
{
    if (!is_valid_cve_id(id)) {
        return std::nullopt;
    }
    int year = 0;
    std::from_chars(id.data() + 4, id.data() + 8, year);
    return year;
}

FeedParseResult parse_nvd_feed(const json& feed)
{
    if (!feed.is_object()) {
        throw ParseError("feed: top level is not an object");
    }
    auto items = feed.find("CVE_Items");
    if (items == feed.end() || !items->is_array()) {
        throw ParseError("feed: missing CVE_Items array");
    }

    FeedParseResult result;
    result.item_count = items->size();
    std::map<std::string, std::size_t> seen;

    for (std::size_t index = 0; index < items->size(); ++index) {
        const json& item = (*items)[index];
        if (!item.is_object()) {
            throw ParseError(fmt::format("item {}: not an object", index));
        }
        const json* id = find_path(item, {"cve", "CVE_data_meta", "ID"});
        if (id == nullptr || !id->is_string()) {
            throw ParseError(fmt::format("item {}: missing cve.CVE_data_meta.ID", index));
        }
        const auto& cve_id = id->get_ref<const std::string&>();
        if (!is_valid_cve_id(cve_id)) {
            throw ParseError(fmt::format("item {}: malformed CVE id '{}'", index, cve_id));
        }
        if (auto [it, inserted] = seen.emplace(cve_id, index); !inserted) {
            throw IntegrityError(
                fmt::format("duplicate CVE id {} (items {} and {})", cve_id, it->second, index));
        }

        auto cwe_ids = parse_problem_types(item, index);
        auto score = parse_v3_score(item, index);
        if (!score) {
            result.skipped.push_back(cve_id);
            continue;
        }
        result.records.push_back(CveRecord{cve_id, *score, std::move(cwe_ids)});
    }
    return result;
}

FeedParseResult parse_nvd_feed(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(fmt::format("feed is not valid JSON: {}", e.what()));
    }
    return parse_nvd_feed(doc);
}

std::vector<CveRecord> merge_feeds(const std::vector<FeedParseResult>& feeds)
{
    std::vector<CveRecord> out;
    std::set<std::string> seen;
    for (const auto& feed : feeds) {
        for (const auto& rec : feed.records) {
            if (!seen.insert(rec.cve_id).second) {
                throw IntegrityError(fmt::format("duplicate CVE id {} across feeds", rec.cve_id));
            }
            out.push_back(rec);
        }
        for (const auto& id : feed.skipped) {
            if (!seen.insert(id).second) {
                throw IntegrityError(fmt::format("duplicate CVE id {} across feeds", id));
            }
        }
    }
    return out;
}

Dataset filter_year(const std::vector<CveRecord>& records, int year, std::string source_label,
                    std::string cutoff_date)
{
    Dataset ds;
    ds.source_label = std::move(source_label);
    ds.cutoff_date = std::move(cutoff_date);
    for (const auto& rec : records) {
        if (cve_year(rec.cve_id) == year) {
            ds.records.push_back(rec);
        }
    }
    return ds;
}

TaxonomyDocument load_taxonomy(const json& doc)
{
    if (!doc.is_object()) {
        throw ParseError("taxonomy: top level is not an object");
    }
    auto nodes = doc.find("nodes");
    if (nodes == doc.end() || !nodes->is_array()) {
        throw ParseError("taxonomy: missing nodes array");
    }

    TaxonomyDocument out;
    std::set<CweId> ids;
    for (std::size_t i = 0; i < nodes->size(); ++i) {
        const json& n = (*nodes)[i];
        try {
            TaxonomyNode node;
            node.id = n.at("id").get<CweId>();
            node.name = n.at("name").get<std::string>();
            node.abstraction = abstraction_from_string(n.at("abstraction").get<std::string>());
            node.in_view_1003 = n.at("in_view_1003").get<bool>();
            if (node.id <= 0) {
                throw ParseError(fmt::format("node {}: id must be positive", i));
            }
            if (!ids.insert(node.id).second) {
                throw IntegrityError(fmt::format("node {}: duplicate id {}", i, node.id));
            }
            out.nodes.push_back(std::move(node));
        } catch (const json::exception& e) {
            throw ParseError(fmt::format("node {}: {}", i, e.what()));
        }
    }

    auto edges = doc.find("edges");
    if (edges != doc.end()) {
        if (!edges->is_array()) {
            throw ParseError("taxonomy: edges is not an array");
        }
        for (std::size_t i = 0; i < edges->size(); ++i) {
            const json& e = (*edges)[i];
            TaxonomyEdge edge;
            try {
                edge.child = e.at("child").get<CweId>();
                edge.parent = e.at("parent").get<CweId>();
                edge.view = e.at("view").get<int>();
            } catch (const json::exception& ex) {
                throw ParseError(fmt::format("edge {}: {}", i, ex.what()));
            }
            if (!ids.contains(edge.child) || !ids.contains(edge.parent)) {
                throw IntegrityError(fmt::format("edge {}: dangling endpoint {} -> {}", i, edge.child,
                                                 edge.parent));
            }
            out.edges.push_back(edge);
        }
    }

    std::map<int, std::map<CweId, std::vector<CweId>>> by_view;
    for (const auto& e : out.edges) {
        by_view[e.view][e.child].push_back(e.parent);
    }
    for (const auto& [view, adjacency] : by_view) {
        if (auto cycle = find_cycle(adjacency); !cycle.empty()) {
            throw IntegrityError(fmt::format("cycle in view {}: {}", view, join_ids(cycle, " -> ")));
        }
    }
    return out;
}

TaxonomyDocument load_taxonomy(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(fmt::format("taxonomy is not valid JSON: {}", e.what()));
    }
    return load_taxonomy(doc);
}

json taxonomy_to_json(const TaxonomyDocument& doc)
{
    json nodes = json::array();
    for (const auto& n : doc.nodes) {
        nodes.push_back({{"id", n.id},
                         {"name", n.name},
                         {"abstraction", std::string(to_string(n.abstraction))},
                         {"in_view_1003", n.in_view_1003}});
    }
    json edges = json::array();
    for (const auto& e : doc.edges) {
        edges.push_back({{"child", e.child}, {"parent", e.parent}, {"view", e.view}});
    }
    return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

std::string dataset_line(const CveRecord& record)
{
    std::string ids;
    for (std::size_t i = 0; i < record.cwe_ids.size(); ++i) {
        if (i > 0) {
            ids += ", ";
        }
        ids += std::to_string(record.cwe_ids[i]);
    }
    return fmt::format(R"({{"cve_id": {}, "base_score": {}, "cwe_ids": [{}]}})",
                       json(record.cve_id).dump(), format_real(record.base_score), ids);
}

void write_dataset(std::ostream& out, const Dataset& dataset, std::string_view tool_comment)
{
    json meta = {{"source_label", dataset.source_label}, {"cutoff_date", dataset.cutoff_date}};
    if (!tool_comment.empty()) {
        meta["tool"] = std::string(tool_comment);
    }
    out << "# " << meta.dump() << '\n';
    for (const auto& rec : dataset.records) {
        out << dataset_line(rec) << '\n';
    }
}

Dataset read_dataset(std::istream& in)
{
    Dataset ds;
    std::set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.find_first_not_of(" \t") == std::string::npos) {
            continue;
        }
        if (line.front() == '#') {
            if (!header_seen) {
                header_seen = true;
                auto meta = json::parse(line.substr(1), nullptr, false);
                if (meta.is_object()) {
                    ds.source_label = meta.value("source_label", std::string{});
                    ds.cutoff_date = meta.value("cutoff_date", std::string{});
                }
            }
            continue;
        }
        auto obj = json::parse(line, nullptr, false);
        if (obj.is_discarded() || !obj.is_object()) {
            throw ParseError(fmt::format("dataset line {}: not a JSON object", line_no));
        }
        CveRecord rec;
        try {
            rec.cve_id = obj.at("cve_id").get<std::string>();
            const auto& score = obj.at("base_score");
            if (!score.is_number()) {
                throw ParseError(fmt::format("dataset line {}: base_score is not a number", line_no));
            }
            rec.base_score = score.get<double>();
            rec.cwe_ids = obj.at("cwe_ids").get<std::vector<CweId>>();
        } catch (const json::exception& e) {
            throw ParseError(fmt::format("dataset line {}: {}", line_no, e.what()));
        }
        if (!is_valid_cve_id(rec.cve_id)) {
            throw ParseError(fmt::format("dataset line {}: malformed CVE id '{}'", line_no, rec.cve_id));
        }
        if (!(rec.base_score >= 0.0 && rec.base_score <= 10.0)) {
            throw ParseError(fmt::format("dataset line {}: base_score outside [0, 10]", line_no));
        }
        if (std::any_of(rec.cwe_ids.begin(), rec.cwe_ids.end(), [](CweId id) { return id <= 0; })) {
            throw ParseError(fmt::format("dataset line {}: CWE ids must be positive", line_no));
        }
        const auto listed = rec.cwe_ids.size();
        sort_unique(rec.cwe_ids);
        if (rec.cwe_ids.size() != listed) {
            throw ParseError(fmt::format("dataset line {}: repeated CWE id", line_no));
        }
        if (!seen.insert(rec.cve_id).second) {
            throw IntegrityError(fmt::format("dataset line {}: duplicate CVE id {}", line_no, rec.cve_id));
        }
        ds.records.push_back(std::move(rec));
    }
    return ds;
}

} // namespace cwerank
