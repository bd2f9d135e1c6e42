#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace cwerank {

using CweId = int;

/// One vulnerability with its CVSS v3 base score and mapped weaknesses.
struct CveRecord {
    std::string cve_id;
    double base_score = 0.0;
    std::vector<CweId> cwe_ids; // sorted, unique

    bool operator==(const CveRecord&) const = default;
};

struct Dataset {
    std::vector<CveRecord> records;
    std::string source_label;
    std::string cutoff_date;

    bool operator==(const Dataset&) const = default;
};

/// Result of reading one NVD feed document.
struct FeedParseResult {
    std::vector<CveRecord> records;
    std::vector<std::string> skipped; // ids of items without a v3 base score
    std::size_t item_count = 0;
};

enum class Abstraction { Pillar, Class, Base, Variant, Compound };

std::string_view to_string(Abstraction a);
Abstraction abstraction_from_string(std::string_view s);

struct TaxonomyNode {
    CweId id = 0;
    std::string name;
    Abstraction abstraction = Abstraction::Base;
    bool in_view_1003 = false;

    bool operator==(const TaxonomyNode&) const = default;
};

struct TaxonomyEdge {
    CweId child = 0;
    CweId parent = 0;
    int view = 0;

    bool operator==(const TaxonomyEdge&) const = default;
};

struct TaxonomyDocument {
    std::vector<TaxonomyNode> nodes;
    std::vector<TaxonomyEdge> edges;
};

/// True when `id` has the form CVE-<4-digit year>-<digits>.
bool is_valid_cve_id(std::string_view id);

/// Year field of a CVE identifier; nullopt if the id is malformed.
std::optional<int> cve_year(std::string_view id);

/// Parses an NVD 1.1 JSON feed (top-level "CVE_Items" array).
///
/// Items without impact.baseMetricV3.cvssV3.baseScore are skipped and
/// listed in the result. `CWE-<n>` problem-type values map to n; the
/// NVD-CWE-noinfo / NVD-CWE-Other placeholders are dropped. Structural
/// problems raise ParseError naming the item index; a CVE id seen twice
/// raises IntegrityError.
FeedParseResult parse_nvd_feed(const nlohmann::json& feed);
FeedParseResult parse_nvd_feed(std::string_view text);
inline FeedParseResult parse_nvd_feed(const std::string& text) { return parse_nvd_feed(std::string_view(text)); }
inline FeedParseResult parse_nvd_feed(const char* text) { return parse_nvd_feed(std::string_view(text)); }

/// Merges the records of several feeds, rejecting duplicate ids across
/// feeds.
std::vector<CveRecord> merge_feeds(const std::vector<FeedParseResult>& feeds);

Dataset filter_year(const std::vector<CveRecord>& records, int year,
                    std::string source_label, std::string cutoff_date);

/// Validates and loads a taxonomy document. Throws ParseError on schema
/// problems and IntegrityError on duplicate ids, dangling edges or a
/// cycle inside one view.
TaxonomyDocument load_taxonomy(const nlohmann::json& doc);
TaxonomyDocument load_taxonomy(std::string_view text);
inline TaxonomyDocument load_taxonomy(const std::string& text) { return load_taxonomy(std::string_view(text)); }
inline TaxonomyDocument load_taxonomy(const char* text) { return load_taxonomy(std::string_view(text)); }
nlohmann::json taxonomy_to_json(const TaxonomyDocument& doc);

// Normalized dataset format: an optional leading `#` metadata line
// followed by one JSON object per line.
void write_dataset(std::ostream& out, const Dataset& dataset, std::string_view tool_comment = {});
Dataset read_dataset(std::istream& in);
std::string dataset_line(const CveRecord& record);

} // namespace cwerank
