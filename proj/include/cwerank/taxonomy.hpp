#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cwerank/ingest.hpp"

namespace cwerank {

using ViewSet = std::set<int>;

inline const ViewSet kDefaultViews{1000, 1008};

enum class AbstractionPartition { High, Low, All };

std::string_view to_string(AbstractionPartition p);
AbstractionPartition partition_from_string(std::string_view s);
bool partition_contains(AbstractionPartition p, Abstraction a);

/// Immutable CWE hierarchy with per-view child -> parent adjacency.
class TaxonomyGraph {
public:
    TaxonomyGraph() = default;
    explicit TaxonomyGraph(const TaxonomyDocument& doc);

    bool contains(CweId id) const { return nodes_.contains(id); }
    const TaxonomyNode& node(CweId id) const;
    const std::map<CweId, TaxonomyNode>& nodes() const { return nodes_; }

    /// Direct parents of `id` in any of `views`.
    std::set<CweId> parents(CweId id, const ViewSet& views) const;

    /// Views that carry at least one edge.
    ViewSet views() const;

    /// Throws IntegrityError naming a cycle if the union of `views` is
    /// cyclic.
    void check_acyclic(const ViewSet& views) const;

    std::string name_of(CweId id) const;

private:
    std::map<CweId, TaxonomyNode> nodes_;
    std::map<std::pair<CweId, int>, std::set<CweId>> parent_adjacency_;
};

/// Strict ancestors of `cwe` reachable through edges of `views`.
std::set<CweId> ancestors(const TaxonomyGraph& graph, CweId cwe, const ViewSet& views);

/// cwe id -> set of CVE ids counted toward it.
struct PropagationMap {
    std::map<CweId, std::set<std::string>> assignments;

    bool operator==(const PropagationMap&) const = default;
};

struct PropagationResult {
    PropagationMap map;
    std::vector<std::string> warnings; // "WARN unknown-cwe <id> in <cve_id>"
};

/// Direct CVE -> CWE assignment, optionally closed upward over `views`.
PropagationResult propagate(const Dataset& dataset, const TaxonomyGraph& graph,
                            const ViewSet& views, bool enabled);

/// Upward closure of an existing map. Idempotent.
PropagationMap propagate(const PropagationMap& map, const TaxonomyGraph& graph,
                         const ViewSet& views);

std::set<CweId> partition_nodes(const TaxonomyGraph& graph, AbstractionPartition partition,
                                bool restrict_to_1003);

} // namespace cwerank
