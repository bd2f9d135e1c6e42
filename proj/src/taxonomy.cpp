#include "cwerank/taxonomy.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "cwerank/error.hpp"

namespace cwerank {

std::string_view to_string(AbstractionPartition p)
{
    switch (p) {
    case AbstractionPartition::High: return "high";
    case AbstractionPartition::Low: return "low";
    case AbstractionPartition::All: return "all";
    }
    return "all";
}

AbstractionPartition partition_from_string(std::string_view s)
{
    if (s == "high" || s == "High") return AbstractionPartition::High;
    if (s == "low" || s == "Low") return AbstractionPartition::Low;
    if (s == "all" || s == "All") return AbstractionPartition::All;
    throw ParseError(fmt::format("unknown abstraction partition '{}'", s));
}

bool partition_contains(AbstractionPartition p, Abstraction a)
{
    const bool high = a == Abstraction::Pillar || a == Abstraction::Class;
    switch (p) {
    case AbstractionPartition::High: return high;
    case AbstractionPartition::Low: return !high;
    case AbstractionPartition::All: return true;
    }
    return false;
}

TaxonomyGraph::TaxonomyGraph(const TaxonomyDocument& doc)
{
    for (const auto& n : doc.nodes) {
        if (!nodes_.emplace(n.id, n).second) {
            throw IntegrityError(fmt::format("duplicate node id {}", n.id));
        }
    }
    for (const auto& e : doc.edges) {
        if (!contains(e.child) || !contains(e.parent)) {
            throw IntegrityError(fmt::format("dangling edge {} -> {}", e.child, e.parent));
        }
        parent_adjacency_[{e.child, e.view}].insert(e.parent);
    }
    for (int view : views()) {
        check_acyclic({view});
    }
}

const TaxonomyNode& TaxonomyGraph::node(CweId id) const
{
    auto it = nodes_.find(id);
    if (it == nodes_.end()) {
        throw IntegrityError(fmt::format("unknown CWE id {}", id));
    }
    return it->second;
}

std::string TaxonomyGraph::name_of(CweId id) const
{
    auto it = nodes_.find(id);
    return it == nodes_.end() ? std::string{} : it->second.name;
}

std::set<CweId> TaxonomyGraph::parents(CweId id, const ViewSet& views) const
{
    std::set<CweId> out;
    for (int view : views) {
        if (auto it = parent_adjacency_.find({id, view}); it != parent_adjacency_.end()) {
            out.insert(it->second.begin(), it->second.end());
        }
    }
    return out;
}

ViewSet TaxonomyGraph::views() const
{
    ViewSet out;
    for (const auto& [key, _] : parent_adjacency_) {
        out.insert(key.second);
    }
    return out;
}

void TaxonomyGraph::check_acyclic(const ViewSet& views) const
{
    enum class Mark { Grey, Black };
    std::map<CweId, Mark> mark;
    std::vector<CweId> stack;

    auto visit = [&](auto&& self, CweId node) -> void {
        mark[node] = Mark::Grey;
        stack.push_back(node);
        for (CweId p : parents(node, views)) {
            auto it = mark.find(p);
            if (it == mark.end()) {
                self(self, p);
            } else if (it->second == Mark::Grey) {
                auto from = std::find(stack.begin(), stack.end(), p);
                std::string path;
                for (auto i = from; i != stack.end(); ++i) {
                    path += std::to_string(*i) + " -> ";
                }
                path += std::to_string(p);
                throw IntegrityError(fmt::format("cycle over views {{{}}}: {}", fmt::join(views, ","), path));
            }
        }
        stack.pop_back();
        mark[node] = Mark::Black;
    };

    for (const auto& [id, _] : nodes_) {
        if (!mark.contains(id)) {
            visit(visit, id);
        }
    }
}

std::set<CweId> ancestors(const TaxonomyGraph& graph, CweId cwe, const ViewSet& views)
{
    if (!graph.contains(cwe)) {
        throw IntegrityError(fmt::format("unknown CWE id {}", cwe));
    }
    std::set<CweId> seen;
    std::vector<CweId> frontier{cwe};
    while (!frontier.empty()) {
        CweId cur = frontier.back();
        frontier.pop_back();
        for (CweId p : graph.parents(cur, views)) {
            if (p != cwe && seen.insert(p).second) {
                frontier.push_back(p);
            }
        }
    }
    return seen;
}

PropagationMap propagate(const PropagationMap& map, const TaxonomyGraph& graph, const ViewSet& views)
{
    graph.check_acyclic(views);
    PropagationMap out = map;
    std::map<CweId, std::set<CweId>> closure_cache;
    for (const auto& [cwe, cves] : map.assignments) {
        if (!graph.contains(cwe)) {
            continue;
        }
        auto [it, inserted] = closure_cache.try_emplace(cwe);
        if (inserted) {
            it->second = ancestors(graph, cwe, views);
        }
        for (CweId anc : it->second) {
            out.assignments[anc].insert(cves.begin(), cves.end());
        }
    }
    return out;
}

PropagationResult propagate(const Dataset& dataset, const TaxonomyGraph& graph, const ViewSet& views,
                            bool enabled)
{
    PropagationResult result;
    for (const auto& rec : dataset.records) {
        for (CweId id : rec.cwe_ids) {
            if (!graph.contains(id)) {
                result.warnings.push_back(fmt::format("WARN unknown-cwe {} in {}", id, rec.cve_id));
                continue;
            }
            result.map.assignments[id].insert(rec.cve_id);
        }
    }
    if (enabled) {
        result.map = propagate(result.map, graph, views);
    }
    return result;
}

std::set<CweId> partition_nodes(const TaxonomyGraph& graph, AbstractionPartition partition,
                                bool restrict_to_1003)
{
    std::set<CweId> out;
    for (const auto& [id, node] : graph.nodes()) {
        if (!partition_contains(partition, node.abstraction)) {
            continue;
        }
        if (restrict_to_1003 && !node.in_view_1003) {
            continue;
        }
        out.insert(id);
    }
    return out;
}

} // namespace cwerank
