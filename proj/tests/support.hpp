#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "cwerank/ingest.hpp"
#include "cwerank/taxonomy.hpp"

namespace cwerank::testing {

inline std::string fixture_path(const std::string& name)
{
    return std::string(CWERANK_FIXTURE_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string& name)
{
    std::ifstream in(fixture_path(name), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Dataset load_dataset_fixture(const std::string& name)
{
    std::istringstream in(read_fixture(name));
    return read_dataset(in);
}

inline TaxonomyGraph load_graph_fixture(const std::string& name)
{
    return TaxonomyGraph(load_taxonomy(read_fixture(name)));
}

inline TaxonomyNode node(CweId id, Abstraction a, bool in_1003 = true)
{
    return {id, "CWE-" + std::to_string(id), a, in_1003};
}

inline CveRecord cve(std::string id, double score, std::vector<CweId> cwes)
{
    return {std::move(id), score, std::move(cwes)};
}

} // namespace cwerank::testing
