#include "cwerank/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "cwerank/error.hpp"

namespace cwerank {

namespace {

// std distributions are implementation-defined; these are not.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    std::size_t below(std::size_t bound) { return static_cast<std::size_t>(engine_() % bound); }

private:
    std::mt19937_64 engine_;
};

} // namespace

SyntheticPopulation generate_population(const SyntheticConfig& config)
{
    if (config.cwe_count < 2 || config.high_count < 0 || config.high_count > config.cwe_count) {
        throw ComputationError("synthetic population: invalid CWE counts");
    }
    if (!(config.mean_low <= config.mean_high) || config.mean_low < 0.0 || config.mean_high > 10.0) {
        throw ComputationError("synthetic population: mean range must lie within [0, 10]");
    }

    Rng rng(config.seed);
    const auto count = static_cast<std::size_t>(config.cwe_count);

    std::vector<long> rank(count);
    std::iota(rank.begin(), rank.end(), 1L);
    for (std::size_t i = count - 1; i > 0; --i) {
        std::swap(rank[i], rank[rng.below(i + 1)]);
    }

    SyntheticPopulation pop;
    pop.dataset.source_label = fmt::format("synthetic seed={}", config.seed);
    pop.dataset.cutoff_date = "2019-12-31";

    long next_cve = 1;
    for (std::size_t i = 0; i < count; ++i) {
        const CweId id = static_cast<CweId>(i + 1);
        TaxonomyNode node;
        node.id = id;
        node.name = fmt::format("Synthetic weakness {}", id);
        node.in_view_1003 = true;
        if (i < 2 && static_cast<int>(i) < config.high_count) {
            node.abstraction = Abstraction::Pillar;
        } else if (static_cast<int>(i) < config.high_count) {
            node.abstraction = Abstraction::Class;
        } else {
            node.abstraction = Abstraction::Base;
        }
        pop.taxonomy.nodes.push_back(node);

        const double q = config.zipf_offset;
        const double r = static_cast<double>(rank[i]);
        const long n = std::max(
            1L, static_cast<long>(std::floor(config.zipf_scale * std::pow((1.0 + q) / (r + q), config.zipf_exponent))));
        const double mean = rng.uniform(config.mean_low, config.mean_high);
        for (long j = 0; j < n; ++j) {
            double score = rng.uniform(mean - config.score_spread, mean + config.score_spread);
            score = std::clamp(std::round(score * 10.0) / 10.0, 0.0, 10.0);
            pop.dataset.records.push_back({fmt::format("CVE-2019-{:05d}", next_cve++), score, {id}});
        }
    }
    return pop;
}

} // namespace cwerank
