#pragma once

#include <cstdint>

#include "cwerank/ingest.hpp"

namespace cwerank {

/// Parameters of a synthetic CWE population: Zipf-Mandelbrot frequencies
/// n_r = scale * ((1 + offset) / (r + offset))^exponent over randomly
/// permuted ranks, and per-CWE target means drawn uniformly and
/// independently of frequency. There are no taxonomy edges; the first
/// `high_count` ids are classes (two of them pillars), the rest bases.
struct SyntheticConfig {
    int cwe_count = 124;
    int high_count = 38;
    double zipf_exponent = 3.0;
    double zipf_offset = 5.0;
    double zipf_scale = 5000.0;
    double mean_low = 5.0;
    double mean_high = 9.5;
    double score_spread = 1.0; // per-CVE scores uniform in mean +- spread
    std::uint64_t seed = 2019;
};

struct SyntheticPopulation {
    Dataset dataset;
    TaxonomyDocument taxonomy;
};

SyntheticPopulation generate_population(const SyntheticConfig& config);

} // namespace cwerank
