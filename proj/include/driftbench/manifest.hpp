#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "driftbench/stream.hpp"

namespace driftbench {

inline constexpr const char* kToolkitVersion = "0.1.0";

// One grid row: a difficulty under one generator and category, with its
// permitted drift speeds.
struct benchmark_row {
    generator_kind generator;
    drift_category category;
    std::string difficulty;
    bool sudden = true;
    bool gradual = true;
    bool incremental = false;
};

const std::vector<benchmark_row>& benchmark_rows();

struct manifest_params {
    std::vector<generator_kind> generators{generator_kind::rbf, generator_kind::rt};
    std::vector<drift_category> categories{
        drift_category::single_class_local, drift_category::single_class_global,
        drift_category::multi_class_local, drift_category::multi_class_global};
    std::vector<int> class_counts{2, 3, 5, 10};
    std::vector<int> feature_counts{2, 5, 10};
    std::vector<std::string> difficulties;  // empty selects every difficulty
    std::vector<drift_speed> speeds{drift_speed::sudden, drift_speed::gradual,
                                    drift_speed::incremental};
    // affected-class counts for multi-class rows, capped by n_classes
    std::vector<int> affected_class_counts{2, 3, 5, 10};
    int seeds_per_config = 1;
    std::uint64_t base_seed = 42;
    std::int64_t length = 20000;
    std::int64_t position = 10000;
    std::int64_t width = 2000;
    std::int64_t reappear_width = 2000;
    std::int64_t detection_range = 4000;
    double local_scope = 0.5;
    bool stationary_twins = false;
    int rbf_centroids_per_class = 4;
    int rt_max_depth = 6;
};

struct manifest_entry {
    std::string id;
    stream_config config;
};

struct manifest {
    std::string toolkit_version = kToolkitVersion;
    manifest_params params;
    std::vector<manifest_entry> entries;
};

// Cartesian enumeration of the benchmark grid. Deterministic: identical
// params rebuild identical ids and seeds.
manifest enumerate_manifest(const manifest_params& params);

std::string manifest_to_json(const manifest& m);
manifest manifest_from_json(const std::string& text);

}  // namespace driftbench
