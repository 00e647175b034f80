#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "driftbench/learners.hpp"
#include "driftbench/manifest.hpp"
#include "driftbench/stream_io.hpp"

namespace driftbench {

// worker count after applying the DRIFTBENCH_THREADS cap; requested <= 0
// means "use hardware concurrency"
int effective_threads(int requested = 0);

// runs fn(0..count-1) across a worker pool; exceptions propagate
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

struct loaded_stream {
    std::string id;
    stream_config config;
    std::vector<instance> instances;
};

struct generate_summary {
    int streams_written = 0;
    std::filesystem::path manifest_copy;
};

// one CSV + one sidecar per entry, plus a manifest copy; refuses to touch a
// non-empty directory unless force is set
generate_summary generate_streams(const manifest& m, const std::filesystem::path& out_dir,
                                  bool force, int threads = 0);

std::vector<loaded_stream> load_streams(const std::filesystem::path& dir);

struct detect_options {
    std::vector<std::string> detectors;
    std::int64_t detection_range = 4000;
    int threads = 0;
    hoeffding_tree::config tree;
};

struct run_timing {
    std::string stream_id;
    std::string algorithm;
    double wall_ms = 0.0;
};

// a fresh tree produces the error stream once per stream; every detector
// consumes the same bits
std::vector<result_row> run_detect(const std::vector<loaded_stream>& streams,
                                   const detect_options& opts,
                                   std::vector<run_timing>* timings = nullptr);

struct learn_options {
    std::vector<std::string> learners;
    int window = 500;
    int threads = 0;
    learner_options model;
};

struct learn_output {
    accuracy_row summary;
    std::vector<series_point> series;
};

std::vector<learn_output> run_learn(const std::vector<loaded_stream>& streams,
                                    const learn_options& opts,
                                    std::vector<run_timing>* timings = nullptr);

void write_timings_csv(const std::filesystem::path& path, const std::vector<run_timing>& timings);

// grouped metric tables (CSV + aligned text), a stationary TN/FP table, and
// optionally a per-category learner accuracy table
struct report_options {
    std::string group_by = "detector";  // detector|category|difficulty|speed|n_classes|n_features
};

void write_report(const std::vector<result_row>& results,
                  const std::vector<accuracy_row>& accuracy, const report_options& opts,
                  const std::filesystem::path& out_dir);

}  // namespace driftbench
