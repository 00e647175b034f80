#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "driftbench/evaluation.hpp"
#include "driftbench/stream.hpp"

namespace driftbench {

inline constexpr int kFormatVersion = 1;
inline constexpr const char* kResultsTag = "# driftbench-results v1";
inline constexpr const char* kAccuracyTag = "# driftbench-accuracy v1";

class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// header f0,...,f{d-1},class; floats at 6 decimals; LF line endings
void write_stream_csv(const std::filesystem::path& path, const std::vector<instance>& instances,
                      int n_features);
std::vector<instance> read_stream_csv(const std::filesystem::path& path);

void write_sidecar_json(const std::filesystem::path& path, const std::string& id,
                        const stream_config& config);
std::pair<std::string, stream_config> read_sidecar_json(const std::filesystem::path& path);

struct result_row {
    std::string stream_id;
    std::string detector;
    std::string category = "stationary";
    std::string difficulty = "none";
    std::string speed = "none";
    int n_classes = 0;
    int n_features = 0;
    confusion_counts counts;
    std::optional<std::int64_t> first_alarm;
};

void write_results_csv(const std::filesystem::path& path, const std::vector<result_row>& rows);
std::vector<result_row> read_results_csv(const std::filesystem::path& path);

struct accuracy_row {
    std::string stream_id;
    std::string learner;
    std::string category = "stationary";
    std::string difficulty = "none";
    std::string speed = "none";
    int n_classes = 0;
    int n_features = 0;
    double overall_accuracy = 0.0;
    double window_mean = 0.0;
    double window_std = 0.0;
};

void write_accuracy_csv(const std::filesystem::path& path, const std::vector<accuracy_row>& rows);
std::vector<accuracy_row> read_accuracy_csv(const std::filesystem::path& path);

}  // namespace driftbench
