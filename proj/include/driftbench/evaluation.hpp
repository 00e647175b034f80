#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace driftbench {

struct ground_truth {
    std::optional<std::int64_t> drift_position;  // empty for stationary streams
    std::int64_t detection_range = 4000;
};

struct detection_log {
    std::string stream_id;
    std::string detector_id;
    std::vector<std::int64_t> alarms;    // drift timestamps, strictly increasing
    std::vector<std::int64_t> warnings;  // logged but not scored
};

struct confusion_counts {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;
    std::int64_t tn = 0;
    std::int64_t delay_sum = 0;

    confusion_counts& operator+=(const confusion_counts& other) {
        tp += other.tp;
        fp += other.fp;
        fn += other.fn;
        tn += other.tn;
        delay_sum += other.delay_sum;
        return *this;
    }
};

// Drifting stream: the first alarm inside [i_d, i_d + R] is the one true
// positive and contributes its delay; later in-range alarms are ignored and
// out-of-range alarms are false positives. Stationary stream: every alarm
// is a false positive and TN = 1 iff there are none.
confusion_counts score_detections(const detection_log& log, const ground_truth& truth);

double precision(const confusion_counts& c);
double recall(const confusion_counts& c);
double f1(const confusion_counts& c);
std::optional<double> mean_delay(const confusion_counts& c);

// micro-average: counts are pooled per group before the metrics are applied
template <typename Row>
std::map<std::string, confusion_counts> aggregate(
    const std::vector<Row>& rows, const std::function<std::string(const Row&)>& key,
    const std::function<confusion_counts(const Row&)>& counts) {
    std::map<std::string, confusion_counts> groups;
    for (const auto& row : rows) groups[key(row)] += counts(row);
    return groups;
}

}  // namespace driftbench
