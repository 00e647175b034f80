#include "driftbench/evaluation.hpp"

namespace driftbench {

confusion_counts score_detections(const detection_log& log, const ground_truth& truth) {
    confusion_counts counts;
    if (!truth.drift_position) {
        counts.fp = static_cast<std::int64_t>(log.alarms.size());
        counts.tn = log.alarms.empty() ? 1 : 0;
        return counts;
    }

    const std::int64_t lo = *truth.drift_position;
    const std::int64_t hi = lo + truth.detection_range;
    bool hit = false;
    for (std::int64_t alarm : log.alarms) {
        if (alarm >= lo && alarm <= hi) {
            if (!hit) {
                hit = true;
                counts.tp = 1;
                counts.delay_sum = alarm - lo;
            }
            // duplicates inside the range are ignored
        } else {
            ++counts.fp;
        }
    }
    if (!hit) counts.fn = 1;
    return counts;
}

double precision(const confusion_counts& c) {
    const std::int64_t denom = c.tp + c.fp;
    return denom > 0 ? static_cast<double>(c.tp) / static_cast<double>(denom) : 0.0;
}

double recall(const confusion_counts& c) {
    const std::int64_t denom = c.tp + c.fn;
    return denom > 0 ? static_cast<double>(c.tp) / static_cast<double>(denom) : 0.0;
}

double f1(const confusion_counts& c) {
    const double p = precision(c);
    const double r = recall(c);
    return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
}

std::optional<double> mean_delay(const confusion_counts& c) {
    if (c.tp <= 0) return std::nullopt;
    return static_cast<double>(c.delay_sum) / static_cast<double>(c.tp);
}

}  // namespace driftbench
