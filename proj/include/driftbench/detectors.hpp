#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <string>
#include <vector>

#include "driftbench/random.hpp"
#include "driftbench/stream.hpp"

namespace driftbench {

enum class detector_status { stable, warning, drift };

// Shared contract: feed the misclassification bit (1 = error) one instance
// at a time. Detectors with reset_on_drift clear all state after reporting
// a drift, so the next update behaves like a fresh instance.
class drift_detector {
public:
    virtual ~drift_detector() = default;
    virtual detector_status update(int error_bit) = 0;
    virtual void reset() = 0;
    virtual std::string name() const = 0;
};

// Adaptive windowing over an exponential histogram. Cuts are tested with
// eps = sqrt(ln(4/delta') / (2m)), delta' = delta / window_length,
// m = 1 / (1/n0 + 1/n1).
class adwin_detector final : public drift_detector {
public:
    struct config {
        double delta = 0.002;
        int fanout = 5;  // buckets kept per row before a merge
        bool reset_on_drift = true;
    };
    adwin_detector() : adwin_detector(config{}) {}
    explicit adwin_detector(config cfg);
    detector_status update(int error_bit) override;
    void reset() override;
    std::string name() const override { return "adwin"; }

    double window_mean() const { return total_count_ > 0 ? total_sum_ / static_cast<double>(total_count_) : 0.0; }
    std::int64_t window_size() const { return total_count_; }
    // true when the most recent drift saw the newer side carrying the
    // higher error mean
    bool last_change_increased() const { return last_increase_; }

private:
    struct bucket {
        double sum = 0.0;
    };
    void insert(int error_bit);
    void drop_oldest_bucket();
    bool scan_cuts();

    config cfg_;
    std::vector<std::deque<bucket>> rows_;
    std::int64_t total_count_ = 0;
    double total_sum_ = 0.0;
    bool last_increase_ = false;
};

// Error-rate tracker with minimum (p + s) reference levels.
class ddm_detector final : public drift_detector {
public:
    struct config {
        double warning_level = 2.0;
        double drift_level = 3.0;
        int min_instances = 30;
        bool reset_on_drift = true;
    };
    ddm_detector() : ddm_detector(config{}) {}
    explicit ddm_detector(config cfg);
    detector_status update(int error_bit) override;
    void reset() override;
    std::string name() const override { return "ddm"; }

private:
    config cfg_;
    std::int64_t n_ = 0;
    double p_ = 0.0;
    double p_min_ = 0.0, s_min_ = 0.0, ps_min_ = 0.0;
    bool has_min_ = false;
};

// Monitors the spacing between consecutive errors.
class eddm_detector final : public drift_detector {
public:
    struct config {
        double warning_ratio = 0.95;
        double drift_ratio = 0.90;
        int min_errors = 30;
        bool reset_on_drift = true;
    };
    eddm_detector() : eddm_detector(config{}) {}
    explicit eddm_detector(config cfg);
    detector_status update(int error_bit) override;
    void reset() override;
    std::string name() const override { return "eddm"; }

private:
    config cfg_;
    std::int64_t n_ = 0;
    std::int64_t num_errors_ = 0;
    std::int64_t last_error_at_ = -1;
    double dist_n_ = 0.0, dist_mean_ = 0.0, dist_m2_ = 0.0;
    double m2s_max_ = 0.0;
};

// One-sided Hoeffding-bound test against the prefix with the lowest upper
// confidence bound (A-test variant).
class hddm_detector final : public drift_detector {
public:
    struct config {
        double drift_confidence = 0.001;
        double warning_confidence = 0.005;
        bool reset_on_drift = true;
    };
    hddm_detector() : hddm_detector(config{}) {}
    explicit hddm_detector(config cfg);
    detector_status update(int error_bit) override;
    void reset() override;
    std::string name() const override { return "hddm"; }

private:
    bool mean_increased(double confidence) const;

    config cfg_;
    double total_n_ = 0.0, total_c_ = 0.0;
    double min_n_ = 0.0, min_c_ = 0.0;
};

// DDM statistics with periodic recomputation over a ring of recent bits.
class rddm_detector final : public drift_detector {
public:
    struct config {
        double warning_level = 1.773;
        double drift_level = 2.258;
        int min_instances = 30;
        std::int64_t max_concept = 40000;
        std::int64_t warn_limit = 1400;
        std::int64_t min_stable = 5144;  // ring capacity
        bool reset_on_drift = true;
    };
    rddm_detector() : rddm_detector(config{}) {}
    explicit rddm_detector(config cfg);
    detector_status update(int error_bit) override;
    void reset() override;
    std::string name() const override { return "rddm"; }

    std::int64_t recompute_count() const { return recomputations_; }
    std::int64_t forced_drift_count() const { return forced_drifts_; }

private:
    void push_ring(int error_bit);
    void recompute_from_ring();

    config cfg_;
    std::deque<std::uint8_t> ring_;
    std::int64_t n_ = 0;
    double p_ = 0.0;
    double p_min_ = 0.0, s_min_ = 0.0, ps_min_ = 0.0;
    bool has_min_ = false;
    std::int64_t warning_streak_ = 0;
    std::int64_t recomputations_ = 0;
    std::int64_t forced_drifts_ = 0;
};

// EWMA control chart; the limit polynomial targets ARL0 = 400 at
// lambda = 0.2.
class ecdd_detector final : public drift_detector {
public:
    struct config {
        double lambda = 0.2;
        double warning_fraction = 0.5;
        bool reset_on_drift = true;
    };
    ecdd_detector() : ecdd_detector(config{}) {}
    explicit ecdd_detector(config cfg);
    detector_status update(int error_bit) override;
    void reset() override;
    std::string name() const override { return "ecdd"; }

    double z() const { return z_; }

private:
    config cfg_;
    std::int64_t t_ = 0;
    double p_hat_ = 0.0;
    double z_ = 0.0;
};

// Page-Hinkley cumulative test for an increase in the error mean.
class ph_detector final : public drift_detector {
public:
    struct config {
        double delta = 0.005;
        double lambda = 50.0;
        int min_instances = 30;
        bool reset_on_drift = true;
    };
    ph_detector() : ph_detector(config{}) {}
    explicit ph_detector(config cfg);
    detector_status update(int error_bit) override;
    void reset() override;
    std::string name() const override { return "ph"; }

private:
    config cfg_;
    std::int64_t n_ = 0;
    double mean_ = 0.0;
    double m_ = 0.0;
    double m_min_ = 0.0;
};

// Two-sample Kolmogorov-Smirnov test of the newest stat_size observations
// against a random draw from the rest of the window.
class kswin_detector final : public drift_detector {
public:
    struct config {
        int window_size = 100;
        int stat_size = 30;
        double alpha = 0.005;
        std::uint64_t seed = 1;
        bool reset_on_drift = true;
    };
    kswin_detector() : kswin_detector(config{}) {}
    explicit kswin_detector(config cfg);
    detector_status update(int error_bit) override;
    void reset() override;
    std::string name() const override { return "kswin"; }

private:
    config cfg_;
    std::deque<double> window_;
    rng rng_;
};

double ks_statistic(std::vector<double> a, std::vector<double> b);

// Two-proportion z-test (with continuity correction) of the recent window
// against the preceding stream.
class stepd_detector final : public drift_detector {
public:
    struct config {
        int window_size = 30;
        double warning_alpha = 0.05;
        double drift_alpha = 0.003;
        bool reset_on_drift = true;
    };
    stepd_detector() : stepd_detector(config{}) {}
    explicit stepd_detector(config cfg);
    detector_status update(int error_bit) override;
    void reset() override;
    std::string name() const override { return "stepd"; }

private:
    config cfg_;
    std::deque<std::uint8_t> recent_;
    std::int64_t recent_errors_ = 0;
    std::int64_t older_n_ = 0;
    std::int64_t older_errors_ = 0;
};

const std::vector<std::string>& detector_names();
std::unique_ptr<drift_detector> make_detector(const std::string& name, std::uint64_t seed = 1);

}  // namespace driftbench
