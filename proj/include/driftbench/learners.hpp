#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "driftbench/hoeffding_tree.hpp"
#include "driftbench/stream.hpp"

namespace driftbench {

// predict-then-train protocol: step() returns the prediction made before
// the instance was learned
class learner {
public:
    virtual ~learner() = default;
    virtual int step(const instance& inst) = 0;
};

struct learner_options {
    hoeffding_tree::config tree;
    adwin_detector::config detector;
    bool adapt_enabled = true;
    // adaptive subtree replacement fires only when the detected change
    // raised the error; plain shrink-detections on improvements would wipe
    // healthy branches during normal learning
    bool replace_on_error_increase_only = true;
};

class ht_learner final : public learner {
public:
    ht_learner(int n_features, int n_classes, learner_options opts = {});
    int step(const instance& inst) override;
    const hoeffding_tree& tree() const { return tree_; }

private:
    hoeffding_tree tree_;
};

// Retrains a background tree while the detector is in its warning zone and
// swaps the model out entirely on drift.
class htdw_learner final : public learner {
public:
    htdw_learner(int n_features, int n_classes, learner_options opts = {});
    int step(const instance& inst) override;
    const hoeffding_tree& tree() const { return foreground_; }

private:
    learner_options opts_;
    int n_features_;
    int n_classes_;
    hoeffding_tree foreground_;
    std::optional<hoeffding_tree> background_;
    adwin_detector detector_;
};

// One detector per internal node; a firing node collapses its subtree to a
// fresh leaf while the rest of the tree keeps its statistics.
class aht_learner final : public learner {
public:
    aht_learner(int n_features, int n_classes, learner_options opts = {});
    int step(const instance& inst) override;
    const hoeffding_tree& tree() const { return tree_; }

private:
    learner_options opts_;
    hoeffding_tree tree_;
};

const std::vector<std::string>& learner_names();
std::unique_ptr<learner> make_learner(const std::string& name, int n_features, int n_classes,
                                      learner_options opts = {});

struct series_point {
    std::int64_t t = 0;
    double accuracy = 0.0;
};

struct prequential_result {
    double overall_accuracy = 0.0;
    std::vector<std::uint8_t> error_bits;  // 1 = misclassified
    std::vector<series_point> series;      // sliding-window accuracy every `window`
    double series_mean = 0.0;
    double series_std = 0.0;
};

prequential_result prequential_run(const std::vector<instance>& stream, learner& model,
                                   int window = 500);

}  // namespace driftbench
