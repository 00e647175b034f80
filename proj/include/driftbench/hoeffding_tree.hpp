#pragma once

#include <memory>
#include <string>
#include <vector>

#include "driftbench/detectors.hpp"

namespace driftbench {

// Welford accumulator with a Gaussian CDF view, one per (feature, class)
// at each learning leaf.
struct gaussian_stats {
    double n = 0.0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        n += 1.0;
        const double delta = x - mean;
        mean += delta / n;
        m2 += delta * (x - mean);
    }
    double variance() const { return n > 1.0 ? m2 / (n - 1.0) : 0.0; }
    double stddev() const;
    double cdf(double x) const;
};

// Incremental decision tree with majority-class leaves and Gaussian numeric
// attribute observers. Splits when the info-gain lead exceeds the Hoeffding
// bound or falls under the tie threshold.
class hoeffding_tree {
public:
    struct config {
        int grace_period = 200;
        double split_confidence = 1e-7;
        double tie_threshold = 0.05;
        int candidate_thresholds = 10;
    };

    struct feature_observer {
        std::vector<gaussian_stats> per_class;
        double min = 0.0;
        double max = 0.0;
        bool seen = false;
    };

    struct node {
        int split_feature = -1;  // leaf when negative
        double split_threshold = 0.0;
        std::unique_ptr<node> left;
        std::unique_ptr<node> right;
        // owned by adaptive wrappers; plain trees leave it empty
        std::unique_ptr<drift_detector> detector;

        std::vector<double> class_counts;
        std::vector<feature_observer> observers;
        double weight_since_check = 0.0;

        bool is_leaf() const { return split_feature < 0; }
        int majority() const;
        double total_weight() const;
    };

    hoeffding_tree(int n_features, int n_classes) : hoeffding_tree(n_features, n_classes, config{}) {}
    hoeffding_tree(int n_features, int n_classes, config cfg);

    int predict(const std::vector<double>& x) const;
    void learn(const std::vector<double>& x, int y);

    int n_classes() const { return n_classes_; }
    int n_features() const { return n_features_; }
    const config& options() const { return cfg_; }

    const node* root() const { return root_.get(); }
    node* root_mutable() { return root_.get(); }
    // internal nodes visited by x, root first
    std::vector<node*> route_path(const std::vector<double>& x);
    // collapse a subtree back to a fresh learning leaf
    void replace_subtree(node* target);

    std::int64_t leaf_count() const;
    std::int64_t node_count() const;
    // exact structural dump (hexfloat), for equality checks in tests
    std::string describe() const;

    static double hoeffding_bound(double value_range, double confidence, double n);

private:
    const node* route(const std::vector<double>& x) const;
    void update_leaf(node& leaf, const std::vector<double>& x, int y);
    void try_split(node& leaf);

    config cfg_;
    int n_features_;
    int n_classes_;
    std::unique_ptr<node> root_;
};

}  // namespace driftbench
