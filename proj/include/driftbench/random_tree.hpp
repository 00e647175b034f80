#pragma once

#include <vector>

#include "driftbench/stream.hpp"

namespace driftbench {

// Arena-allocated node; leaf iff feature < 0.
struct rt_node {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    int parent = -1;
    int label = -1;

    bool is_leaf() const { return feature < 0; }
    bool operator==(const rt_node&) const = default;
};

struct rt_concept {
    int n_features = 0;
    int n_classes = 0;
    std::vector<rt_node> nodes;  // nodes[0] is the root

    bool operator==(const rt_concept&) const = default;
    std::vector<int> present_classes() const;
    std::vector<int> leaves_of_class(int class_id) const;
    std::vector<int> all_leaves() const;
    int classify(const std::vector<double>& x) const;
    // axis-aligned box implied by the ancestors of a node
    void node_box(int node_id, std::vector<double>& lo, std::vector<double>& hi) const;
};

using rt_transition = concept_transition<rt_concept>;

rt_concept lerp_concepts(const rt_concept& a, const rt_concept& b, double alpha);

// Random tree grown by recursive splitting on uniform features/thresholds;
// growth stops at max_depth or stochastically past depth ceil(log2 n).
// Retries with fresh randomness until every class labels at least one leaf.
rt_concept rt_base(int n_classes, int n_features, int max_depth, rng& r);

// features uniform in [0,1]^d, label by traversal
instance rt_sample(const rt_concept& base_concept, rng& r);

// rejection-samples until the traversal yields target_class
instance rt_sample_class(const rt_concept& base_concept, int target_class, rng& r);

rt_transition rt_transform(const rt_concept& base_concept, const std::string& difficulty,
                           const drift_spec& spec, rng& r);

}  // namespace driftbench
