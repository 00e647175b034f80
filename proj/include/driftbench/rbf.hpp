#pragma once

#include <vector>

#include "driftbench/stream.hpp"

namespace driftbench {

struct rbf_centroid {
    std::vector<double> center;
    double stddev = 0.05;
    double weight = 1.0;

    bool operator==(const rbf_centroid&) const = default;
};

// One Gaussian-mixture component set per class; classes with no centroids
// are absent from the base_concept.
struct rbf_concept {
    int n_features = 0;
    std::vector<std::vector<rbf_centroid>> classes;

    bool operator==(const rbf_concept&) const = default;
    std::vector<int> present_classes() const;
};

using rbf_transition = concept_transition<rbf_concept>;

rbf_concept lerp_concepts(const rbf_concept& a, const rbf_concept& b, double alpha);

// k_per_class centroids per class, centers uniform in [0,1]^d, stddev
// uniform in [0.02, 0.08], weight uniform in [0.5, 1.5].
rbf_concept rbf_base(int n_classes, int n_features, int k_per_class, rng& r);

// weight-proportional centroid choice, Gaussian jitter, clipped to [0,1]^d
instance rbf_sample(const rbf_concept& base_concept, int class_id, rng& r);

rbf_transition rbf_transform(const rbf_concept& base_concept, const std::string& difficulty,
                             const drift_spec& spec, rng& r);

}  // namespace driftbench
