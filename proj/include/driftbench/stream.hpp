#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "driftbench/random.hpp"

namespace driftbench {

class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class generation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct instance {
    std::vector<double> features;
    int label = 0;
};

enum class generator_kind { rbf, rt };

enum class drift_speed { sudden, gradual, incremental };

enum class drift_category {
    single_class_local,
    single_class_global,
    multi_class_local,
    multi_class_global,
};

std::string to_string(generator_kind g);
std::string to_string(drift_speed s);
std::string to_string(drift_category c);
generator_kind generator_from_string(const std::string& s);
drift_speed speed_from_string(const std::string& s);
drift_category category_from_string(const std::string& s);

inline bool is_local(drift_category c) {
    return c == drift_category::single_class_local || c == drift_category::multi_class_local;
}
inline bool is_multi_class(drift_category c) {
    return c == drift_category::multi_class_local || c == drift_category::multi_class_global;
}

struct drift_spec {
    drift_category category = drift_category::single_class_global;
    std::string difficulty;
    drift_speed speed = drift_speed::sudden;
    std::int64_t position = 10000;
    std::int64_t width = 2000;  // 0 for sudden
    std::vector<int> affected_classes;
    double scope_fraction = 1.0;  // 1.0 for global, <1 for local
    // how long a "disappeared" concept stays away before it returns
    std::int64_t reappear_width = 2000;

    void validate() const;
};

struct stream_config {
    generator_kind generator = generator_kind::rbf;
    int n_classes = 2;
    int n_features = 2;
    std::int64_t length = 20000;
    std::uint64_t seed = 1;
    std::optional<drift_spec> drift;
    int rbf_centroids_per_class = 4;
    int rt_max_depth = 6;

    void validate() const;
};

// Which concept snapshot is active at a given instant.
enum class concept_phase { pre, post, intermediate, interpolated };

// Probability of drawing the new concept at time t during a gradual drift.
// Sigmoid 1 / (1 + e^(-4 (t - p) / w)).
double mixing_probability(std::int64_t t, const drift_spec& spec);

// Linear ramp for incremental drifts: 0 at p - w/2, 1 at p + w/2.
double interpolation_coefficient(std::int64_t t, const drift_spec& spec);

// pre/post/intermediate selection shared by both generators. Consumes one
// uniform draw only inside a gradual mixing window, so configs that differ
// only in what happens after the drift emit identical prefixes.
struct phase_decision {
    concept_phase phase = concept_phase::pre;
    double alpha = 0.0;  // set for interpolated
};
phase_decision decide_phase(std::int64_t t, const drift_spec& spec, rng& sample_rng);

// A realized drift: snapshots plus an optional interpolation path and an
// optional window during which a "disappeared" intermediate concept is live.
template <typename ConceptT>
struct concept_transition {
    ConceptT pre;
    ConceptT post;
    std::optional<ConceptT> intermediate;
    // endpoints with matching topology; lerping them realizes intermediate
    // states for incremental drifts. Unset means step-at-alpha=1.
    std::optional<std::pair<ConceptT, ConceptT>> lerp_endpoints;

    ConceptT at(double alpha) const {
        if (alpha <= 0.0) return pre;
        if (alpha >= 1.0) return post;
        if (!lerp_endpoints) return pre;  // step semantics: switch at alpha = 1
        return lerp_concepts(lerp_endpoints->first, lerp_endpoints->second, alpha);
    }
};

}  // namespace driftbench
