#pragma once

#include <optional>
#include <vector>

#include "driftbench/random_tree.hpp"
#include "driftbench/rbf.hpp"
#include "driftbench/stream.hpp"

namespace driftbench {

// Emits one synthetic stream: a base concept, an optional drift transition,
// and a deterministic instance sequence. Separate rng streams for concept
// construction, transform, and sampling keep the pre-drift prefix identical
// across configs that differ only in the drift transform.
class stream_generator {
public:
    explicit stream_generator(stream_config cfg);

    instance next();
    bool done() const { return t_ >= cfg_.length; }
    std::int64_t position() const { return t_; }
    const stream_config& config() const { return cfg_; }

    std::vector<instance> generate_all();

    // exposed for tests
    const std::optional<rbf_transition>& rbf_drift() const { return rbf_drift_; }
    const std::optional<rt_transition>& rt_drift() const { return rt_drift_; }
    const std::optional<rbf_concept>& rbf_base_concept() const { return rbf_base_; }
    const std::optional<rt_concept>& rt_base_concept() const { return rt_base_; }

private:
    instance sample_rbf(const rbf_concept& c);
    instance sample_rt(const rt_concept& c);

    stream_config cfg_;
    rng sample_rng_;
    std::int64_t t_ = 0;

    std::optional<rbf_concept> rbf_base_;
    std::optional<rbf_transition> rbf_drift_;
    std::optional<rt_concept> rt_base_;
    std::optional<rt_transition> rt_drift_;
};

}  // namespace driftbench
