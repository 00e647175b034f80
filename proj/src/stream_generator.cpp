#include "driftbench/stream_generator.hpp"

namespace driftbench {

stream_generator::stream_generator(stream_config cfg)
    : cfg_(std::move(cfg)), sample_rng_(mix_seed(cfg_.seed, 2)) {
    cfg_.validate();
    rng concept_rng(mix_seed(cfg_.seed, 0));
    rng transform_rng(mix_seed(cfg_.seed, 1));

    if (cfg_.generator == generator_kind::rbf) {
        rbf_base_ = rbf_base(cfg_.n_classes, cfg_.n_features, cfg_.rbf_centroids_per_class,
                             concept_rng);
        if (cfg_.drift)
            rbf_drift_ = rbf_transform(*rbf_base_, cfg_.drift->difficulty, *cfg_.drift,
                                       transform_rng);
    } else {
        rt_base_ = rt_base(cfg_.n_classes, cfg_.n_features, cfg_.rt_max_depth, concept_rng);
        if (cfg_.drift)
            rt_drift_ = rt_transform(*rt_base_, cfg_.drift->difficulty, *cfg_.drift,
                                     transform_rng);
    }
}

instance stream_generator::sample_rbf(const rbf_concept& c) {
    auto present = c.present_classes();
    // a fully disappeared concept degenerates to the base concept
    const rbf_concept& active = present.empty() ? (rbf_drift_ ? rbf_drift_->pre : *rbf_base_) : c;
    if (present.empty()) present = active.present_classes();
    const int target = present[static_cast<std::size_t>(t_ % static_cast<std::int64_t>(present.size()))];
    return rbf_sample(active, target, sample_rng_);
}

instance stream_generator::sample_rt(const rt_concept& c) {
    auto present = c.present_classes();
    const rt_concept& active = present.empty() ? (rt_drift_ ? rt_drift_->pre : *rt_base_) : c;
    if (present.empty()) present = active.present_classes();
    const int target = present[static_cast<std::size_t>(t_ % static_cast<std::int64_t>(present.size()))];
    return rt_sample_class(active, target, sample_rng_);
}

instance stream_generator::next() {
    phase_decision phase{concept_phase::pre, 0.0};
    if (cfg_.drift) phase = decide_phase(t_, *cfg_.drift, sample_rng_);

    instance out;
    if (cfg_.generator == generator_kind::rbf) {
        switch (phase.phase) {
            case concept_phase::pre:
                out = sample_rbf(rbf_drift_ ? rbf_drift_->pre : *rbf_base_);
                break;
            case concept_phase::post:
                out = sample_rbf(rbf_drift_->post);
                break;
            case concept_phase::intermediate:
                out = sample_rbf(rbf_drift_->intermediate ? *rbf_drift_->intermediate
                                                          : rbf_drift_->pre);
                break;
            case concept_phase::interpolated: {
                const rbf_concept blended = rbf_drift_->at(phase.alpha);
                out = sample_rbf(blended);
                break;
            }
        }
    } else {
        switch (phase.phase) {
            case concept_phase::pre:
                out = sample_rt(rt_drift_ ? rt_drift_->pre : *rt_base_);
                break;
            case concept_phase::post:
                out = sample_rt(rt_drift_->post);
                break;
            case concept_phase::intermediate:
                out = sample_rt(rt_drift_->intermediate ? *rt_drift_->intermediate
                                                        : rt_drift_->pre);
                break;
            case concept_phase::interpolated:
                out = sample_rt(rt_drift_->post);
                break;
        }
    }
    ++t_;
    return out;
}

std::vector<instance> stream_generator::generate_all() {
    std::vector<instance> out;
    out.reserve(static_cast<std::size_t>(cfg_.length));
    while (!done()) out.push_back(next());
    return out;
}

}  // namespace driftbench
