#include "driftbench/stream.hpp"

#include <cmath>

namespace driftbench {

std::string to_string(generator_kind g) {
    return g == generator_kind::rbf ? "rbf" : "rt";
}

std::string to_string(drift_speed s) {
    switch (s) {
        case drift_speed::sudden: return "sudden";
        case drift_speed::gradual: return "gradual";
        case drift_speed::incremental: return "incremental";
    }
    return "sudden";
}

std::string to_string(drift_category c) {
    switch (c) {
        case drift_category::single_class_local: return "single_class_local";
        case drift_category::single_class_global: return "single_class_global";
        case drift_category::multi_class_local: return "multi_class_local";
        case drift_category::multi_class_global: return "multi_class_global";
    }
    return "single_class_global";
}

generator_kind generator_from_string(const std::string& s) {
    if (s == "rbf") return generator_kind::rbf;
    if (s == "rt") return generator_kind::rt;
    throw config_error("unknown generator: " + s);
}

drift_speed speed_from_string(const std::string& s) {
    if (s == "sudden") return drift_speed::sudden;
    if (s == "gradual") return drift_speed::gradual;
    if (s == "incremental") return drift_speed::incremental;
    throw config_error("unknown drift speed: " + s);
}

drift_category category_from_string(const std::string& s) {
    if (s == "single_class_local") return drift_category::single_class_local;
    if (s == "single_class_global") return drift_category::single_class_global;
    if (s == "multi_class_local") return drift_category::multi_class_local;
    if (s == "multi_class_global") return drift_category::multi_class_global;
    throw config_error("unknown drift category: " + s);
}

void drift_spec::validate() const {
    if (is_multi_class(category)) {
        if (affected_classes.size() < 2)
            throw config_error("multi-class drift requires >= 2 affected classes");
    } else if (affected_classes.size() != 1) {
        throw config_error("single-class drift requires exactly 1 affected class");
    }
    const bool global = !is_local(category);
    if (global && scope_fraction != 1.0)
        throw config_error("global drift requires scope_fraction = 1.0");
    if (!global && (scope_fraction <= 0.0 || scope_fraction >= 1.0))
        throw config_error("local drift requires scope_fraction in (0, 1)");
    if (speed != drift_speed::sudden && width <= 0)
        throw config_error("gradual/incremental drift requires width > 0");
    if (position <= 0) throw config_error("drift position must be positive");
}

void stream_config::validate() const {
    if (n_classes < 2) throw config_error("need at least 2 classes");
    if (n_features < 1) throw config_error("need at least 1 feature");
    if (length < 1) throw config_error("stream length must be positive");
    if (drift) {
        drift->validate();
        if (drift->position + drift->width / 2 > length)
            throw config_error("drift window extends past the stream end");
        for (int c : drift->affected_classes) {
            // class_emerging affects the class that does not exist yet
            const int limit = drift->difficulty == "class_emerging" ? n_classes + 1 : n_classes;
            if (c < 0 || c >= limit) throw config_error("affected class out of range");
        }
    }
}

double mixing_probability(std::int64_t t, const drift_spec& spec) {
    if (spec.speed != drift_speed::gradual)
        throw std::invalid_argument("mixing_probability requires a gradual drift spec");
    if (spec.width <= 0) throw std::invalid_argument("mixing_probability requires width > 0");
    const double z = 4.0 * static_cast<double>(t - spec.position) / static_cast<double>(spec.width);
    return 1.0 / (1.0 + std::exp(-z));
}

double interpolation_coefficient(std::int64_t t, const drift_spec& spec) {
    if (spec.speed != drift_speed::incremental)
        throw std::invalid_argument("interpolation_coefficient requires an incremental drift spec");
    const double start = static_cast<double>(spec.position) - static_cast<double>(spec.width) / 2.0;
    if (static_cast<double>(t) <= start) return 0.0;
    const double a = (static_cast<double>(t) - start) / static_cast<double>(spec.width);
    return a >= 1.0 ? 1.0 : a;
}

namespace {

bool is_reappearing(const std::string& difficulty) {
    return difficulty == "reappearing_cluster" || difficulty == "prune_regrowth_branch";
}

// Gradual mixing restricted to [center - w/2, center + w/2); outside the
// window the transition is settled.
bool gradual_pick_new(std::int64_t t, std::int64_t center, std::int64_t width,
                      const drift_spec& spec, rng& r) {
    if (t < center - width / 2) return false;
    if (t >= center + width / 2) return true;
    drift_spec at_center = spec;
    at_center.position = center;
    return r.next_double() < mixing_probability(t, at_center);
}

}  // namespace

phase_decision decide_phase(std::int64_t t, const drift_spec& spec, rng& sample_rng) {
    const std::int64_t p = spec.position;
    const bool reappearing = is_reappearing(spec.difficulty);

    if (spec.speed == drift_speed::sudden) {
        if (!reappearing) return {t < p ? concept_phase::pre : concept_phase::post, 0.0};
        if (t < p) return {concept_phase::pre, 0.0};
        if (t < p + spec.reappear_width) return {concept_phase::intermediate, 0.0};
        return {concept_phase::post, 0.0};
    }

    if (spec.speed == drift_speed::gradual) {
        if (!reappearing) {
            return {gradual_pick_new(t, p, spec.width, spec, sample_rng) ? concept_phase::post
                                                                         : concept_phase::pre,
                    0.0};
        }
        // two staggered transitions: pre -> intermediate around p,
        // intermediate -> post around p + reappear_width
        const std::int64_t back = p + spec.reappear_width;
        if (t >= back - spec.width / 2) {
            return {gradual_pick_new(t, back, spec.width, spec, sample_rng)
                        ? concept_phase::post
                        : concept_phase::intermediate,
                    0.0};
        }
        return {gradual_pick_new(t, p, spec.width, spec, sample_rng) ? concept_phase::intermediate
                                                                     : concept_phase::pre,
                0.0};
    }

    const double alpha = interpolation_coefficient(t, spec);
    if (alpha <= 0.0) return {concept_phase::pre, 0.0};
    if (alpha >= 1.0) return {concept_phase::post, 0.0};
    return {concept_phase::interpolated, alpha};
}

}  // namespace driftbench
