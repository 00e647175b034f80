#include "driftbench/rbf.hpp"

#include <algorithm>
#include <cmath>

namespace driftbench {

namespace {

constexpr double kStddevLo = 0.02;
constexpr double kStddevHi = 0.08;
constexpr double kWeightLo = 0.5;
constexpr double kWeightHi = 1.5;
constexpr double kSplitSeparation = 0.3;  // L2 distance between split children

double clip01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

rbf_centroid fresh_centroid(int d, rng& r) {
    rbf_centroid c;
    c.center.resize(static_cast<std::size_t>(d));
    for (auto& v : c.center) v = r.next_double();
    c.stddev = r.uniform(kStddevLo, kStddevHi);
    c.weight = r.uniform(kWeightLo, kWeightHi);
    return c;
}

std::vector<double> random_unit_vector(int d, rng& r) {
    std::vector<double> u(static_cast<std::size_t>(d));
    double norm = 0.0;
    do {
        norm = 0.0;
        for (auto& v : u) {
            v = r.normal(0.0, 1.0);
            norm += v * v;
        }
    } while (norm <= 0.0);
    norm = std::sqrt(norm);
    for (auto& v : u) v /= norm;
    return u;
}

int scoped_count(double scope_fraction, std::size_t k) {
    return static_cast<int>(std::ceil(scope_fraction * static_cast<double>(k)));
}

void check_speed(const std::string& difficulty, drift_speed speed) {
    const bool incremental_ok = difficulty == "splitting_cluster" ||
                                difficulty == "merging_cluster" ||
                                difficulty == "moving_cluster";
    if (speed == drift_speed::incremental && !incremental_ok)
        throw config_error("difficulty '" + difficulty + "' does not support incremental drift");
}

}  // namespace

std::vector<int> rbf_concept::present_classes() const {
    std::vector<int> out;
    for (std::size_t c = 0; c < classes.size(); ++c)
        if (!classes[c].empty()) out.push_back(static_cast<int>(c));
    return out;
}

rbf_concept lerp_concepts(const rbf_concept& a, const rbf_concept& b, double alpha) {
    rbf_concept out = a;
    for (std::size_t c = 0; c < out.classes.size(); ++c) {
        for (std::size_t i = 0; i < out.classes[c].size(); ++i) {
            auto& dst = out.classes[c][i];
            const auto& to = b.classes[c][i];
            for (std::size_t f = 0; f < dst.center.size(); ++f)
                dst.center[f] += alpha * (to.center[f] - dst.center[f]);
            dst.stddev += alpha * (to.stddev - dst.stddev);
            dst.weight += alpha * (to.weight - dst.weight);
        }
    }
    return out;
}

rbf_concept rbf_base(int n_classes, int n_features, int k_per_class, rng& r) {
    if (k_per_class < 2) throw config_error("rbf generator needs k_per_class >= 2");
    rbf_concept base_concept;
    base_concept.n_features = n_features;
    base_concept.classes.resize(static_cast<std::size_t>(n_classes));
    for (auto& cls : base_concept.classes) {
        cls.reserve(static_cast<std::size_t>(k_per_class));
        for (int i = 0; i < k_per_class; ++i) cls.push_back(fresh_centroid(n_features, r));
    }
    return base_concept;
}

instance rbf_sample(const rbf_concept& base_concept, int class_id, rng& r) {
    if (class_id < 0 || static_cast<std::size_t>(class_id) >= base_concept.classes.size() ||
        base_concept.classes[static_cast<std::size_t>(class_id)].empty())
        throw std::invalid_argument("rbf_sample: class not present in base_concept");
    const auto& centroids = base_concept.classes[static_cast<std::size_t>(class_id)];

    double total = 0.0;
    for (const auto& c : centroids) total += c.weight;
    double pick = r.next_double() * total;
    std::size_t chosen = 0;
    for (; chosen + 1 < centroids.size(); ++chosen) {
        pick -= centroids[chosen].weight;
        if (pick < 0.0) break;
    }

    const auto& c = centroids[chosen];
    instance out;
    out.label = class_id;
    out.features.resize(c.center.size());
    for (std::size_t f = 0; f < c.center.size(); ++f)
        out.features[f] = clip01(r.normal(c.center[f], c.stddev));
    return out;
}

rbf_transition rbf_transform(const rbf_concept& base_concept, const std::string& difficulty,
                             const drift_spec& spec, rng& r) {
    check_speed(difficulty, spec.speed);
    rbf_transition tr;
    tr.pre = base_concept;
    tr.post = base_concept;
    const int d = base_concept.n_features;

    std::vector<int> affected = spec.affected_classes;
    std::sort(affected.begin(), affected.end());
    for (int a : affected) {
        if (difficulty == "class_emerging") continue;
        if (a < 0 || static_cast<std::size_t>(a) >= base_concept.classes.size() ||
            base_concept.classes[static_cast<std::size_t>(a)].empty())
            throw config_error("affected class not present in rbf base_concept");
    }

    auto select = [&](int cls) {
        const auto& list = base_concept.classes[static_cast<std::size_t>(cls)];
        const int k = static_cast<int>(list.size());
        int s = is_local(spec.category) ? scoped_count(spec.scope_fraction, list.size()) : k;
        if (difficulty == "merging_cluster" && s < 2) s = std::min(2, k);
        return r.sample_indices(s, k);
    };

    if (difficulty == "emerging_cluster") {
        for (int a : affected)
            tr.post.classes[static_cast<std::size_t>(a)].push_back(fresh_centroid(d, r));
        return tr;
    }

    if (difficulty == "reappearing_cluster") {
        rbf_concept gap = base_concept;
        for (int a : affected) {
            const auto selected = select(a);
            auto& cls = gap.classes[static_cast<std::size_t>(a)];
            for (auto it = selected.rbegin(); it != selected.rend(); ++it)
                cls.erase(cls.begin() + *it);
        }
        tr.intermediate = std::move(gap);
        return tr;  // post == pre: the base_concept comes back
    }

    if (difficulty == "splitting_cluster") {
        rbf_concept from = base_concept;  // children co-located at the parent
        for (int a : affected) {
            const auto selected = select(a);
            auto& post_cls = tr.post.classes[static_cast<std::size_t>(a)];
            auto& from_cls = from.classes[static_cast<std::size_t>(a)];
            for (int idx : selected) {
                const rbf_centroid parent = post_cls[static_cast<std::size_t>(idx)];
                const auto dir = random_unit_vector(d, r);
                rbf_centroid child_a = parent;
                rbf_centroid child_b = parent;
                child_a.weight = parent.weight / 2.0;
                child_b.weight = parent.weight / 2.0;
                for (int f = 0; f < d; ++f) {
                    child_a.center[static_cast<std::size_t>(f)] = clip01(
                        parent.center[static_cast<std::size_t>(f)] + kSplitSeparation / 2.0 * dir[static_cast<std::size_t>(f)]);
                    child_b.center[static_cast<std::size_t>(f)] = clip01(
                        parent.center[static_cast<std::size_t>(f)] - kSplitSeparation / 2.0 * dir[static_cast<std::size_t>(f)]);
                }
                post_cls[static_cast<std::size_t>(idx)] = child_a;
                post_cls.push_back(child_b);
                rbf_centroid seed_a = parent;
                rbf_centroid seed_b = parent;
                seed_a.weight = parent.weight / 2.0;
                seed_b.weight = parent.weight / 2.0;
                from_cls[static_cast<std::size_t>(idx)] = seed_a;
                from_cls.push_back(seed_b);
            }
        }
        tr.lerp_endpoints = {std::move(from), tr.post};
        return tr;
    }

    if (difficulty == "merging_cluster") {
        rbf_concept to = base_concept;  // group members co-located at the midpoint
        rbf_concept fused = base_concept;
        for (int a : affected) {
            auto selected = select(a);
            if (selected.size() < 2) continue;
            // consecutive pairs; an odd leftover joins the final group
            std::vector<std::vector<int>> groups;
            for (std::size_t i = 0; i + 1 < selected.size(); i += 2)
                groups.push_back({selected[i], selected[i + 1]});
            if (selected.size() % 2 == 1) groups.back().push_back(selected.back());

            auto& to_cls = to.classes[static_cast<std::size_t>(a)];
            auto& fused_cls = fused.classes[static_cast<std::size_t>(a)];
            std::vector<int> to_remove;
            for (const auto& group : groups) {
                std::vector<double> mid(static_cast<std::size_t>(d), 0.0);
                double weight_sum = 0.0, stddev_sum = 0.0;
                for (int idx : group) {
                    const auto& c = to_cls[static_cast<std::size_t>(idx)];
                    for (int f = 0; f < d; ++f) mid[static_cast<std::size_t>(f)] += c.center[static_cast<std::size_t>(f)];
                    weight_sum += c.weight;
                    stddev_sum += c.stddev;
                }
                for (auto& v : mid) v /= static_cast<double>(group.size());
                for (int idx : group) to_cls[static_cast<std::size_t>(idx)].center = mid;
                auto& merged = fused_cls[static_cast<std::size_t>(group.front())];
                merged.center = mid;
                merged.weight = weight_sum;
                merged.stddev = stddev_sum / static_cast<double>(group.size());
                for (std::size_t i = 1; i < group.size(); ++i) to_remove.push_back(group[i]);
            }
            std::sort(to_remove.rbegin(), to_remove.rend());
            for (int idx : to_remove) fused_cls.erase(fused_cls.begin() + idx);
        }
        tr.post = std::move(fused);
        tr.lerp_endpoints = {base_concept, std::move(to)};
        return tr;
    }

    if (difficulty == "moving_cluster") {
        for (int a : affected) {
            const auto selected = select(a);
            auto& cls = tr.post.classes[static_cast<std::size_t>(a)];
            for (int idx : selected) {
                auto& c = cls[static_cast<std::size_t>(idx)];
                for (auto& v : c.center) v = r.next_double();
            }
        }
        tr.lerp_endpoints = {tr.pre, tr.post};
        return tr;
    }

    if (difficulty == "swap_cluster") {
        if (affected.size() < 2) throw config_error("swap_cluster requires >= 2 affected classes");
        std::vector<std::vector<int>> selections;
        selections.reserve(affected.size());
        for (int a : affected) selections.push_back(select(a));
        // cyclic rotation of the selected centers; for two classes this is a
        // plain swap
        for (std::size_t i = 0; i < affected.size(); ++i) {
            const std::size_t j = (i + 1) % affected.size();
            const auto& src = base_concept.classes[static_cast<std::size_t>(affected[j])];
            auto& dst = tr.post.classes[static_cast<std::size_t>(affected[i])];
            const std::size_t count = std::min(selections[i].size(), selections[j].size());
            for (std::size_t m = 0; m < count; ++m)
                dst[static_cast<std::size_t>(selections[i][m])].center =
                    src[static_cast<std::size_t>(selections[j][m])].center;
        }
        return tr;
    }

    if (difficulty == "class_emerging") {
        if (is_local(spec.category))
            throw config_error("class_emerging requires global scope");
        const std::size_t k = base_concept.classes.front().size();
        std::vector<rbf_centroid> fresh;
        fresh.reserve(k);
        for (std::size_t i = 0; i < k; ++i) fresh.push_back(fresh_centroid(d, r));
        tr.post.classes.push_back(std::move(fresh));
        return tr;
    }

    throw config_error("unknown rbf difficulty: " + difficulty);
}

}  // namespace driftbench
