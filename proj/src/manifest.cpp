#include "driftbench/manifest.hpp"

#include <algorithm>

#include <json.hpp>

#include "driftbench/random.hpp"

namespace driftbench {

namespace {

using nlohmann::json;

constexpr auto kRbf = generator_kind::rbf;
constexpr auto kRt = generator_kind::rt;
constexpr auto kScl = drift_category::single_class_local;
constexpr auto kScg = drift_category::single_class_global;
constexpr auto kMcl = drift_category::multi_class_local;
constexpr auto kMcg = drift_category::multi_class_global;

}  // namespace

const std::vector<benchmark_row>& benchmark_rows() {
    static const std::vector<benchmark_row> rows{
        {kRbf, kScl, "emerging_cluster", true, true, false},
        {kRbf, kScl, "reappearing_cluster", true, true, false},
        {kRbf, kScl, "splitting_cluster", true, true, true},
        {kRbf, kScl, "merging_cluster", true, true, true},
        {kRbf, kScl, "moving_cluster", true, true, true},
        {kRbf, kScg, "reappearing_cluster", true, true, false},
        {kRbf, kScg, "splitting_cluster", true, true, true},
        {kRbf, kScg, "merging_cluster", true, true, true},
        {kRbf, kScg, "moving_cluster", true, true, true},
        {kRbf, kScg, "class_emerging", true, true, false},
        {kRbf, kMcl, "emerging_cluster", true, true, false},
        {kRbf, kMcl, "reappearing_cluster", true, true, false},
        {kRbf, kMcl, "splitting_cluster", true, true, true},
        {kRbf, kMcl, "merging_cluster", true, true, true},
        {kRbf, kMcl, "moving_cluster", true, true, true},
        {kRbf, kMcl, "swap_cluster", true, true, false},
        {kRbf, kMcg, "reappearing_cluster", true, true, false},
        {kRbf, kMcg, "splitting_cluster", true, true, true},
        {kRbf, kMcg, "merging_cluster", true, true, true},
        {kRbf, kMcg, "moving_cluster", true, true, true},
        {kRbf, kMcg, "swap_cluster", true, true, false},
        {kRt, kScl, "emerging_branch", true, true, false},
        {kRt, kScl, "prune_regrowth_branch", true, true, false},
        {kRt, kScl, "prune_growth_new_branch", true, true, false},
        {kRt, kScg, "prune_regrowth_branch", true, true, false},
        {kRt, kScg, "prune_growth_new_branch", true, true, false},
        {kRt, kScg, "class_emerging", true, true, false},
        {kRt, kMcl, "emerging_branch", true, true, false},
        {kRt, kMcl, "prune_regrowth_branch", true, true, false},
        {kRt, kMcl, "prune_growth_new_branch", true, true, false},
        {kRt, kMcl, "split_node", true, true, false},
        {kRt, kMcl, "swap_leaves", true, true, false},
        {kRt, kMcg, "prune_regrowth_branch", true, true, false},
        {kRt, kMcg, "prune_growth_new_branch", true, true, false},
        {kRt, kMcg, "split_node", true, true, false},
        {kRt, kMcg, "swap_leaves", true, true, false},
    };
    return rows;
}

namespace {

template <typename T>
bool contains(const std::vector<T>& values, const T& v) {
    return std::find(values.begin(), values.end(), v) != values.end();
}

std::string speed_tag(drift_speed s) {
    switch (s) {
        case drift_speed::sudden: return "sud";
        case drift_speed::gradual: return "grad";
        case drift_speed::incremental: return "incr";
    }
    return "sud";
}

}  // namespace

manifest enumerate_manifest(const manifest_params& params) {
    if (params.class_counts.empty() || params.feature_counts.empty())
        throw config_error("manifest: class and feature sets must be non-empty");
    bool any_difficulty = false;
    for (const auto& row : benchmark_rows())
        if (params.difficulties.empty() || contains(params.difficulties, row.difficulty))
            any_difficulty = true;
    if (!any_difficulty) throw config_error("manifest: difficulty list selects nothing");

    manifest out;
    out.params = params;

    for (const auto& row : benchmark_rows()) {
        if (!contains(params.generators, row.generator)) continue;
        if (!contains(params.categories, row.category)) continue;
        if (!params.difficulties.empty() && !contains(params.difficulties, row.difficulty))
            continue;

        for (int n : params.class_counts) {
            // affected-class counts: {1} for single-class rows, the capped
            // count options for multi-class rows
            std::vector<int> affected_options;
            if (is_multi_class(row.category)) {
                for (int c : params.affected_class_counts)
                    if (c <= n) affected_options.push_back(c);
                if (affected_options.empty()) continue;
            } else {
                affected_options.push_back(1);
            }

            for (int d : params.feature_counts) {
                for (drift_speed speed :
                     {drift_speed::sudden, drift_speed::gradual, drift_speed::incremental}) {
                    if (!contains(params.speeds, speed)) continue;
                    if (speed == drift_speed::sudden && !row.sudden) continue;
                    if (speed == drift_speed::gradual && !row.gradual) continue;
                    if (speed == drift_speed::incremental && !row.incremental) continue;

                    for (int affected_count : affected_options) {
                        for (int rep = 0; rep < params.seeds_per_config; ++rep) {
                            stream_config cfg;
                            cfg.generator = row.generator;
                            cfg.n_classes = n;
                            cfg.n_features = d;
                            cfg.length = params.length;
                            cfg.rbf_centroids_per_class = params.rbf_centroids_per_class;
                            cfg.rt_max_depth = params.rt_max_depth;

                            drift_spec spec;
                            spec.category = row.category;
                            spec.difficulty = row.difficulty;
                            spec.speed = speed;
                            spec.position = params.position;
                            spec.width = speed == drift_speed::sudden ? 0 : params.width;
                            spec.reappear_width = params.reappear_width;
                            spec.scope_fraction = is_local(row.category) ? params.local_scope : 1.0;
                            if (is_multi_class(row.category)) {
                                for (int c = 0; c < affected_count; ++c)
                                    spec.affected_classes.push_back(c);
                            } else if (row.difficulty == "class_emerging") {
                                spec.affected_classes.push_back(n);
                            } else {
                                spec.affected_classes.push_back(0);
                            }
                            cfg.drift = spec;

                            manifest_entry entry;
                            entry.id = to_string(row.generator) + "-" + to_string(row.category) +
                                       "-" + row.difficulty + "-" + speed_tag(speed) + "-n" +
                                       std::to_string(n) + "-d" + std::to_string(d) + "-a" +
                                       std::to_string(affected_count) + "-s" + std::to_string(rep);
                            cfg.seed = mix_seed(params.base_seed, fnv1a(entry.id));
                            entry.config = cfg;
                            out.entries.push_back(entry);

                            if (params.stationary_twins) {
                                manifest_entry twin;
                                twin.id = entry.id + "-stationary";
                                twin.config = entry.config;
                                twin.config.drift.reset();
                                out.entries.push_back(std::move(twin));
                            }
                        }
                    }
                }
            }
        }
    }
    return out;
}

namespace {

json params_to_json(const manifest_params& p) {
    std::vector<std::string> gens, cats, speeds;
    for (auto g : p.generators) gens.push_back(to_string(g));
    for (auto c : p.categories) cats.push_back(to_string(c));
    for (auto s : p.speeds) speeds.push_back(to_string(s));
    return json{{"generators", gens},
                {"categories", cats},
                {"class_counts", p.class_counts},
                {"feature_counts", p.feature_counts},
                {"difficulties", p.difficulties},
                {"speeds", speeds},
                {"affected_class_counts", p.affected_class_counts},
                {"seeds_per_config", p.seeds_per_config},
                {"base_seed", p.base_seed},
                {"length", p.length},
                {"position", p.position},
                {"width", p.width},
                {"reappear_width", p.reappear_width},
                {"detection_range", p.detection_range},
                {"local_scope", p.local_scope},
                {"stationary_twins", p.stationary_twins},
                {"rbf_centroids_per_class", p.rbf_centroids_per_class},
                {"rt_max_depth", p.rt_max_depth}};
}

manifest_params params_from_json(const json& j) {
    manifest_params p;
    p.generators.clear();
    for (const auto& g : j.at("generators")) p.generators.push_back(generator_from_string(g));
    p.categories.clear();
    for (const auto& c : j.at("categories")) p.categories.push_back(category_from_string(c));
    p.class_counts = j.at("class_counts").get<std::vector<int>>();
    p.feature_counts = j.at("feature_counts").get<std::vector<int>>();
    p.difficulties = j.at("difficulties").get<std::vector<std::string>>();
    p.speeds.clear();
    for (const auto& s : j.at("speeds")) p.speeds.push_back(speed_from_string(s));
    p.affected_class_counts = j.at("affected_class_counts").get<std::vector<int>>();
    p.seeds_per_config = j.at("seeds_per_config").get<int>();
    p.base_seed = j.at("base_seed").get<std::uint64_t>();
    p.length = j.at("length").get<std::int64_t>();
    p.position = j.at("position").get<std::int64_t>();
    p.width = j.at("width").get<std::int64_t>();
    p.reappear_width = j.at("reappear_width").get<std::int64_t>();
    p.detection_range = j.at("detection_range").get<std::int64_t>();
    p.local_scope = j.at("local_scope").get<double>();
    p.stationary_twins = j.at("stationary_twins").get<bool>();
    p.rbf_centroids_per_class = j.at("rbf_centroids_per_class").get<int>();
    p.rt_max_depth = j.at("rt_max_depth").get<int>();
    return p;
}

json entry_to_json(const manifest_entry& e) {
    json drift(nullptr);
    if (e.config.drift) {
        const auto& d = *e.config.drift;
        drift = json{{"category", to_string(d.category)},
                     {"difficulty", d.difficulty},
                     {"speed", to_string(d.speed)},
                     {"position", d.position},
                     {"width", d.width},
                     {"affected_classes", d.affected_classes},
                     {"scope_fraction", d.scope_fraction},
                     {"reappear_width", d.reappear_width}};
    }
    return json{{"id", e.id},
                {"generator", to_string(e.config.generator)},
                {"n_classes", e.config.n_classes},
                {"n_features", e.config.n_features},
                {"length", e.config.length},
                {"seed", e.config.seed},
                {"rbf_centroids_per_class", e.config.rbf_centroids_per_class},
                {"rt_max_depth", e.config.rt_max_depth},
                {"drift", drift}};
}

manifest_entry entry_from_json(const json& j) {
    manifest_entry e;
    e.id = j.at("id").get<std::string>();
    e.config.generator = generator_from_string(j.at("generator").get<std::string>());
    e.config.n_classes = j.at("n_classes").get<int>();
    e.config.n_features = j.at("n_features").get<int>();
    e.config.length = j.at("length").get<std::int64_t>();
    e.config.seed = j.at("seed").get<std::uint64_t>();
    e.config.rbf_centroids_per_class = j.at("rbf_centroids_per_class").get<int>();
    e.config.rt_max_depth = j.at("rt_max_depth").get<int>();
    if (!j.at("drift").is_null()) {
        const auto& dj = j.at("drift");
        drift_spec d;
        d.category = category_from_string(dj.at("category").get<std::string>());
        d.difficulty = dj.at("difficulty").get<std::string>();
        d.speed = speed_from_string(dj.at("speed").get<std::string>());
        d.position = dj.at("position").get<std::int64_t>();
        d.width = dj.at("width").get<std::int64_t>();
        d.affected_classes = dj.at("affected_classes").get<std::vector<int>>();
        d.scope_fraction = dj.at("scope_fraction").get<double>();
        d.reappear_width = dj.at("reappear_width").get<std::int64_t>();
        e.config.drift = d;
    }
    return e;
}

}  // namespace

std::string manifest_to_json(const manifest& m) {
    json entries = json::array();
    for (const auto& e : m.entries) entries.push_back(entry_to_json(e));
    json j{{"toolkit_version", m.toolkit_version},
           {"format_version", 1},
           {"parameters", params_to_json(m.params)},
           {"configs", entries}};
    return j.dump(2) + "\n";
}

manifest manifest_from_json(const std::string& text) {
    json j = json::parse(text);
    if (j.at("format_version").get<int>() != 1)
        throw config_error("unsupported manifest format_version");
    manifest m;
    m.toolkit_version = j.at("toolkit_version").get<std::string>();
    m.params = params_from_json(j.at("parameters"));
    for (const auto& ej : j.at("configs")) m.entries.push_back(entry_from_json(ej));
    return m;
}

}  // namespace driftbench
