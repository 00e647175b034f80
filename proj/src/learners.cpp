#include "driftbench/learners.hpp"

#include <cmath>

namespace driftbench {

ht_learner::ht_learner(int n_features, int n_classes, learner_options opts)
    : tree_(n_features, n_classes, opts.tree) {}

int ht_learner::step(const instance& inst) {
    const int pred = tree_.predict(inst.features);
    tree_.learn(inst.features, inst.label);
    return pred;
}

htdw_learner::htdw_learner(int n_features, int n_classes, learner_options opts)
    : opts_(opts),
      n_features_(n_features),
      n_classes_(n_classes),
      foreground_(n_features, n_classes, opts.tree),
      detector_(opts.detector) {}

int htdw_learner::step(const instance& inst) {
    const int pred = foreground_.predict(inst.features);
    if (opts_.adapt_enabled) {
        const int err = pred != inst.label ? 1 : 0;
        switch (detector_.update(err)) {
            case detector_status::warning:
                if (!background_) background_.emplace(n_features_, n_classes_, opts_.tree);
                background_->learn(inst.features, inst.label);
                break;
            case detector_status::drift:
                if (background_)
                    foreground_ = std::move(*background_);
                else
                    foreground_ = hoeffding_tree(n_features_, n_classes_, opts_.tree);
                background_.reset();
                break;
            case detector_status::stable:
                background_.reset();
                break;
        }
    }
    foreground_.learn(inst.features, inst.label);
    return pred;
}

aht_learner::aht_learner(int n_features, int n_classes, learner_options opts)
    : opts_(opts), tree_(n_features, n_classes, opts.tree) {}

int aht_learner::step(const instance& inst) {
    const int pred = tree_.predict(inst.features);
    if (opts_.adapt_enabled) {
        const int err = pred != inst.label ? 1 : 0;
        for (auto* node : tree_.route_path(inst.features)) {
            if (!node->detector) node->detector = std::make_unique<adwin_detector>(opts_.detector);
            if (node->detector->update(err) != detector_status::drift) continue;
            bool replace = true;
            if (opts_.replace_on_error_increase_only) {
                const auto* ad = dynamic_cast<const adwin_detector*>(node->detector.get());
                replace = ad == nullptr || ad->last_change_increased();
            }
            if (replace) {
                tree_.replace_subtree(node);
                break;  // nodes below this one are gone
            }
        }
    }
    tree_.learn(inst.features, inst.label);
    return pred;
}

const std::vector<std::string>& learner_names() {
    static const std::vector<std::string> names{"ht", "aht", "ht-dw"};
    return names;
}

std::unique_ptr<learner> make_learner(const std::string& name, int n_features, int n_classes,
                                      learner_options opts) {
    if (name == "ht") return std::make_unique<ht_learner>(n_features, n_classes, opts);
    if (name == "aht") return std::make_unique<aht_learner>(n_features, n_classes, opts);
    if (name == "ht-dw") return std::make_unique<htdw_learner>(n_features, n_classes, opts);
    std::string valid;
    for (const auto& n : learner_names()) valid += (valid.empty() ? "" : ", ") + n;
    throw config_error("unknown learner '" + name + "' (valid: " + valid + ")");
}

prequential_result prequential_run(const std::vector<instance>& stream, learner& model,
                                   int window) {
    if (window < 1) throw std::invalid_argument("prequential window must be >= 1");

    prequential_result out;
    out.error_bits.reserve(stream.size());
    std::int64_t correct = 0;
    std::int64_t window_correct = 0;

    for (std::size_t i = 0; i < stream.size(); ++i) {
        const int pred = model.step(stream[i]);
        const bool hit = pred == stream[i].label;
        out.error_bits.push_back(hit ? 0 : 1);
        correct += hit ? 1 : 0;
        window_correct += hit ? 1 : 0;
        if ((i + 1) % static_cast<std::size_t>(window) == 0) {
            out.series.push_back({static_cast<std::int64_t>(i + 1),
                                  static_cast<double>(window_correct) / static_cast<double>(window)});
            window_correct = 0;
        }
    }

    out.overall_accuracy =
        stream.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(stream.size());

    if (!out.series.empty()) {
        double sum = 0.0;
        for (const auto& p : out.series) sum += p.accuracy;
        out.series_mean = sum / static_cast<double>(out.series.size());
        if (out.series.size() > 1) {
            double sq = 0.0;
            for (const auto& p : out.series) {
                const double d = p.accuracy - out.series_mean;
                sq += d * d;
            }
            out.series_std = std::sqrt(sq / static_cast<double>(out.series.size() - 1));
        }
    }
    return out;
}

}  // namespace driftbench
