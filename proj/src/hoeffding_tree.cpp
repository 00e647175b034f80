#include "driftbench/hoeffding_tree.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace driftbench {

double gaussian_stats::stddev() const { return std::sqrt(variance()); }

double gaussian_stats::cdf(double x) const {
    const double sd = stddev();
    if (sd <= 1e-12) return x >= mean ? 1.0 : 0.0;
    return 0.5 * std::erfc(-(x - mean) / (sd * std::sqrt(2.0)));
}

int hoeffding_tree::node::majority() const {
    int best = 0;
    double best_count = 0.0;
    for (std::size_t c = 0; c < class_counts.size(); ++c) {
        if (class_counts[c] > best_count) {
            best_count = class_counts[c];
            best = static_cast<int>(c);
        }
    }
    return best;
}

double hoeffding_tree::node::total_weight() const {
    double total = 0.0;
    for (double w : class_counts) total += w;
    return total;
}

hoeffding_tree::hoeffding_tree(int n_features, int n_classes, config cfg)
    : cfg_(cfg), n_features_(n_features), n_classes_(n_classes), root_(std::make_unique<node>()) {
    root_->observers.resize(static_cast<std::size_t>(n_features));
}

double hoeffding_tree::hoeffding_bound(double value_range, double confidence, double n) {
    return std::sqrt(value_range * value_range * std::log(1.0 / confidence) / (2.0 * n));
}

const hoeffding_tree::node* hoeffding_tree::route(const std::vector<double>& x) const {
    const node* cur = root_.get();
    while (!cur->is_leaf()) {
        cur = x[static_cast<std::size_t>(cur->split_feature)] <= cur->split_threshold
                  ? cur->left.get()
                  : cur->right.get();
    }
    return cur;
}

std::vector<hoeffding_tree::node*> hoeffding_tree::route_path(const std::vector<double>& x) {
    std::vector<node*> path;
    node* cur = root_.get();
    while (!cur->is_leaf()) {
        path.push_back(cur);
        cur = x[static_cast<std::size_t>(cur->split_feature)] <= cur->split_threshold
                  ? cur->left.get()
                  : cur->right.get();
    }
    return path;
}

int hoeffding_tree::predict(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != n_features_)
        throw std::invalid_argument("predict: feature length mismatch");
    return route(x)->majority();
}

void hoeffding_tree::update_leaf(node& leaf, const std::vector<double>& x, int y) {
    if (static_cast<std::size_t>(y) >= leaf.class_counts.size())
        leaf.class_counts.resize(static_cast<std::size_t>(y) + 1, 0.0);
    leaf.class_counts[static_cast<std::size_t>(y)] += 1.0;

    for (int f = 0; f < n_features_; ++f) {
        auto& obs = leaf.observers[static_cast<std::size_t>(f)];
        const double v = x[static_cast<std::size_t>(f)];
        if (!obs.seen) {
            obs.min = obs.max = v;
            obs.seen = true;
        } else {
            obs.min = std::min(obs.min, v);
            obs.max = std::max(obs.max, v);
        }
        if (static_cast<std::size_t>(y) >= obs.per_class.size())
            obs.per_class.resize(static_cast<std::size_t>(y) + 1);
        obs.per_class[static_cast<std::size_t>(y)].add(v);
    }
    leaf.weight_since_check += 1.0;
}

namespace {

double entropy(const std::vector<double>& counts, double total) {
    if (total <= 0.0) return 0.0;
    double h = 0.0;
    for (double w : counts) {
        if (w <= 0.0) continue;
        const double p = w / total;
        h -= p * std::log2(p);
    }
    return h;
}

}  // namespace

void hoeffding_tree::try_split(node& leaf) {
    const double total = leaf.total_weight();
    if (total <= 0.0) return;

    int live_classes = 0;
    for (double w : leaf.class_counts)
        if (w > 0.0) ++live_classes;
    if (live_classes < 2) return;

    const double base_entropy = entropy(leaf.class_counts, total);
    const std::size_t n_cls = leaf.class_counts.size();

    struct candidate {
        double gain = -1.0;
        int feature = -1;
        double threshold = 0.0;
        std::vector<double> left_counts;
        std::vector<double> right_counts;
    };
    candidate best, second;

    std::vector<double> left(n_cls), right(n_cls);
    for (int f = 0; f < n_features_; ++f) {
        const auto& obs = leaf.observers[static_cast<std::size_t>(f)];
        if (!obs.seen || obs.max <= obs.min) continue;

        candidate feature_best;
        for (int i = 1; i <= cfg_.candidate_thresholds; ++i) {
            const double threshold =
                obs.min + (obs.max - obs.min) * static_cast<double>(i) /
                              static_cast<double>(cfg_.candidate_thresholds + 1);
            double wl = 0.0, wr = 0.0;
            for (std::size_t c = 0; c < n_cls; ++c) {
                const double count = leaf.class_counts[c];
                double frac = 0.0;
                if (count > 0.0 && c < obs.per_class.size())
                    frac = obs.per_class[c].cdf(threshold);
                left[c] = count * frac;
                right[c] = count - left[c];
                wl += left[c];
                wr += right[c];
            }
            if (wl < 1e-9 || wr < 1e-9) continue;
            const double gain = base_entropy - (wl * entropy(left, wl) + wr * entropy(right, wr)) / total;
            if (gain > feature_best.gain) {
                feature_best.gain = gain;
                feature_best.feature = f;
                feature_best.threshold = threshold;
                feature_best.left_counts = left;
                feature_best.right_counts = right;
            }
        }
        if (feature_best.feature < 0) continue;
        if (feature_best.gain > best.gain) {
            second = std::move(best);
            best = std::move(feature_best);
        } else if (feature_best.gain > second.gain) {
            second = std::move(feature_best);
        }
    }
    if (best.feature < 0 || best.gain <= 0.0) return;

    const double range = std::log2(std::max(2, n_classes_));
    const double eps = hoeffding_bound(range, cfg_.split_confidence, total);
    const double runner_up = second.feature < 0 ? 0.0 : second.gain;
    if (!(best.gain - runner_up > eps || eps < cfg_.tie_threshold)) return;

    leaf.split_feature = best.feature;
    leaf.split_threshold = best.threshold;
    leaf.left = std::make_unique<node>();
    leaf.right = std::make_unique<node>();
    leaf.left->class_counts = std::move(best.left_counts);
    leaf.right->class_counts = std::move(best.right_counts);
    leaf.left->observers.resize(static_cast<std::size_t>(n_features_));
    leaf.right->observers.resize(static_cast<std::size_t>(n_features_));
    leaf.class_counts.clear();
    leaf.observers.clear();
    leaf.weight_since_check = 0.0;
}

void hoeffding_tree::learn(const std::vector<double>& x, int y) {
    if (static_cast<int>(x.size()) != n_features_)
        throw std::invalid_argument("learn: feature length mismatch");
    if (y < 0) throw std::invalid_argument("learn: negative label");
    if (y >= n_classes_) n_classes_ = y + 1;

    node* cur = root_.get();
    while (!cur->is_leaf()) {
        cur = x[static_cast<std::size_t>(cur->split_feature)] <= cur->split_threshold
                  ? cur->left.get()
                  : cur->right.get();
    }
    update_leaf(*cur, x, y);
    if (cur->weight_since_check >= static_cast<double>(cfg_.grace_period)) {
        cur->weight_since_check = 0.0;
        try_split(*cur);
    }
}

void hoeffding_tree::replace_subtree(node* target) {
    target->split_feature = -1;
    target->split_threshold = 0.0;
    target->left.reset();
    target->right.reset();
    target->detector.reset();
    target->class_counts.clear();
    target->observers.clear();
    target->observers.resize(static_cast<std::size_t>(n_features_));
    target->weight_since_check = 0.0;
}

namespace {

void count_nodes(const hoeffding_tree::node* n, std::int64_t& nodes, std::int64_t& leaves) {
    if (n == nullptr) return;
    ++nodes;
    if (n->is_leaf()) {
        ++leaves;
        return;
    }
    count_nodes(n->left.get(), nodes, leaves);
    count_nodes(n->right.get(), nodes, leaves);
}

void describe_node(const hoeffding_tree::node* n, std::ostringstream& out) {
    if (n == nullptr) {
        out << "-";
        return;
    }
    if (!n->is_leaf()) {
        out << "(f" << n->split_feature << "@" << std::hexfloat << n->split_threshold << " ";
        describe_node(n->left.get(), out);
        out << " ";
        describe_node(n->right.get(), out);
        out << ")";
        return;
    }
    out << "[c:";
    for (double w : n->class_counts) out << std::hexfloat << w << ",";
    out << " o:";
    for (const auto& obs : n->observers) {
        out << std::hexfloat << obs.min << "/" << obs.max << "{";
        for (const auto& g : obs.per_class)
            out << std::hexfloat << g.n << ":" << g.mean << ":" << g.m2 << ";";
        out << "}";
    }
    out << "]";
}

}  // namespace

std::int64_t hoeffding_tree::leaf_count() const {
    std::int64_t nodes = 0, leaves = 0;
    count_nodes(root_.get(), nodes, leaves);
    return leaves;
}

std::int64_t hoeffding_tree::node_count() const {
    std::int64_t nodes = 0, leaves = 0;
    count_nodes(root_.get(), nodes, leaves);
    return nodes;
}

std::string hoeffding_tree::describe() const {
    std::ostringstream out;
    describe_node(root_.get(), out);
    return out.str();
}

}  // namespace driftbench
