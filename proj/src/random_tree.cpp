#include "driftbench/random_tree.hpp"

#include <algorithm>
#include <cmath>

namespace driftbench {

namespace {

constexpr double kEarlyStopProb = 0.15;
constexpr int kMaxGrowAttempts = 100;
constexpr int kMaxRejections = 10000;

int min_depth_for(int n_classes) {
    int depth = 0;
    while ((1 << depth) < n_classes) ++depth;
    return depth;
}

}  // namespace

std::vector<int> rt_concept::present_classes() const {
    std::vector<bool> seen(static_cast<std::size_t>(n_classes), false);
    for (const auto& node : nodes)
        if (node.is_leaf() && node.label >= 0) seen[static_cast<std::size_t>(node.label)] = true;
    std::vector<int> out;
    for (int c = 0; c < n_classes; ++c)
        if (seen[static_cast<std::size_t>(c)]) out.push_back(c);
    return out;
}

std::vector<int> rt_concept::leaves_of_class(int class_id) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].is_leaf() && nodes[i].label == class_id) out.push_back(static_cast<int>(i));
    return out;
}

std::vector<int> rt_concept::all_leaves() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].is_leaf()) out.push_back(static_cast<int>(i));
    return out;
}

int rt_concept::classify(const std::vector<double>& x) const {
    int cur = 0;
    while (!nodes[static_cast<std::size_t>(cur)].is_leaf()) {
        const auto& node = nodes[static_cast<std::size_t>(cur)];
        cur = x[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left : node.right;
    }
    return nodes[static_cast<std::size_t>(cur)].label;
}

void rt_concept::node_box(int node_id, std::vector<double>& lo, std::vector<double>& hi) const {
    lo.assign(static_cast<std::size_t>(n_features), 0.0);
    hi.assign(static_cast<std::size_t>(n_features), 1.0);
    int cur = node_id;
    while (nodes[static_cast<std::size_t>(cur)].parent >= 0) {
        const int par = nodes[static_cast<std::size_t>(cur)].parent;
        const auto& p = nodes[static_cast<std::size_t>(par)];
        const auto f = static_cast<std::size_t>(p.feature);
        if (p.left == cur)
            hi[f] = std::min(hi[f], p.threshold);
        else
            lo[f] = std::max(lo[f], p.threshold);
        cur = par;
    }
}

rt_concept lerp_concepts(const rt_concept& a, const rt_concept& /*b*/, double /*alpha*/) {
    // trees have no incremental path; transitions are steps
    return a;
}

namespace {

int grow(rt_concept& tree, int parent, int depth, int min_depth, int max_depth,
         std::vector<double>& lo, std::vector<double>& hi, rng& r) {
    const int id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    tree.nodes.back().parent = parent;

    bool stop = depth >= max_depth;
    if (!stop && depth >= min_depth) stop = r.next_double() < kEarlyStopProb;
    if (stop) return id;

    const int f = static_cast<int>(r.uniform_int(tree.n_features));
    const auto fu = static_cast<std::size_t>(f);
    const double threshold = r.uniform(lo[fu], hi[fu]);

    tree.nodes[static_cast<std::size_t>(id)].feature = f;
    tree.nodes[static_cast<std::size_t>(id)].threshold = threshold;

    const double saved_hi = hi[fu];
    hi[fu] = threshold;
    const int left = grow(tree, id, depth + 1, min_depth, max_depth, lo, hi, r);
    hi[fu] = saved_hi;

    const double saved_lo = lo[fu];
    lo[fu] = threshold;
    const int right = grow(tree, id, depth + 1, min_depth, max_depth, lo, hi, r);
    lo[fu] = saved_lo;

    tree.nodes[static_cast<std::size_t>(id)].left = left;
    tree.nodes[static_cast<std::size_t>(id)].right = right;
    return id;
}

}  // namespace

rt_concept rt_base(int n_classes, int n_features, int max_depth, rng& r) {
    const int min_depth = min_depth_for(n_classes);
    if (max_depth < min_depth)
        throw config_error("rt generator: max_depth too small for the class count");

    for (int attempt = 0; attempt < kMaxGrowAttempts; ++attempt) {
        rt_concept tree;
        tree.n_features = n_features;
        tree.n_classes = n_classes;
        std::vector<double> lo(static_cast<std::size_t>(n_features), 0.0);
        std::vector<double> hi(static_cast<std::size_t>(n_features), 1.0);
        grow(tree, -1, 0, min_depth, max_depth, lo, hi, r);

        auto leaves = tree.all_leaves();
        if (static_cast<int>(leaves.size()) < n_classes) continue;

        // shuffled round-robin over the first n leaves guarantees coverage;
        // the rest draw uniform labels
        r.shuffle(leaves);
        for (std::size_t i = 0; i < leaves.size(); ++i) {
            const int label = i < static_cast<std::size_t>(n_classes)
                                  ? static_cast<int>(i)
                                  : static_cast<int>(r.uniform_int(n_classes));
            tree.nodes[static_cast<std::size_t>(leaves[i])].label = label;
        }
        return tree;
    }
    throw config_error("rt generator: could not place every class after 100 attempts");
}

instance rt_sample(const rt_concept& base_concept, rng& r) {
    instance out;
    out.features.resize(static_cast<std::size_t>(base_concept.n_features));
    for (auto& v : out.features) v = r.next_double();
    out.label = base_concept.classify(out.features);
    return out;
}

instance rt_sample_class(const rt_concept& base_concept, int target_class, rng& r) {
    for (int i = 0; i < kMaxRejections; ++i) {
        instance candidate = rt_sample(base_concept, r);
        if (candidate.label == target_class) return candidate;
    }
    throw generation_error("rt generator: class " + std::to_string(target_class) +
                           " unreachable after " + std::to_string(kMaxRejections) + " rejections");
}

namespace {

// majority label of the sibling subtree, ignoring classes being pruned;
// falls back to the tree-wide majority, then to keeping the label
int replacement_label(const rt_concept& tree, int leaf_id, const std::vector<int>& pruned) {
    auto is_pruned = [&](int label) {
        return std::find(pruned.begin(), pruned.end(), label) != pruned.end();
    };
    auto majority = [&](int subtree_root) -> int {
        std::vector<int> counts(static_cast<std::size_t>(tree.n_classes), 0);
        std::vector<int> stack{subtree_root};
        while (!stack.empty()) {
            const int id = stack.back();
            stack.pop_back();
            const auto& node = tree.nodes[static_cast<std::size_t>(id)];
            if (node.is_leaf()) {
                if (node.label >= 0 && !is_pruned(node.label))
                    ++counts[static_cast<std::size_t>(node.label)];
            } else {
                stack.push_back(node.left);
                stack.push_back(node.right);
            }
        }
        int best = -1, best_count = 0;
        for (int c = 0; c < tree.n_classes; ++c) {
            if (counts[static_cast<std::size_t>(c)] > best_count) {
                best = c;
                best_count = counts[static_cast<std::size_t>(c)];
            }
        }
        return best;
    };

    const int parent = tree.nodes[static_cast<std::size_t>(leaf_id)].parent;
    if (parent >= 0) {
        const auto& p = tree.nodes[static_cast<std::size_t>(parent)];
        const int sibling = p.left == leaf_id ? p.right : p.left;
        const int label = majority(sibling);
        if (label >= 0) return label;
    }
    const int label = majority(0);
    if (label >= 0) return label;
    return tree.nodes[static_cast<std::size_t>(leaf_id)].label;
}

void split_leaf(rt_concept& tree, int leaf_id, int new_label, rng& r) {
    std::vector<double> lo, hi;
    tree.node_box(leaf_id, lo, hi);
    const int f = static_cast<int>(r.uniform_int(tree.n_features));
    const auto fu = static_cast<std::size_t>(f);
    const double threshold = r.uniform(lo[fu], hi[fu]);
    const int old_label = tree.nodes[static_cast<std::size_t>(leaf_id)].label;

    const int left = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    const int right = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();

    auto& node = tree.nodes[static_cast<std::size_t>(leaf_id)];
    node.feature = f;
    node.threshold = threshold;
    node.left = left;
    node.right = right;
    node.label = -1;

    const bool new_on_left = r.next_double() < 0.5;
    tree.nodes[static_cast<std::size_t>(left)].parent = leaf_id;
    tree.nodes[static_cast<std::size_t>(right)].parent = leaf_id;
    tree.nodes[static_cast<std::size_t>(left)].label = new_on_left ? new_label : old_label;
    tree.nodes[static_cast<std::size_t>(right)].label = new_on_left ? old_label : new_label;
}

std::vector<int> select_leaves(const rt_concept& tree, int class_id, const drift_spec& spec,
                               rng& r) {
    const auto leaves = tree.leaves_of_class(class_id);
    if (leaves.empty()) throw config_error("affected class has no leaves in rt base_concept");
    int s = static_cast<int>(leaves.size());
    if (is_local(spec.category))
        s = static_cast<int>(std::ceil(spec.scope_fraction * static_cast<double>(leaves.size())));
    const auto picked = r.sample_indices(s, static_cast<int>(leaves.size()));
    std::vector<int> out;
    out.reserve(picked.size());
    for (int idx : picked) out.push_back(leaves[static_cast<std::size_t>(idx)]);
    return out;
}

}  // namespace

rt_transition rt_transform(const rt_concept& base_concept, const std::string& difficulty,
                           const drift_spec& spec, rng& r) {
    if (spec.speed == drift_speed::incremental)
        throw config_error("rt difficulties do not support incremental drift");

    rt_transition tr;
    tr.pre = base_concept;
    tr.post = base_concept;

    std::vector<int> affected = spec.affected_classes;
    std::sort(affected.begin(), affected.end());

    if (difficulty == "emerging_branch") {
        for (int a : affected) {
            std::vector<int> candidates;
            for (int leaf : tr.post.all_leaves())
                if (tr.post.nodes[static_cast<std::size_t>(leaf)].label != a)
                    candidates.push_back(leaf);
            if (candidates.empty()) throw config_error("no host leaf for emerging branch");
            const int host =
                candidates[static_cast<std::size_t>(r.uniform_int(static_cast<std::int64_t>(candidates.size())))];
            split_leaf(tr.post, host, a, r);
        }
        return tr;
    }

    if (difficulty == "prune_regrowth_branch") {
        rt_concept pruned = base_concept;
        for (int a : affected) {
            for (int leaf : select_leaves(base_concept, a, spec, r))
                pruned.nodes[static_cast<std::size_t>(leaf)].label =
                    replacement_label(base_concept, leaf, affected);
        }
        tr.intermediate = std::move(pruned);
        return tr;  // post == pre: the branches regrow
    }

    if (difficulty == "prune_growth_new_branch") {
        for (int a : affected) {
            const auto selected = select_leaves(base_concept, a, spec, r);
            for (int leaf : selected)
                tr.post.nodes[static_cast<std::size_t>(leaf)].label =
                    replacement_label(base_concept, leaf, affected);
            // regrow the same number of branches elsewhere
            for (std::size_t i = 0; i < selected.size(); ++i) {
                std::vector<int> candidates;
                for (int leaf : tr.post.all_leaves())
                    if (tr.post.nodes[static_cast<std::size_t>(leaf)].label != a)
                        candidates.push_back(leaf);
                if (candidates.empty()) break;
                const int host = candidates[static_cast<std::size_t>(
                    r.uniform_int(static_cast<std::int64_t>(candidates.size())))];
                split_leaf(tr.post, host, a, r);
            }
        }
        return tr;
    }

    if (difficulty == "split_node") {
        for (int a : affected) {
            for (int leaf : select_leaves(base_concept, a, spec, r)) {
                int other = a;
                if (base_concept.n_classes > 1) {
                    other = static_cast<int>(r.uniform_int(base_concept.n_classes - 1));
                    if (other >= a) ++other;
                }
                split_leaf(tr.post, leaf, other, r);
            }
        }
        return tr;
    }

    if (difficulty == "swap_leaves") {
        if (affected.size() < 2) throw config_error("swap_leaves requires >= 2 affected classes");
        std::vector<std::vector<int>> selections;
        selections.reserve(affected.size());
        for (int a : affected) selections.push_back(select_leaves(base_concept, a, spec, r));
        for (std::size_t i = 0; i < affected.size(); ++i) {
            const int to = affected[(i + 1) % affected.size()];
            for (int leaf : selections[i])
                tr.post.nodes[static_cast<std::size_t>(leaf)].label = to;
        }
        return tr;
    }

    if (difficulty == "class_emerging") {
        if (is_local(spec.category))
            throw config_error("class_emerging requires global scope");
        const int new_class = base_concept.n_classes;
        tr.post.n_classes = new_class + 1;
        const auto leaves = tr.post.all_leaves();
        const int hosts = std::max<int>(
            1, static_cast<int>(std::ceil(static_cast<double>(leaves.size()) /
                                          static_cast<double>(new_class + 1))));
        const auto picked = r.sample_indices(hosts, static_cast<int>(leaves.size()));
        for (int idx : picked)
            split_leaf(tr.post, leaves[static_cast<std::size_t>(idx)], new_class, r);
        return tr;
    }

    throw config_error("unknown rt difficulty: " + difficulty);
}

}  // namespace driftbench
