#include <doctest.h>

#include <cmath>
#include <set>

#include "driftbench/random_tree.hpp"
#include "driftbench/rbf.hpp"

using namespace driftbench;

namespace {

drift_spec make_spec(drift_category cat, const std::string& difficulty,
                     std::vector<int> affected, double scope = 1.0) {
    drift_spec spec;
    spec.category = cat;
    spec.difficulty = difficulty;
    spec.speed = drift_speed::sudden;
    spec.position = 1000;
    spec.width = 0;
    spec.affected_classes = std::move(affected);
    spec.scope_fraction = scope;
    return spec;
}

}  // namespace

TEST_CASE("rbf base concept has the requested shape") {
    rng r(7);
    const auto base = rbf_base(2, 2, 3, r);
    REQUIRE(base.classes.size() == 2);
    CHECK(base.classes[0].size() == 3);
    CHECK(base.classes[1].size() == 3);

    rng r2(7);
    const auto again = rbf_base(2, 2, 3, r2);
    CHECK(base == again);

    rng r3(11);
    const auto big = rbf_base(10, 10, 4, r3);
    for (const auto& cls : big.classes)
        for (const auto& c : cls)
            for (double v : c.center) {
                CHECK(v >= 0.0);
                CHECK(v <= 1.0);
            }

    rng r4(1);
    CHECK_THROWS_AS(rbf_base(2, 2, 1, r4), config_error);
}

TEST_CASE("rbf sampling concentrates on the chosen centroid") {
    rbf_concept tight;
    tight.n_features = 2;
    tight.classes = {{{{0.3, 0.7}, 1e-9, 1.0}}};
    rng r(3);
    const auto inst = rbf_sample(tight, 0, r);
    CHECK(inst.features[0] == doctest::Approx(0.3).epsilon(1e-6));
    CHECK(inst.features[1] == doctest::Approx(0.7).epsilon(1e-6));
    CHECK(inst.label == 0);

    CHECK_THROWS_AS(rbf_sample(tight, 1, r), std::invalid_argument);
}

TEST_CASE("rbf sample mean matches the centroid over many draws") {
    rbf_concept one;
    one.n_features = 2;
    one.classes = {{{{0.5, 0.4}, 0.05, 1.0}}};
    rng r(17);
    double sum0 = 0.0, sum1 = 0.0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        const auto inst = rbf_sample(one, 0, r);
        sum0 += inst.features[0];
        sum1 += inst.features[1];
    }
    // center is far from the walls, so clipping is negligible
    const double tol = 3.0 * 0.05 / std::sqrt(static_cast<double>(n));
    CHECK(std::abs(sum0 / n - 0.5) < tol);
    CHECK(std::abs(sum1 / n - 0.4) < tol);
}

TEST_CASE("moving_cluster global relocates exactly the affected class") {
    rng r(5);
    const auto base = rbf_base(3, 2, 3, r);
    const auto spec = make_spec(drift_category::single_class_global, "moving_cluster", {0});
    rng tr_rng(6);
    const auto tr = rbf_transform(base, "moving_cluster", spec, tr_rng);

    int moved = 0;
    for (std::size_t i = 0; i < base.classes[0].size(); ++i)
        if (tr.post.classes[0][i].center != base.classes[0][i].center) ++moved;
    CHECK(moved == 3);
    CHECK(tr.post.classes[1] == base.classes[1]);
    CHECK(tr.post.classes[2] == base.classes[2]);
}

TEST_CASE("swap_cluster exchanges selected centers between the two classes") {
    rng r(9);
    const auto base = rbf_base(2, 2, 3, r);
    const auto spec = make_spec(drift_category::multi_class_global, "swap_cluster", {0, 1});
    rng tr_rng(10);
    const auto tr = rbf_transform(base, "swap_cluster", spec, tr_rng);

    auto centers = [](const std::vector<rbf_centroid>& cls) {
        std::multiset<std::vector<double>> out;
        for (const auto& c : cls) out.insert(c.center);
        return out;
    };
    CHECK(centers(tr.post.classes[0]) == centers(base.classes[1]));
    CHECK(centers(tr.post.classes[1]) == centers(base.classes[0]));
}

TEST_CASE("splitting_cluster interpolates children halfway at alpha 0.5") {
    rng r(13);
    const auto base = rbf_base(2, 3, 4, r);
    auto spec = make_spec(drift_category::single_class_global, "splitting_cluster", {0});
    spec.speed = drift_speed::incremental;
    spec.width = 1000;
    rng tr_rng(14);
    const auto tr = rbf_transform(base, "splitting_cluster", spec, tr_rng);

    REQUIRE(tr.lerp_endpoints.has_value());
    const auto& from = tr.lerp_endpoints->first;
    const auto& to = tr.lerp_endpoints->second;
    const auto mid = tr.at(0.5);
    REQUIRE(mid.classes[0].size() == to.classes[0].size());
    for (std::size_t i = 0; i < mid.classes[0].size(); ++i) {
        for (std::size_t f = 0; f < 3; ++f) {
            const double expect = (from.classes[0][i].center[f] + to.classes[0][i].center[f]) / 2.0;
            CHECK(std::abs(mid.classes[0][i].center[f] - expect) < 1e-12);
        }
    }
    // split children double the affected class's centroid count
    CHECK(tr.post.classes[0].size() == base.classes[0].size() * 2);
    // mass is preserved per split pair
    double pre_weight = 0.0, post_weight = 0.0;
    for (const auto& c : base.classes[0]) pre_weight += c.weight;
    for (const auto& c : tr.post.classes[0]) post_weight += c.weight;
    CHECK(pre_weight == doctest::Approx(post_weight));
}

TEST_CASE("reappearing and merging keep their contracts") {
    rng r(23);
    const auto base = rbf_base(2, 2, 4, r);

    rng t1(24);
    const auto reappear = rbf_transform(
        base, "reappearing_cluster",
        make_spec(drift_category::single_class_global, "reappearing_cluster", {0}), t1);
    CHECK(reappear.post == reappear.pre);
    REQUIRE(reappear.intermediate.has_value());
    CHECK(reappear.intermediate->classes[0].empty());
    CHECK(reappear.intermediate->classes[1] == base.classes[1]);

    rng t2(25);
    auto merge_spec = make_spec(drift_category::single_class_global, "merging_cluster", {0});
    merge_spec.speed = drift_speed::incremental;
    merge_spec.width = 1000;
    const auto merged = rbf_transform(base, "merging_cluster", merge_spec, t2);
    CHECK(merged.post.classes[0].size() == 2);  // 4 centroids fused pairwise
    double pre_weight = 0.0, post_weight = 0.0;
    for (const auto& c : base.classes[0]) pre_weight += c.weight;
    for (const auto& c : merged.post.classes[0]) post_weight += c.weight;
    CHECK(pre_weight == doctest::Approx(post_weight));
}

TEST_CASE("emerging_cluster and class_emerging grow the concept") {
    rng r(31);
    const auto base = rbf_base(3, 2, 4, r);

    rng t1(32);
    const auto emerging = rbf_transform(
        base, "emerging_cluster",
        make_spec(drift_category::single_class_local, "emerging_cluster", {1}, 0.5), t1);
    CHECK(emerging.post.classes[1].size() == base.classes[1].size() + 1);
    CHECK(emerging.post.classes[0] == base.classes[0]);

    rng t2(33);
    const auto grown = rbf_transform(
        base, "class_emerging",
        make_spec(drift_category::single_class_global, "class_emerging", {3}), t2);
    CHECK(grown.post.classes.size() == 4);
    CHECK(grown.post.classes[3].size() == base.classes[0].size());
    CHECK(grown.pre.classes.size() == 3);
}

TEST_CASE("rbf speed compatibility is enforced") {
    rng r(41);
    const auto base = rbf_base(2, 2, 4, r);
    auto spec = make_spec(drift_category::single_class_global, "reappearing_cluster", {0});
    spec.speed = drift_speed::incremental;
    spec.width = 500;
    rng t(42);
    CHECK_THROWS_AS(rbf_transform(base, "reappearing_cluster", spec, t), config_error);
    CHECK_THROWS_AS(rbf_transform(base, "no_such_difficulty",
                                  make_spec(drift_category::single_class_global,
                                            "no_such_difficulty", {0}),
                                  t),
                    config_error);
}

// ------------------------------------------------------------------- rt --

TEST_CASE("rt base places every class and respects depth") {
    rng r(51);
    const auto tree = rt_base(2, 2, 1, r);
    const auto leaves = tree.all_leaves();
    REQUIRE(leaves.size() == 2);
    std::set<int> labels;
    for (int leaf : leaves) labels.insert(tree.nodes[static_cast<std::size_t>(leaf)].label);
    CHECK(labels == std::set<int>{0, 1});

    for (int n : {2, 3, 5, 10}) {
        rng rr(static_cast<std::uint64_t>(100 + n));
        const auto t = rt_base(n, 5, 6, rr);
        CHECK(t.present_classes().size() == static_cast<std::size_t>(n));
    }

    rng bad(1);
    CHECK_THROWS_AS(rt_base(10, 2, 2, bad), config_error);
}

TEST_CASE("rt classification is reachable for every class") {
    rng r(61);
    const auto tree = rt_base(5, 3, 6, r);
    std::vector<int> counts(5, 0);
    rng sample_rng(62);
    for (int i = 0; i < 50000; ++i) {
        const auto inst = rt_sample(tree, sample_rng);
        ++counts[static_cast<std::size_t>(inst.label)];
    }
    for (int c = 0; c < 5; ++c) CHECK(counts[static_cast<std::size_t>(c)] > 0);
}

TEST_CASE("rt sampling labels agree with an independent re-traversal") {
    rng r(71);
    const auto tree = rt_base(3, 4, 5, r);
    rng sample_rng(72);
    for (int i = 0; i < 2000; ++i) {
        const auto inst = rt_sample(tree, sample_rng);
        CHECK(inst.label == tree.classify(inst.features));
    }
}

TEST_CASE("depth-1 tree routes by the root threshold") {
    rt_concept tree;
    tree.n_features = 2;
    tree.n_classes = 2;
    tree.nodes.resize(3);
    tree.nodes[0].feature = 0;
    tree.nodes[0].threshold = 0.5;
    tree.nodes[0].left = 1;
    tree.nodes[0].right = 2;
    tree.nodes[1].parent = 0;
    tree.nodes[1].label = 0;
    tree.nodes[2].parent = 0;
    tree.nodes[2].label = 1;

    CHECK(tree.classify({0.2, 0.9}) == 0);
    CHECK(tree.classify({0.7, 0.1}) == 1);

    rng r(1);
    const auto inst = rt_sample_class(tree, 1, r);
    CHECK(inst.features[0] > 0.5);
}

TEST_CASE("swap_leaves relabels regions as an involution") {
    rng r(81);
    const auto base = rt_base(3, 2, 5, r);
    const auto spec = make_spec(drift_category::multi_class_global, "swap_leaves", {0, 1});
    rng t(82);
    const auto tr = rt_transform(base, "swap_leaves", spec, t);

    rng probe(83);
    for (int i = 0; i < 5000; ++i) {
        std::vector<double> x{probe.next_double(), probe.next_double()};
        const int before = base.classify(x);
        const int after = tr.post.classify(x);
        if (before == 0)
            CHECK(after == 1);
        else if (before == 1)
            CHECK(after == 0);
        else
            CHECK(after == before);
    }
}

TEST_CASE("prune_regrowth restores the original tree") {
    rng r(91);
    const auto base = rt_base(4, 3, 6, r);
    const auto spec =
        make_spec(drift_category::single_class_global, "prune_regrowth_branch", {2});
    rng t(92);
    const auto tr = rt_transform(base, "prune_regrowth_branch", spec, t);
    CHECK(tr.post == tr.pre);
    REQUIRE(tr.intermediate.has_value());
    // the pruned tree no longer answers with the affected class
    CHECK(tr.intermediate->leaves_of_class(2).empty());
    // structure unchanged, only labels moved
    CHECK(tr.intermediate->nodes.size() == base.nodes.size());
}

TEST_CASE("emerging_branch adds one leaf per affected class") {
    rng r(101);
    const auto base = rt_base(3, 2, 5, r);
    const auto n_leaves = static_cast<std::int64_t>(base.all_leaves().size());

    rng t1(102);
    const auto single = rt_transform(
        base, "emerging_branch",
        make_spec(drift_category::single_class_local, "emerging_branch", {0}, 0.5), t1);
    CHECK(static_cast<std::int64_t>(single.post.all_leaves().size()) == n_leaves + 1);

    rng t2(103);
    const auto multi = rt_transform(
        base, "emerging_branch",
        make_spec(drift_category::multi_class_local, "emerging_branch", {0, 1, 2}, 0.5), t2);
    CHECK(static_cast<std::int64_t>(multi.post.all_leaves().size()) == n_leaves + 3);
}

TEST_CASE("split_node and prune_growth change the affected regions") {
    rng r(111);
    const auto base = rt_base(3, 2, 5, r);

    rng t1(112);
    const auto split = rt_transform(
        base, "split_node",
        make_spec(drift_category::multi_class_global, "split_node", {0, 1}), t1);
    const auto n0 = base.leaves_of_class(0).size() + base.leaves_of_class(1).size();
    CHECK(split.post.all_leaves().size() == base.all_leaves().size() + n0);

    rng t2(113);
    const auto regrow = rt_transform(
        base, "prune_growth_new_branch",
        make_spec(drift_category::single_class_global, "prune_growth_new_branch", {0}), t2);
    // the class lives somewhere else afterwards
    CHECK(!regrow.post.leaves_of_class(0).empty());
    CHECK(regrow.post.nodes.size() > base.nodes.size());
    CHECK(!(regrow.post == base));
}

TEST_CASE("rt rejects incremental drift") {
    rng r(121);
    const auto base = rt_base(2, 2, 4, r);
    auto spec = make_spec(drift_category::multi_class_global, "swap_leaves", {0, 1});
    spec.speed = drift_speed::incremental;
    spec.width = 100;
    rng t(122);
    CHECK_THROWS_AS(rt_transform(base, "swap_leaves", spec, t), config_error);
}

TEST_CASE("class_emerging on rt introduces class n") {
    rng r(131);
    const auto base = rt_base(3, 2, 5, r);
    rng t(132);
    const auto tr = rt_transform(
        base, "class_emerging",
        make_spec(drift_category::single_class_global, "class_emerging", {3}), t);
    CHECK(tr.post.n_classes == 4);
    CHECK(!tr.post.leaves_of_class(3).empty());
    CHECK(tr.pre.n_classes == 3);
}

// ---------------------------------------------------- shared invariants --

TEST_CASE("local scope leaves unselected rbf centroids bit-identical") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        rng r(seed);
        const auto base = rbf_base(3, 2, 4, r);
        auto spec = make_spec(drift_category::single_class_local, "moving_cluster", {0}, 0.5);
        rng t(seed + 1000);
        const auto tr = rbf_transform(base, "moving_cluster", spec, t);

        int identical = 0;
        for (std::size_t i = 0; i < base.classes[0].size(); ++i)
            if (tr.post.classes[0][i] == base.classes[0][i]) ++identical;
        CHECK(identical == 2);  // ceil(0.5 * 4) = 2 moved, 2 untouched
        CHECK(tr.post.classes[1] == base.classes[1]);
        CHECK(tr.post.classes[2] == base.classes[2]);
    }
}
