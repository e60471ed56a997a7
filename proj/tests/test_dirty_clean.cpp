#include <doctest.h>

#include <lasort/dirty_clean_sort.hpp>
#include <lasort/generators.hpp>

#include "reference.hpp"

#include <algorithm>
#include <cmath>

using namespace lasort;

namespace {

// Every trace must describe a root-to-nil walk with nested bounds.
void check_trace(const SearchTrace& tr, const ItemArray& items, ItemId item)
{
    REQUIRE(tr.T == tr.path.size());
    REQUIRE(tr.T >= 1);
    CHECK(tr.path.front().lower == kSentinel);
    CHECK(tr.path.front().upper == kSentinel);
    CHECK(tr.path.back().node == kSentinel);
    for (std::size_t t = 1; t < tr.T; ++t) {
        const auto& prev = tr.path[t - 1];
        const auto& cur = tr.path[t];
        const bool lower_changed = cur.lower != prev.lower;
        const bool upper_changed = cur.upper != prev.upper;
        CHECK(lower_changed != upper_changed);
        if (lower_changed)
            CHECK(cur.lower == prev.node);
        if (upper_changed)
            CHECK(cur.upper == prev.node);
    }
    REQUIRE(tr.t_star >= 1);
    REQUIRE(tr.t_star <= tr.T);
    const auto& s = tr.path[tr.t_star - 1];
    CHECK((s.lower == kSentinel || items.less(s.lower, item)));
    CHECK((s.upper == kSentinel || items.less(item, s.upper)));
    // t* is the last valid step.
    for (std::size_t t = tr.t_star + 1; t <= tr.T; ++t) {
        const auto& later = tr.path[t - 1];
        const bool valid = (later.lower == kSentinel || items.less(later.lower, item)) &&
                           (later.upper == kSentinel || items.less(item, later.upper));
        CHECK_FALSE(valid);
    }
}

} // namespace

TEST_CASE("n = 3 sorted keys with the exact oracle, every insertion order")
{
    ItemArray items({1, 2, 3});
    ExactOracle exact(items);
    std::vector<ItemId> order{0, 1, 2};
    do {
        ComparisonLedger ledger;
        const auto out = dirty_clean_sort_in_order(items, exact, order, ledger);
        CHECK(verify_sorted(items, out));
        CHECK(ledger.clean_total <= 3);
    } while (std::next_permutation(order.begin(), order.end()));
}

TEST_CASE("n = 2 with the inverted oracle: hand trace")
{
    ItemArray items({1, 2});
    InvertedOracle inverted(items);
    ComparisonLedger ledger;
    const std::vector<ItemId> order{0, 1};
    const auto out = dirty_clean_sort_in_order(items, inverted, order, ledger);
    CHECK(out == std::vector<ItemId>{0, 1});
    CHECK(ledger.clean_total == 2);
    CHECK(ledger.dirty_total == 1);
}

TEST_CASE("n = 1 costs nothing")
{
    ItemArray items({42});
    ExactOracle exact(items);
    ComparisonLedger ledger;
    SeededRng rng(1);
    CHECK(dirty_clean_sort(items, exact, rng, ledger) == std::vector<ItemId>{0});
    CHECK(ledger.clean_total == 0);
    CHECK(ledger.dirty_total == 0);
}

TEST_CASE("insert_one into an empty tree")
{
    ItemArray items({5});
    ExactOracle exact(items);
    SearchTree tree(1);
    ComparisonLedger ledger;
    const auto tr = insert_one(tree, items, 0, exact, ledger);
    CHECK(tr.T == 1);
    CHECK(tr.t_star == 1);
    CHECK(tr.clean() == 0);
    CHECK(tr.dirty == 0);
    CHECK(tree.root() == 0);
    CHECK_THROWS_AS(insert_one(tree, items, 0, exact, ledger), Error);
}

TEST_CASE("always-left oracle inserting the maximum below a path of length d")
{
    // Ascending inserts with the exact oracle build a path of d nodes that
    // always continues rightward; the maximum is then sent left at the root.
    const std::size_t d = 4;
    std::vector<double> keys(d + 1);
    std::iota(keys.begin(), keys.end(), 1.0);
    ItemArray items(keys);
    ExactOracle exact(items);
    AlwaysLeftOracle left(items.size());
    SearchTree tree(items.size());
    ComparisonLedger ledger;
    for (ItemId i = 0; i < d; ++i)
        insert_one(tree, items, i, exact, ledger);
    REQUIRE(tree.height() == d);

    const auto tr = insert_one(tree, items, static_cast<ItemId>(d), left, ledger);
    CHECK(tr.T == 2);
    CHECK(tr.t_star == 1);
    CHECK(tr.search_clean == d);
    CHECK(verify_sorted(items, tree.inorder()));
}

TEST_CASE("exact oracle: t* = T and at most two clean comparisons per insertion")
{
    SeededRng keys_rng(11);
    ItemArray items = random_keys(300, keys_rng);
    ExactOracle exact(items);
    for (auto strategy : {VerificationStrategy::linear, VerificationStrategy::galloping}) {
        DirtyCleanOptions opts;
        opts.insert.strategy = strategy;
        bool ok = true;
        opts.on_insert = [&](ItemId, const SearchTrace& tr, const SearchTree&) {
            ok = ok && tr.t_star == tr.T && tr.clean() <= 2 && tr.search_clean == 0;
        };
        ComparisonLedger ledger;
        SeededRng rng(5);
        const auto out = dirty_clean_sort(items, exact, rng, ledger, opts);
        CHECK(ok);
        CHECK(verify_sorted(items, out));
    }
}

TEST_CASE("traces, ledger totals and the BST invariant on noisy oracles")
{
    SeededRng rng(99);
    for (int round = 0; round < 40; ++round) {
        const std::size_t n = 1 + rng.uniform(120);
        auto inst = gen_dirty_damaged(n, 0.1 * (round % 11), round % 2 ? DamageMode::good_dominating
                                                                      : DamageMode::bad_dominating,
                                      rng.next());
        const ItemArray& items = *inst.items;
        for (auto strategy : {VerificationStrategy::linear, VerificationStrategy::galloping}) {
            DirtyCleanOptions opts;
            opts.insert.strategy = strategy;
            opts.insert.record_subtree_sizes = true;
            opts.insert.check_asymmetry = true;
            std::uint64_t steps = 0, clean = 0;
            bool bst = true;
            opts.on_insert = [&](ItemId item, const SearchTrace& tr, const SearchTree& tree) {
                check_trace(tr, items, item);
                CHECK(tr.subtree_sizes.size() == tr.T);
                CHECK(tr.subtree_sizes.front() + 1 == tree.size());
                CHECK(tr.subtree_sizes.back() == 0);
                if (strategy == VerificationStrategy::linear)
                    CHECK(tr.validity_checks == tr.T - tr.t_star + 1);
                else
                    CHECK(tr.validity_checks <=
                          2 * static_cast<std::uint64_t>(std::ceil(std::log2(tr.T - tr.t_star + 2.0))) + 1);
                steps += tr.T - 1;
                clean += tr.clean();
                bst = bst && verify_sorted(items, tree.inorder());
            };
            ComparisonLedger ledger;
            SeededRng order_rng(round);
            const auto out = dirty_clean_sort(items, *inst.oracle, order_rng, ledger, opts);
            CHECK(bst);
            CHECK(verify_sorted(items, out));
            CHECK(is_permutation_of(n, out));
            CHECK(ledger.dirty_total == steps);
            CHECK(ledger.clean_total == clean);
        }
    }
}

TEST_CASE("linear and galloping verification agree on t* and the final tree")
{
    SeededRng rng(7);
    for (int round = 0; round < 20; ++round) {
        const std::size_t n = 2 + rng.uniform(200);
        auto inst = gen_block_permutation(n, 1 + rng.uniform(n), rng.next());
        std::vector<std::vector<std::size_t>> stars(2);
        std::vector<std::vector<ItemId>> parents(2);
        for (int s = 0; s < 2; ++s) {
            DirtyCleanOptions opts;
            opts.insert.strategy = s == 0 ? VerificationStrategy::linear : VerificationStrategy::galloping;
            opts.on_insert = [&](ItemId, const SearchTrace& tr, const SearchTree& tree) {
                stars[s].push_back(tr.t_star);
                if (tree.size() == n)
                    for (ItemId v = 0; v < n; ++v)
                        parents[s].push_back(tree.parent(v));
            };
            ComparisonLedger ledger;
            SeededRng order_rng(round);
            dirty_clean_sort(*inst.items, *inst.oracle, order_rng, ledger, opts);
        }
        CHECK(stars[0] == stars[1]);
        CHECK(parents[0] == parents[1]);
    }
}

TEST_CASE("asymmetry violations are detected on request")
{
    struct Broken final : DirtyOracle {
        std::size_t n;
        explicit Broken(std::size_t n) : n(n) {}
        bool query(ItemId, ItemId) override { return true; }
        std::size_t size() const override { return n; }
    };
    ItemArray items({1, 2, 3});
    Broken broken(3);
    ComparisonLedger ledger;
    SeededRng rng(1);
    DirtyCleanOptions opts;
    opts.insert.check_asymmetry = true;
    CHECK_THROWS_AS(dirty_clean_sort(items, broken, rng, ledger, opts), Error);
    ComparisonLedger quiet;
    SeededRng rng2(1);
    CHECK(verify_sorted(items, dirty_clean_sort(items, broken, rng2, quiet)));
}

TEST_CASE("majority voting")
{
    ItemArray items({1, 2});
    ComparisonLedger ledger;
    ProbabilisticOracle never(items, 0.0, 1);
    ProbabilisticOracle always(items, 1.0, 1);
    for (unsigned reps : {1u, 3u, 5u}) {
        CHECK(majority_dirty(never, 0, 1, reps, ledger));
        CHECK_FALSE(majority_dirty(always, 0, 1, reps, ledger));
    }
    CHECK(ledger.dirty_total == 2 * (1 + 3 + 5));
    CHECK_THROWS_AS(majority_dirty(never, 0, 1, 2, ledger), Error);
    CHECK_THROWS_AS(majority_dirty(never, 0, 1, 0, ledger), Error);

    ProbabilisticOracle quarter(items, 0.25, 17);
    const int trials = 100000;
    int wrong = 0;
    for (int k = 0; k < trials; ++k)
        wrong += majority_dirty(quarter, 0, 1, 3, ledger) ? 0 : 1;
    const double expected = 3 * 0.25 * 0.25 * 0.75 + 0.25 * 0.25 * 0.25;
    CHECK(std::abs(static_cast<double>(wrong) / trials - expected) < 0.01);
}

TEST_CASE("hedge state")
{
    HedgeState h(4, 100);
    CHECK(h.beta == doctest::Approx(1.0 / (1.0 + std::sqrt(2.0 * std::log(4.0) / 100.0))));
    for (double p : h.probabilities())
        CHECK(p == doctest::Approx(0.25));
    h.update(std::vector<double>{0.0, 1.0, 0.0, 2.0});
    const auto p = h.probabilities();
    CHECK(p[0] == doctest::Approx(p[2]));
    CHECK(p[1] < p[0]);
    CHECK(p[3] < p[1]);
    CHECK(p[1] / p[0] == doctest::Approx(h.beta));
    CHECK(h.losses[3] == doctest::Approx(2.0));
    for (double w : h.weights)
        CHECK(w > 0.0);
    CHECK_THROWS_AS(h.update(std::vector<double>{1.0}), Error);
    CHECK_THROWS_AS(HedgeState(0, 10), Error);

    // Sampling frequencies follow the probabilities.
    SeededRng rng(3);
    std::vector<int> hits(4, 0);
    for (int k = 0; k < 40000; ++k)
        ++hits[h.sample(rng)];
    for (std::size_t e = 0; e < 4; ++e)
        CHECK(std::abs(hits[e] / 40000.0 - p[e]) < 0.015);
}

TEST_CASE("multiple predictors: k = 1 reproduces the single-oracle run")
{
    auto inst = gen_dirty_damaged(500, 0.4, DamageMode::bad_dominating, 8);
    const ItemArray& it = *inst.items;
    ComparisonLedger single, multi;
    SeededRng a(77), b(77);
    const auto out1 = dirty_clean_sort(it, *inst.oracle, a, single);
    DirtyOracle* one[] = {inst.oracle.get()};
    const auto res = multi_predictor_sort(it, one, b, multi);
    CHECK(out1 == res.order);
    CHECK(single.clean_total == multi.clean_total);
    CHECK(single.dirty_total == multi.dirty_total);
    CHECK(multi.bookkeeping_dirty > 0);
}

TEST_CASE("multiple predictors: two exact predictors never lose weight")
{
    SeededRng keys_rng(4);
    ItemArray items = random_keys(200, keys_rng);
    ExactOracle e1(items), e2(items);
    DirtyOracle* both[] = {&e1, &e2};
    ComparisonLedger ledger;
    SeededRng rng(5);
    const auto res = multi_predictor_sort(items, both, rng, ledger);
    CHECK(verify_sorted(items, res.order));
    CHECK(res.hedge.losses == std::vector<double>{0.0, 0.0});
    CHECK(res.hedge.weights[0] == res.hedge.weights[1]);
    CHECK(res.choices.size() == 200);
}

TEST_CASE("multiple predictors: exact plus inverted stays within 2x of exact alone")
{
    const std::size_t n = 1024;
    double multi_sum = 0, exact_sum = 0;
    for (int trial = 0; trial < 30; ++trial) {
        SeededRng keys_rng(mix_seed(500, trial));
        ItemArray items = random_keys(n, keys_rng);
        ExactOracle exact(items);
        InvertedOracle inverted(items);
        DirtyOracle* pair[] = {&exact, &inverted};
        ComparisonLedger a, b;
        SeededRng r1(trial), r2(trial);
        const auto res = multi_predictor_sort(items, pair, r1, a);
        CHECK(verify_sorted(items, res.order));
        dirty_clean_sort(items, exact, r2, b);
        multi_sum += static_cast<double>(a.clean_total);
        exact_sum += static_cast<double>(b.clean_total);
    }
    CHECK(multi_sum <= 2.0 * exact_sum);
}

TEST_CASE("multiple predictors: degenerate sizes")
{
    ItemArray items({3});
    ExactOracle exact(items);
    DirtyOracle* one[] = {&exact};
    ComparisonLedger ledger;
    SeededRng rng(1);
    CHECK(multi_predictor_sort(items, one, rng, ledger).order == std::vector<ItemId>{0});
    CHECK_THROWS_AS(multi_predictor_sort(items, std::span<DirtyOracle* const>{}, rng, ledger), Error);
}

TEST_CASE("replaying a seed gives identical ledgers")
{
    auto inst = gen_dirty_damaged(300, 0.3, DamageMode::good_dominating, 12);
    ComparisonLedger a, b;
    SeededRng r1(9), r2(9);
    const auto o1 = dirty_clean_sort(*inst.items, *inst.oracle, r1, a);
    const auto o2 = dirty_clean_sort(*inst.items, *inst.oracle, r2, b);
    CHECK(o1 == o2);
    CHECK(a == b);
}
