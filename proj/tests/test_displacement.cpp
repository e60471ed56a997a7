#include <doctest.h>

#include <lasort/displacement_sort.hpp>
#include <lasort/error_metrics.hpp>
#include <lasort/finger_tree.hpp>
#include <lasort/generators.hpp>

#include "reference.hpp"

#include <cmath>

using namespace lasort;
using V = std::vector<std::uint32_t>;

TEST_CASE("bucket sort by prediction")
{
    CHECK(bucket_sort_by_prediction(V{3, 1, 2}) == std::vector<ItemId>{1, 2, 0});
    CHECK(bucket_sort_by_prediction(V{2, 2, 2}) == std::vector<ItemId>{0, 1, 2});
    CHECK(bucket_sort_by_prediction(V{1, 2, 3, 4}) == std::vector<ItemId>{0, 1, 2, 3});
    CHECK_THROWS_AS(bucket_sort_by_prediction(V{1, 4, 2}), Error);
    CHECK_THROWS_AS(bucket_sort_by_prediction(V{0, 1}), Error);

    SeededRng rng(5);
    for (int round = 0; round < 100; ++round) {
        const std::size_t n = 1 + rng.uniform(50);
        V q(n);
        for (auto& v : q)
            v = 1 + static_cast<std::uint32_t>(rng.uniform(n));
        CHECK(bucket_sort_by_prediction(q) == ref::stable_bucket_order(q));
    }
}

namespace {

// Keys 0, 2, 4, ... inserted in ascending order, then a finger item at an odd
// key, then a target at distance about `d` nodes to the right or left.
std::uint64_t comparisons_at_distance(std::size_t base, std::size_t finger_pos, std::size_t d, bool right)
{
    std::vector<double> keys(base + 2);
    for (std::size_t k = 0; k < base; ++k)
        keys[k] = 2.0 * static_cast<double>(k);
    keys[base] = 2.0 * static_cast<double>(finger_pos) + 1;
    keys[base + 1] = 2.0 * static_cast<double>(right ? finger_pos + d : finger_pos - d) + 1;
    ItemArray items(keys);
    FingerTree tree(items);
    ComparisonLedger scratch;
    for (ItemId k = 0; k <= base; ++k)
        tree.insert(k, scratch);
    ComparisonLedger ledger;
    tree.insert(static_cast<ItemId>(base + 1), ledger);
    REQUIRE(tree.check_invariants());
    return ledger.clean_total;
}

} // namespace

TEST_CASE("finger insert basics")
{
    ItemArray items({5, 1, 9, 3});
    FingerTree tree(items);
    ComparisonLedger ledger;
    tree.insert(0, ledger);
    CHECK(ledger.clean_total == 0);
    CHECK(tree.finger() == 0);
    tree.insert(2, ledger);
    CHECK(tree.finger() == 2);
    tree.insert(1, ledger);
    tree.insert(3, ledger);
    CHECK(tree.inorder() == std::vector<ItemId>{1, 3, 0, 2});
    CHECK(tree.rank_of(0) == 2);
    CHECK_THROWS_AS(tree.insert(3, ledger), Error);
    CHECK_THROWS_AS(tree.insert(7, ledger), Error);
}

TEST_CASE("inserting the finger's successor is cheap")
{
    const std::size_t n = 1000;
    std::vector<double> keys(n);
    for (std::size_t k = 0; k < n; ++k)
        keys[k] = static_cast<double>(k);
    ItemArray items(keys);
    FingerTree tree(items);
    ComparisonLedger ledger;
    std::uint64_t worst = 0;
    for (ItemId k = 0; k < n; ++k) {
        const auto before = ledger.clean_total;
        tree.insert(k, ledger);
        worst = std::max(worst, ledger.clean_total - before);
    }
    CHECK(worst <= 4);
}

TEST_CASE("finger search cost grows with log distance")
{
    const std::size_t base = 1u << 14;
    for (bool right : {true, false}) {
        const std::size_t finger_pos = right ? 1000 : base - 1000;
        std::vector<double> cost;
        for (std::size_t j = 2; j <= 12; ++j)
            cost.push_back(static_cast<double>(comparisons_at_distance(base, finger_pos, std::size_t{1} << j, right)));
        // Least-squares slope of cost against j.
        double mean_j = 7.0, mean_c = 0.0;
        for (double c : cost)
            mean_c += c / static_cast<double>(cost.size());
        double num = 0.0, den = 0.0;
        for (std::size_t k = 0; k < cost.size(); ++k) {
            const double j = static_cast<double>(k + 2);
            num += (j - mean_j) * (cost[k] - mean_c);
            den += (j - mean_j) * (j - mean_j);
        }
        const double slope = num / den;
        INFO("right=" << right << " slope=" << slope << " cost(j=12)=" << cost.back());
        CHECK(slope <= 4.0);
        CHECK(slope > 0.0);
        for (std::size_t k = 0; k < cost.size(); ++k)
            CHECK(cost[k] <= 4.0 * static_cast<double>(k + 2) + 4.0);
    }
}

TEST_CASE("per-insertion comparisons are logarithmic in the finger distance")
{
    SeededRng rng(31);
    for (std::size_t b : {1u, 8u, 64u, 4096u}) {
        auto inst = gen_block_permutation(1u << 12, b, rng.next());
        DisplacementOptions opts;
        double worst_ratio = 0.0;
        bool sorted_each = true;
        std::size_t count = 0;
        opts.on_insert = [&](const FingerInsertStats& s, const FingerTree& tree) {
            const double bound = std::log2(static_cast<double>(s.distance)) + 1.0;
            worst_ratio = std::max(worst_ratio, static_cast<double>(s.comparisons) / bound);
            if (++count % 256 == 0)
                sorted_each = sorted_each && tree.check_invariants();
        };
        ComparisonLedger ledger;
        const auto out = displacement_sort(*inst.items, *inst.prediction, ledger, opts);
        CHECK(verify_sorted(*inst.items, out));
        CHECK(sorted_each);
        INFO("block " << b << " worst ratio " << worst_ratio);
        CHECK(worst_ratio <= 6.0);
    }
}

TEST_CASE("tree height respects the balance bound")
{
    for (int mode = 0; mode < 3; ++mode) {
        const std::size_t n = 1u << 16;
        std::vector<double> keys(n);
        for (std::size_t k = 0; k < n; ++k)
            keys[k] = mode == 1 ? static_cast<double>(n - k) : static_cast<double>(k);
        if (mode == 2) {
            SeededRng rng(8);
            rng.shuffle(keys);
        }
        ItemArray items(keys);
        FingerTree tree(items);
        ComparisonLedger ledger;
        bool ok = true;
        for (ItemId k = 0; k < n; ++k) {
            tree.insert(k, ledger);
            if ((k & (k + 1)) == 0 || k % 4096 == 0)
                ok = ok && tree.height() <= FingerTree::height_bound(tree.size());
        }
        CHECK(ok);
        CHECK(tree.check_invariants());
        CHECK(verify_sorted(items, tree.inorder()));
    }
    CHECK(FingerTree::height_bound(0) == 0);
    CHECK(FingerTree::height_bound(1) == 1);
    CHECK(FingerTree::height_bound(2) == 2);
}

TEST_CASE("displacement sort examples")
{
    SUBCASE("perfect prediction at n = 10^4")
    {
        SeededRng rng(1);
        ItemArray items = random_keys(10000, rng);
        ComparisonLedger ledger;
        const auto out = displacement_sort(items, PositionalPrediction::from(rank_permutation(items)), ledger);
        CHECK(verify_sorted(items, out));
        CHECK(ledger.clean_total <= 4 * 10000);
    }
    SUBCASE("reversed prediction at n = 2^10")
    {
        const std::size_t n = 1024;
        SeededRng rng(2);
        ItemArray items = random_keys(n, rng);
        const auto p = rank_permutation(items);
        V q(n);
        for (ItemId i = 0; i < n; ++i)
            q[i] = static_cast<std::uint32_t>(n + 1 - p[i]);
        ComparisonLedger ledger;
        const auto out = displacement_sort(items, PositionalPrediction(q), ledger);
        CHECK(verify_sorted(items, out));
        // Every insertion lands next to the finger, so the cost stays linear
        // even though each displacement is of order n.
        const double nlogn = n * std::log2(static_cast<double>(n));
        CHECK(static_cast<double>(ledger.clean_total) <= 4.0 * nlogn);
        CHECK(ledger.clean_total <= 4 * n);
        CHECK(ledger.clean_total >= n - 1);
    }
    SUBCASE("n = 1")
    {
        ItemArray items({3});
        ComparisonLedger ledger;
        CHECK(displacement_sort(items, PositionalPrediction({1}), ledger) == std::vector<ItemId>{0});
        CHECK(ledger.clean_total == 0);
    }
}

TEST_CASE("displacement sort on random predictions")
{
    SeededRng rng(77);
    for (int round = 0; round < 200; ++round) {
        const std::size_t n = 1 + rng.uniform(256);
        std::vector<double> keys(n);
        for (auto& k : keys)
            k = static_cast<double>(rng.uniform(n));
        ItemArray items(keys);
        V q(n);
        for (auto& v : q)
            v = 1 + static_cast<std::uint32_t>(rng.uniform(n));
        ComparisonLedger ledger;
        ledger.track_items(n);
        DisplacementOptions opts;
        bool ok = true;
        opts.on_insert = [&](const FingerInsertStats&, const FingerTree& tree) {
            if (n <= 64)
                ok = ok && tree.check_invariants();
        };
        const auto out = displacement_sort(items, PositionalPrediction(q), ledger, opts);
        CHECK(ok);
        CHECK(is_permutation_of(n, out));
        CHECK(verify_sorted(items, out));
        CHECK(ledger.unattributed_clean == 0);
        CHECK(std::accumulate(ledger.per_item_clean.begin(), ledger.per_item_clean.end(), 0ull) ==
              ledger.clean_total);
    }
}
