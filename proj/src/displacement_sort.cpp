#include <lasort/displacement_sort.hpp>

namespace lasort {

std::vector<ItemId> bucket_sort_by_prediction(std::span<const std::uint32_t> predicted)
{
    const std::size_t n = predicted.size();
    std::vector<std::size_t> start(n + 2, 0);
    for (auto v : predicted) {
        if (v < 1 || v > n)
            throw Error("bucket_sort_by_prediction: predicted position " + std::to_string(v) +
                        " outside [1, " + std::to_string(n) + "]");
        ++start[v + 1];
    }
    for (std::size_t b = 1; b < start.size(); ++b)
        start[b] += start[b - 1];
    std::vector<ItemId> order(n);
    for (ItemId i = 0; i < n; ++i)
        order[start[predicted[i]]++] = i;
    return order;
}

std::vector<ItemId> bucket_sort_by_prediction(const PositionalPrediction& p_hat)
{
    return bucket_sort_by_prediction(p_hat.values());
}

std::vector<ItemId> displacement_sort(const ItemArray& items, const PositionalPrediction& p_hat,
                                      ComparisonLedger& ledger, const DisplacementOptions& options)
{
    if (p_hat.size() != items.size())
        throw Error("displacement_sort: prediction and items differ in size");
    const auto order = bucket_sort_by_prediction(p_hat);
    FingerTree tree(items);
    ItemId previous = kSentinel;
    for (ItemId item : order) {
        ledger.attribute(item);
        const auto before = ledger.clean_total;
        tree.insert(item, ledger);
        ledger.clear_attribution();
        if (options.on_insert) {
            std::size_t distance = 1;
            if (previous != kSentinel) {
                const auto a = tree.rank_of(item), b = tree.rank_of(previous);
                distance = (a > b ? a - b : b - a) + 1;
            }
            options.on_insert({item, ledger.clean_total - before, distance}, tree);
        }
        previous = item;
    }
    return tree.inorder();
}

} // namespace lasort
