// Displacement Sort: bucket items by predicted position, then insert them in
// that order into a finger tree. Comparisons are O(sum log(|p̂(i) - p(i)| + 2)).

#ifndef LASORT_DISPLACEMENT_SORT_HPP
#define LASORT_DISPLACEMENT_SORT_HPP

#include <lasort/core.hpp>
#include <lasort/finger_tree.hpp>

#include <functional>
#include <span>
#include <vector>

namespace lasort {

/// Stable counting sort of item indices by predicted position. No key
/// comparisons. Throws when a value lies outside [1, n].
std::vector<ItemId> bucket_sort_by_prediction(std::span<const std::uint32_t> predicted);
std::vector<ItemId> bucket_sort_by_prediction(const PositionalPrediction& p_hat);

struct FingerInsertStats {
    ItemId item;
    std::uint64_t comparisons;
    /// Nodes between this item and the previous one in sorted order,
    /// both included; 1 for the first insertion.
    std::size_t distance;
};

struct DisplacementOptions {
    /// Called after each insertion. Computing `distance` costs O(log n) time
    /// per insertion, no comparisons.
    std::function<void(const FingerInsertStats&, const FingerTree&)> on_insert;
};

std::vector<ItemId> displacement_sort(const ItemArray& items, const PositionalPrediction& p_hat,
                                      ComparisonLedger& ledger,
                                      const DisplacementOptions& options = {});

} // namespace lasort

#endif
