// Double-Hoover Sort and the one-sided insertion sorter it generalizes.
//
// Both first bucket items by predicted position. Below, "index" means the
// position in that bucket order, which is also what the per-item boundary
// filters (L^{<i}, R^{>i}) refer to.

#ifndef LASORT_DOUBLE_HOOVER_HPP
#define LASORT_DOUBLE_HOOVER_HPP

#include <lasort/core.hpp>

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace lasort {

enum class Side : std::uint8_t { left, right };

/// Slot in L (sorted by key, holding indices) of the delta-th largest entry
/// whose index is below i; nullopt stands for -inf. Zero key comparisons.
std::optional<std::size_t> boundary_left(std::span<const std::uint32_t> L, std::uint32_t i,
                                         std::size_t delta);
/// Slot in R of the delta-th smallest entry whose index is above i; nullopt
/// stands for +inf.
std::optional<std::size_t> boundary_right(std::span<const std::uint32_t> R, std::uint32_t i,
                                          std::size_t delta);

struct InsertionAudit {
    ItemId item = kSentinel;
    std::uint32_t index = 0; ///< position in bucket order
    std::size_t round = 0;   ///< strength delta of the accepting round
    Side side = Side::left;
    std::uint64_t exploration_comparisons = 0;
    std::uint64_t insertion_comparisons = 0;
    /// Size of the starting binary-search interval, endpoints included.
    std::size_t interval_size = 0;
    /// Every interval member has a smaller (left) or larger (right) index.
    bool interval_within_prefix = true;
    /// The binary search landed strictly inside the starting interval.
    bool landed_inside = true;

    std::uint64_t total() const { return exploration_comparisons + insertion_comparisons; }
};

struct DoubleHooverResult {
    std::vector<ItemId> order;
    std::vector<InsertionAudit> audits; ///< indexed by item
    std::uint64_t merge_comparisons = 0;
    std::size_t left_size = 0;
    std::size_t right_size = 0;
};

DoubleHooverResult double_hoover_sort(const ItemArray& items, const PositionalPrediction& p_hat,
                                      ComparisonLedger& ledger);

/// 2^ceil(log2(x)) for x >= 1.
std::size_t round_strength_ceiling(std::size_t x);

struct OneSidedOptions {
    std::function<void(ItemId, std::uint64_t)> on_insert;
};

/// Learning-augmented insertion into a single sorted array. The left variant
/// inserts in bucket order and gallops leftward from the largest element;
/// the right variant inserts in reverse bucket order and gallops rightward
/// from the smallest.
std::vector<ItemId> one_sided_insertion_sort(const ItemArray& items,
                                             const PositionalPrediction& p_hat, Side side,
                                             ComparisonLedger& ledger,
                                             const OneSidedOptions& options = {});

} // namespace lasort

#endif
