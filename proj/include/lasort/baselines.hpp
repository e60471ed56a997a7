// Reference comparison sorters. Every key comparison is charged to the
// ledger as a clean comparison.

#ifndef LASORT_BASELINES_HPP
#define LASORT_BASELINES_HPP

#include <lasort/core.hpp>

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace lasort {

enum class BaselineKind { quicksort, mergesort, natural_merge, odd_even_straight, cook_kim };

std::string_view to_string(BaselineKind kind);
/// Throws lasort::Error on an unknown tag.
BaselineKind parse_baseline(std::string_view tag);
std::span<const BaselineKind> all_baselines();

/// Sorts `input` (a sequence of item indices, presented in this order).
std::vector<ItemId> run_baseline(BaselineKind kind, const ItemArray& items,
                                 std::span<const ItemId> input, SeededRng& rng,
                                 ComparisonLedger& ledger);
/// Same, presenting items in index order.
std::vector<ItemId> run_baseline(BaselineKind kind, const ItemArray& items, SeededRng& rng,
                                 ComparisonLedger& ledger);

std::vector<ItemId> quicksort(const ItemArray& items, std::span<const ItemId> input,
                              SeededRng& rng, ComparisonLedger& ledger);
std::vector<ItemId> mergesort(const ItemArray& items, std::span<const ItemId> input,
                              ComparisonLedger& ledger);
std::vector<ItemId> natural_mergesort(const ItemArray& items, std::span<const ItemId> input,
                                      ComparisonLedger& ledger);
std::vector<ItemId> odd_even_straight_mergesort(const ItemArray& items,
                                                std::span<const ItemId> input,
                                                ComparisonLedger& ledger);
std::vector<ItemId> cook_kim_sort(const ItemArray& items, std::span<const ItemId> input,
                                  ComparisonLedger& ledger);

} // namespace lasort

#endif
