// Sorting with dirty and clean comparisons.
//
// Items are inserted in uniformly random order into an unbalanced binary
// search tree. Each insertion runs three phases:
//
//   1. dirty search: descend from the root using only the dirty oracle until
//      a nil child is reached, recording the bounds (L_t, C_t, R_t) at every
//      step t = 1..T;
//   2. verification: find the last step t* with L_t* < a < R_t* using clean
//      comparisons, scanning back linearly or by galloping;
//   3. clean search: descend from C_t* with clean comparisons and attach.
//
// The tree is a BST for the true order after every insertion, so the output
// is its inorder traversal. Comparisons against the +-inf bounds are free.

#ifndef LASORT_DIRTY_CLEAN_SORT_HPP
#define LASORT_DIRTY_CLEAN_SORT_HPP

#include <lasort/core.hpp>
#include <lasort/oracle.hpp>

#include <functional>
#include <span>
#include <vector>

namespace lasort {

enum class VerificationStrategy { linear, galloping };

/// Tree over item indices; node ids are item ids, kSentinel is nil.
class SearchTree {
public:
    explicit SearchTree(std::size_t capacity);

    ItemId root() const { return root_; }
    ItemId left(ItemId v) const { return left_[v]; }
    ItemId right(ItemId v) const { return right_[v]; }
    ItemId parent(ItemId v) const { return parent_[v]; }
    std::uint32_t subtree_size(ItemId v) const { return v == kSentinel ? 0 : size_[v]; }
    std::size_t size() const { return count_; }
    bool contains(ItemId v) const { return v < present_.size() && present_[v]; }

    /// Attach `item` as the `left_side` child of `parent`, or as the root when
    /// parent is kSentinel. Updates subtree sizes up to the root.
    void attach(ItemId parent, bool left_side, ItemId item);

    /// 0-based inorder position of a present item, from subtree sizes.
    std::size_t inorder_rank(ItemId v) const;
    std::vector<ItemId> inorder() const;
    std::size_t height() const;

private:
    ItemId root_ = kSentinel;
    std::size_t count_ = 0;
    std::vector<ItemId> left_, right_, parent_;
    std::vector<std::uint32_t> size_;
    std::vector<bool> present_;
};

struct SearchStep {
    ItemId lower = kSentinel; ///< L_t, kSentinel = -inf
    ItemId node = kSentinel;  ///< C_t, kSentinel = nil
    ItemId upper = kSentinel; ///< R_t, kSentinel = +inf
};

struct SearchTrace {
    std::vector<SearchStep> path; ///< path[t - 1] is step t
    std::size_t T = 0;
    std::size_t t_star = 0;
    std::uint64_t verification_clean = 0;
    std::uint64_t search_clean = 0;
    std::uint64_t dirty = 0;
    std::uint64_t validity_checks = 0;
    /// s_t, the active subtree size per step; filled on request.
    std::vector<std::uint32_t> subtree_sizes;

    std::uint64_t clean() const { return verification_clean + search_clean; }
};

struct InsertOptions {
    VerificationStrategy strategy = VerificationStrategy::galloping;
    /// Odd number of oracle draws per dirty comparison (majority vote).
    unsigned repetitions = 1;
    /// Query both directions of every dirty comparison (uncounted) and throw
    /// on a deterministic oracle that answers both the same way.
    bool check_asymmetry = false;
    bool record_subtree_sizes = false;
};

/// Majority of `repetitions` independent draws of oracle.query(i, j).
/// Charges `repetitions` dirty comparisons. repetitions must be odd.
bool majority_dirty(DirtyOracle& oracle, ItemId i, ItemId j, unsigned repetitions,
                    ComparisonLedger& ledger);

/// One loop body: dirty search, verification, clean search, attach.
SearchTrace insert_one(SearchTree& tree, const ItemArray& items, ItemId item, DirtyOracle& oracle,
                       ComparisonLedger& ledger, const InsertOptions& options = {});

using InsertObserver = std::function<void(ItemId, const SearchTrace&, const SearchTree&)>;

struct DirtyCleanOptions {
    InsertOptions insert;
    InsertObserver on_insert;
};

/// Sorts with a uniformly random insertion order drawn from `rng`.
std::vector<ItemId> dirty_clean_sort(const ItemArray& items, DirtyOracle& oracle, SeededRng& rng,
                                     ComparisonLedger& ledger, const DirtyCleanOptions& options = {});

/// Same, with the insertion order given explicitly.
std::vector<ItemId> dirty_clean_sort_in_order(const ItemArray& items, DirtyOracle& oracle,
                                              std::span<const ItemId> order,
                                              ComparisonLedger& ledger,
                                              const DirtyCleanOptions& options = {});

/// Multiplicative-weights state over k predictors.
struct HedgeState {
    std::vector<double> weights;
    std::vector<double> losses;
    double beta = 1.0;

    HedgeState(std::size_t k, std::size_t horizon);
    std::size_t sample(SeededRng& rng) const;
    std::vector<double> probabilities() const;
    void update(std::span<const double> step_losses);
};

struct MultiPredictorResult {
    std::vector<ItemId> order;
    HedgeState hedge{1, 1};
    /// Predictor used for each insertion, in insertion order.
    std::vector<std::size_t> choices;
};

/// Hedge over k dirty predictors. Each insertion samples one predictor for
/// its dirty search; once the item is placed, every predictor's number of
/// wrong answers against the items already in the tree is measured with
/// dirty queries (charged to ledger.bookkeeping_dirty) and fed back as loss
/// log2(1 + wrong) / log2(n).
MultiPredictorResult multi_predictor_sort(const ItemArray& items,
                                          std::span<DirtyOracle* const> oracles, SeededRng& rng,
                                          ComparisonLedger& ledger,
                                          const DirtyCleanOptions& options = {});

} // namespace lasort

#endif
