#ifndef LASORT_FINGER_TREE_HPP
#define LASORT_FINGER_TREE_HPP

#include <lasort/core.hpp>

#include <vector>

namespace lasort {

/// Weight-balanced search tree with parent links and a finger on the most
/// recently inserted node.
///
/// Balance: with weight(v) = size(v) + 1, every child weighs at most
/// alpha * weight(parent). After an insertion the highest node on the path
/// that breaks this is rebuilt into a perfectly balanced subtree. Rebuilding
/// reads the inorder sequence and costs no key comparisons.
///
/// Insertion searches outward from the finger. Going right (the mirror case
/// is symmetric): climb from the finger, comparing only against ancestors
/// entered from their left child, until one exceeds the key; the key then
/// belongs to the right subtree of the largest node passed. Inside that
/// subtree the search climbs its left spine from the bottom before
/// descending, so every comparison is against a node whose neighbourhood
/// lies between the finger and the key. This keeps the comparison count
/// O(log d) where d is the number of nodes between the finger and the key.
class FingerTree {
public:
    using NodeId = std::uint32_t;
    static constexpr NodeId nil = kSentinel;

    explicit FingerTree(const ItemArray& items, double alpha = 2.0 / 3.0);

    /// Inserts `item`, charging comparisons to `ledger`, and moves the finger.
    void insert(ItemId item, ComparisonLedger& ledger);

    std::size_t size() const { return nodes_.size(); }
    bool empty() const { return nodes_.empty(); }
    /// Item under the finger, kSentinel when empty.
    ItemId finger() const { return finger_ == nil ? kSentinel : nodes_[finger_].item; }
    bool contains(ItemId item) const;

    std::vector<ItemId> inorder() const;
    /// 0-based position of a present item in sorted order.
    std::size_t rank_of(ItemId item) const;
    std::size_t height() const;
    std::size_t rebuilds() const { return rebuilds_; }
    double alpha() const { return alpha_; }

    /// floor(log_{1/alpha}(n + 1)), the height any tree of n nodes respects.
    static std::size_t height_bound(std::size_t n, double alpha = 2.0 / 3.0);

    /// Full structural audit: parent links, sizes, order and weight balance.
    bool check_invariants() const;

private:
    struct Node {
        ItemId item;
        NodeId left = nil;
        NodeId right = nil;
        NodeId parent = nil;
        std::uint32_t size = 1;
    };

    std::uint32_t sz(NodeId v) const { return v == nil ? 0 : nodes_[v].size; }
    bool heavy(NodeId child, NodeId parent) const;
    NodeId descend(NodeId from, ItemId item, CleanComparator& cmp, bool& left_side);
    NodeId search_right_of(NodeId anchor, ItemId item, CleanComparator& cmp, bool& left_side);
    NodeId search_left_of(NodeId anchor, ItemId item, CleanComparator& cmp, bool& left_side);
    void rebalance_from(NodeId leaf);
    NodeId build(std::vector<NodeId>& seq, std::size_t lo, std::size_t hi, NodeId parent);

    const ItemArray* items_;
    double alpha_;
    std::vector<Node> nodes_;
    std::vector<NodeId> node_of_;
    NodeId root_ = nil;
    NodeId finger_ = nil;
    std::size_t rebuilds_ = 0;
};

} // namespace lasort

#endif
