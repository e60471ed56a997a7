#include <lasort/finger_tree.hpp>

#include <algorithm>
#include <cmath>

namespace lasort {

FingerTree::FingerTree(const ItemArray& items, double alpha)
    : items_(&items), alpha_(alpha), node_of_(items.size(), nil)
{
    if (!(alpha > 0.5 && alpha < 1.0))
        throw Error("FingerTree: balance parameter must lie in (1/2, 1)");
    nodes_.reserve(items.size());
}

bool FingerTree::contains(ItemId item) const
{
    return item < node_of_.size() && node_of_[item] != nil;
}

bool FingerTree::heavy(NodeId child, NodeId parent) const
{
    // Slack absorbs rounding when alpha is a fraction like 2/3 that a
    // perfectly balanced subtree meets with equality.
    const double lhs = static_cast<double>(sz(child)) + 1.0;
    const double rhs = alpha_ * (static_cast<double>(sz(parent)) + 1.0);
    return lhs > rhs + 1e-9;
}

FingerTree::NodeId FingerTree::descend(NodeId from, ItemId item, CleanComparator& cmp,
                                       bool& left_side)
{
    NodeId parent = nil;
    for (NodeId v = from; v != nil;) {
        parent = v;
        left_side = cmp.less(item, nodes_[v].item);
        v = left_side ? nodes_[v].left : nodes_[v].right;
    }
    return parent;
}

// item > anchor and item belongs somewhere in anchor's right subtree.
FingerTree::NodeId FingerTree::search_right_of(NodeId anchor, ItemId item, CleanComparator& cmp,
                                               bool& left_side)
{
    const NodeId top = nodes_[anchor].right;
    if (top == nil) {
        left_side = false;
        return anchor;
    }
    std::vector<NodeId> spine{top};
    while (nodes_[spine.back()].left != nil)
        spine.push_back(nodes_[spine.back()].left);

    // Climb from the subtree minimum: the first spine node above the item
    // pins it into the right subtree of the spine node just below.
    for (std::size_t j = spine.size(); j-- > 0;) {
        if (!cmp.less(item, nodes_[spine[j]].item))
            continue;
        if (j + 1 == spine.size()) {
            left_side = true;
            return spine[j];
        }
        const NodeId below = spine[j + 1];
        if (nodes_[below].right == nil) {
            left_side = false;
            return below;
        }
        return descend(nodes_[below].right, item, cmp, left_side);
    }
    if (nodes_[top].right == nil) {
        left_side = false;
        return top;
    }
    return descend(nodes_[top].right, item, cmp, left_side);
}

// item < anchor and item belongs somewhere in anchor's left subtree.
FingerTree::NodeId FingerTree::search_left_of(NodeId anchor, ItemId item, CleanComparator& cmp,
                                              bool& left_side)
{
    const NodeId top = nodes_[anchor].left;
    if (top == nil) {
        left_side = true;
        return anchor;
    }
    std::vector<NodeId> spine{top};
    while (nodes_[spine.back()].right != nil)
        spine.push_back(nodes_[spine.back()].right);

    for (std::size_t j = spine.size(); j-- > 0;) {
        if (!cmp.less(nodes_[spine[j]].item, item))
            continue;
        if (j + 1 == spine.size()) {
            left_side = false;
            return spine[j];
        }
        const NodeId above = spine[j + 1];
        if (nodes_[above].left == nil) {
            left_side = true;
            return above;
        }
        return descend(nodes_[above].left, item, cmp, left_side);
    }
    if (nodes_[top].left == nil) {
        left_side = true;
        return top;
    }
    return descend(nodes_[top].left, item, cmp, left_side);
}

void FingerTree::insert(ItemId item, ComparisonLedger& ledger)
{
    if (item >= node_of_.size())
        throw Error("FingerTree::insert: item index out of range");
    if (contains(item))
        throw Error("FingerTree::insert: duplicate key");

    const auto id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back(Node{item});
    node_of_[item] = id;
    if (root_ == nil) {
        root_ = finger_ = id;
        return;
    }

    CleanComparator cmp(*items_, ledger);
    const NodeId u = finger_;
    NodeId parent;
    bool left_side = false;

    if (cmp.less(nodes_[u].item, item)) {
        // Climb. Ancestors entered from the right are smaller than the finger
        // and need no comparison; ancestors entered from the left bound the
        // current subtree from above.
        NodeId v = u, largest_below = u;
        while (nodes_[v].parent != nil) {
            const NodeId p = nodes_[v].parent;
            if (nodes_[p].right == v) {
                v = p;
                continue;
            }
            if (cmp.less(item, nodes_[p].item))
                break;
            largest_below = p;
            v = p;
        }
        parent = search_right_of(largest_below, item, cmp, left_side);
    } else {
        NodeId v = u, smallest_above = u;
        while (nodes_[v].parent != nil) {
            const NodeId p = nodes_[v].parent;
            if (nodes_[p].left == v) {
                v = p;
                continue;
            }
            if (cmp.less(nodes_[p].item, item))
                break;
            smallest_above = p;
            v = p;
        }
        parent = search_left_of(smallest_above, item, cmp, left_side);
    }

    nodes_[id].parent = parent;
    (left_side ? nodes_[parent].left : nodes_[parent].right) = id;
    for (NodeId v = parent; v != nil; v = nodes_[v].parent)
        ++nodes_[v].size;
    finger_ = id;
    rebalance_from(id);
}

void FingerTree::rebalance_from(NodeId leaf)
{
    NodeId worst = nil;
    for (NodeId v = nodes_[leaf].parent; v != nil; v = nodes_[v].parent)
        if (heavy(nodes_[v].left, v) || heavy(nodes_[v].right, v))
            worst = v;
    if (worst == nil)
        return;

    std::vector<NodeId> seq;
    seq.reserve(nodes_[worst].size);
    std::vector<NodeId> stack;
    for (NodeId v = worst; v != nil || !stack.empty();) {
        while (v != nil) {
            stack.push_back(v);
            v = nodes_[v].left;
        }
        v = stack.back();
        stack.pop_back();
        seq.push_back(v);
        v = nodes_[v].right;
    }

    const NodeId up = nodes_[worst].parent;
    const bool was_left = up != nil && nodes_[up].left == worst;
    const NodeId fresh = build(seq, 0, seq.size(), up);
    if (up == nil)
        root_ = fresh;
    else
        (was_left ? nodes_[up].left : nodes_[up].right) = fresh;
    ++rebuilds_;
}

FingerTree::NodeId FingerTree::build(std::vector<NodeId>& seq, std::size_t lo, std::size_t hi,
                                     NodeId parent)
{
    if (lo >= hi)
        return nil;
    const std::size_t mid = lo + (hi - lo) / 2;
    const NodeId v = seq[mid];
    nodes_[v].parent = parent;
    nodes_[v].left = build(seq, lo, mid, v);
    nodes_[v].right = build(seq, mid + 1, hi, v);
    nodes_[v].size = static_cast<std::uint32_t>(hi - lo);
    return v;
}

std::vector<ItemId> FingerTree::inorder() const
{
    std::vector<ItemId> out;
    out.reserve(nodes_.size());
    std::vector<NodeId> stack;
    for (NodeId v = root_; v != nil || !stack.empty();) {
        while (v != nil) {
            stack.push_back(v);
            v = nodes_[v].left;
        }
        v = stack.back();
        stack.pop_back();
        out.push_back(nodes_[v].item);
        v = nodes_[v].right;
    }
    return out;
}

std::size_t FingerTree::rank_of(ItemId item) const
{
    if (!contains(item))
        throw Error("FingerTree::rank_of: item not present");
    const NodeId v = node_of_[item];
    std::size_t rank = sz(nodes_[v].left);
    for (NodeId child = v, up = nodes_[v].parent; up != nil; child = up, up = nodes_[up].parent)
        if (nodes_[up].right == child)
            rank += sz(nodes_[up].left) + 1;
    return rank;
}

std::size_t FingerTree::height() const
{
    std::size_t best = 0;
    std::vector<std::pair<NodeId, std::size_t>> stack;
    if (root_ != nil)
        stack.emplace_back(root_, 1);
    while (!stack.empty()) {
        auto [v, d] = stack.back();
        stack.pop_back();
        best = std::max(best, d);
        if (nodes_[v].left != nil)
            stack.emplace_back(nodes_[v].left, d + 1);
        if (nodes_[v].right != nil)
            stack.emplace_back(nodes_[v].right, d + 1);
    }
    return best;
}

std::size_t FingerTree::height_bound(std::size_t n, double alpha)
{
    // A nil child at depth h weighs 1 <= alpha^h (n + 1).
    std::size_t h = 0;
    double w = static_cast<double>(n) + 1.0;
    while (w * alpha >= 1.0 - 1e-9) {
        w *= alpha;
        ++h;
    }
    return h;
}

bool FingerTree::check_invariants() const
{
    if (root_ != nil && nodes_[root_].parent != nil)
        return false;
    std::size_t reached = 0;
    std::vector<NodeId> stack;
    if (root_ != nil)
        stack.push_back(root_);
    while (!stack.empty()) {
        const NodeId v = stack.back();
        stack.pop_back();
        ++reached;
        const Node& node = nodes_[v];
        if (node.size != sz(node.left) + sz(node.right) + 1)
            return false;
        if (heavy(node.left, v) || heavy(node.right, v))
            return false;
        for (NodeId c : {node.left, node.right}) {
            if (c == nil)
                continue;
            if (nodes_[c].parent != v)
                return false;
            stack.push_back(c);
        }
    }
    if (reached != nodes_.size())
        return false;
    const auto order = inorder();
    return verify_sorted(*items_, order);
}

} // namespace lasort
