#include <lasort/dirty_clean_sort.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

namespace lasort {

SearchTree::SearchTree(std::size_t capacity)
    : left_(capacity, kSentinel),
      right_(capacity, kSentinel),
      parent_(capacity, kSentinel),
      size_(capacity, 0),
      present_(capacity, false)
{
}

void SearchTree::attach(ItemId parent, bool left_side, ItemId item)
{
    if (item >= present_.size() || present_[item])
        throw Error("SearchTree::attach: item absent from capacity or already present");
    present_[item] = true;
    size_[item] = 1;
    parent_[item] = parent;
    ++count_;
    if (parent == kSentinel) {
        if (root_ != kSentinel)
            throw Error("SearchTree::attach: tree already has a root");
        root_ = item;
        return;
    }
    ItemId& slot = left_side ? left_[parent] : right_[parent];
    if (slot != kSentinel)
        throw Error("SearchTree::attach: child slot occupied");
    slot = item;
    for (ItemId v = parent; v != kSentinel; v = parent_[v])
        ++size_[v];
}

std::size_t SearchTree::inorder_rank(ItemId v) const
{
    std::size_t rank = subtree_size(left_[v]);
    for (ItemId child = v, up = parent_[v]; up != kSentinel; child = up, up = parent_[up])
        if (right_[up] == child)
            rank += subtree_size(left_[up]) + 1;
    return rank;
}

std::vector<ItemId> SearchTree::inorder() const
{
    std::vector<ItemId> out;
    out.reserve(count_);
    std::vector<ItemId> stack;
    ItemId v = root_;
    while (v != kSentinel || !stack.empty()) {
        while (v != kSentinel) {
            stack.push_back(v);
            v = left_[v];
        }
        v = stack.back();
        stack.pop_back();
        out.push_back(v);
        v = right_[v];
    }
    return out;
}

std::size_t SearchTree::height() const
{
    std::size_t best = 0;
    std::vector<std::pair<ItemId, std::size_t>> stack;
    if (root_ != kSentinel)
        stack.emplace_back(root_, 1);
    while (!stack.empty()) {
        auto [v, d] = stack.back();
        stack.pop_back();
        best = std::max(best, d);
        if (left_[v] != kSentinel)
            stack.emplace_back(left_[v], d + 1);
        if (right_[v] != kSentinel)
            stack.emplace_back(right_[v], d + 1);
    }
    return best;
}

bool majority_dirty(DirtyOracle& oracle, ItemId i, ItemId j, unsigned repetitions,
                    ComparisonLedger& ledger)
{
    if (repetitions == 0 || repetitions % 2 == 0)
        throw Error("majority_dirty: repetitions must be odd");
    unsigned yes = 0;
    for (unsigned r = 0; r < repetitions; ++r)
        yes += oracle.query(i, j) ? 1 : 0;
    ledger.add_dirty(repetitions);
    return 2 * yes > repetitions;
}

namespace {

// Clean validity checks over one recorded dirty-search path.
//
// Bounds are nested: L_t never decreases and R_t never increases with t. So
// once L_t < a is known, it holds for every earlier step, and once it fails
// it fails for every later step (same for R). On top of that, each bound is
// some earlier pivot C_s, and a single clean comparison of a against C_s
// settles both "C_s < a" and "a < C_s".
class Verifier {
public:
    Verifier(const std::vector<SearchStep>& path, const std::vector<std::size_t>& lower_src,
             const std::vector<std::size_t>& upper_src, ItemId item, CleanComparator& clean)
        : path_(path),
          lower_src_(lower_src),
          upper_src_(upper_src),
          item_(item),
          clean_(clean),
          relation_(path.size() + 1, Relation::unknown),
          lower_bad_from_(path.size() + 1),
          upper_bad_from_(path.size() + 1)
    {
    }

    // Step t is 1-based.
    bool valid(std::size_t t)
    {
        ++checks_;
        auto lo = known_lower(t);
        auto hi = known_upper(t);
        if ((lo && !*lo) || (hi && !*hi))
            return false;
        if (!lo && !resolve_lower(t))
            return false;
        if (!hi && !resolve_upper(t))
            return false;
        return true;
    }

    std::uint64_t checks() const { return checks_; }

private:
    enum class Relation : std::uint8_t { unknown, item_less, item_greater };

    std::optional<bool> known_lower(std::size_t t) const
    {
        if (t <= lower_ok_upto_)
            return true;
        if (t >= lower_bad_from_)
            return false;
        const std::size_t s = lower_src_[t];
        if (s == 0)
            return true;
        if (relation_[s] != Relation::unknown)
            return relation_[s] == Relation::item_greater;
        return std::nullopt;
    }

    std::optional<bool> known_upper(std::size_t t) const
    {
        if (t <= upper_ok_upto_)
            return true;
        if (t >= upper_bad_from_)
            return false;
        const std::size_t s = upper_src_[t];
        if (s == 0)
            return true;
        if (relation_[s] != Relation::unknown)
            return relation_[s] == Relation::item_less;
        return std::nullopt;
    }

    void settle(std::size_t s)
    {
        if (relation_[s] == Relation::unknown)
            relation_[s] = clean_.less(item_, path_[s - 1].node) ? Relation::item_less
                                                                 : Relation::item_greater;
    }

    bool resolve_lower(std::size_t t)
    {
        settle(lower_src_[t]);
        const bool ok = relation_[lower_src_[t]] == Relation::item_greater;
        if (ok)
            lower_ok_upto_ = std::max(lower_ok_upto_, t);
        else
            lower_bad_from_ = std::min(lower_bad_from_, t);
        return ok;
    }

    bool resolve_upper(std::size_t t)
    {
        settle(upper_src_[t]);
        const bool ok = relation_[upper_src_[t]] == Relation::item_less;
        if (ok)
            upper_ok_upto_ = std::max(upper_ok_upto_, t);
        else
            upper_bad_from_ = std::min(upper_bad_from_, t);
        return ok;
    }

    const std::vector<SearchStep>& path_;
    const std::vector<std::size_t>& lower_src_;
    const std::vector<std::size_t>& upper_src_;
    ItemId item_;
    CleanComparator& clean_;
    std::vector<Relation> relation_;
    std::size_t lower_ok_upto_ = 0;
    std::size_t upper_ok_upto_ = 0;
    std::size_t lower_bad_from_;
    std::size_t upper_bad_from_;
    std::uint64_t checks_ = 0;
};

std::size_t find_last_valid(Verifier& v, std::size_t T, VerificationStrategy strategy)
{
    if (strategy == VerificationStrategy::linear) {
        std::size_t t = T;
        while (t > 1 && !v.valid(t))
            --t;
        // Step 1 has both bounds at infinity; probing it is free but still a check.
        if (t == 1)
            v.valid(1);
        return t;
    }
    if (v.valid(T))
        return T;
    std::size_t invalid = T;
    std::size_t offset = 1;
    std::size_t t;
    for (;;) {
        t = T > offset ? T - offset : 1;
        if (t <= 1 || v.valid(t))
            break;
        invalid = t;
        offset *= 2;
    }
    std::size_t lo = t, hi = invalid;
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (v.valid(mid))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

bool dirty_step(DirtyOracle& oracle, ItemId item, ItemId pivot, const InsertOptions& options,
                ComparisonLedger& ledger)
{
    if (options.check_asymmetry && oracle.deterministic()) {
        if (oracle.query(item, pivot) == oracle.query(pivot, item))
            throw Error("dirty oracle is not asymmetric on pair (" + std::to_string(item) + ", " +
                        std::to_string(pivot) + ")");
    }
    if (options.repetitions == 1) {
        ledger.add_dirty();
        return oracle.query(item, pivot);
    }
    return majority_dirty(oracle, item, pivot, options.repetitions, ledger);
}

} // namespace

SearchTrace insert_one(SearchTree& tree, const ItemArray& items, ItemId item, DirtyOracle& oracle,
                       ComparisonLedger& ledger, const InsertOptions& options)
{
    if (tree.contains(item))
        throw Error("insert_one: item already in tree");
    if (options.repetitions % 2 == 0)
        throw Error("insert_one: repetitions must be odd");

    ledger.attribute(item);
    const auto clean_before = ledger.clean_total;
    const auto dirty_before = ledger.dirty_total;
    CleanComparator clean(items, ledger);

    SearchTrace trace;
    // Index 0 of the source arrays is unused; 0 as a value means "sentinel".
    std::vector<std::size_t> lower_src{0, 0}, upper_src{0, 0};
    std::vector<bool> went_left{false};

    trace.path.push_back({kSentinel, tree.root(), kSentinel});
    if (options.record_subtree_sizes)
        trace.subtree_sizes.push_back(tree.subtree_size(tree.root()));

    // Dirty search.
    while (trace.path.back().node != kSentinel) {
        const SearchStep cur = trace.path.back();
        const std::size_t t = trace.path.size();
        const bool left = dirty_step(oracle, item, cur.node, options, ledger);
        went_left.push_back(left);
        if (left) {
            trace.path.push_back({cur.lower, tree.left(cur.node), cur.node});
            lower_src.push_back(lower_src[t]);
            upper_src.push_back(t);
        } else {
            trace.path.push_back({cur.node, tree.right(cur.node), cur.upper});
            lower_src.push_back(t);
            upper_src.push_back(upper_src[t]);
        }
        if (options.record_subtree_sizes)
            trace.subtree_sizes.push_back(tree.subtree_size(trace.path.back().node));
    }
    trace.T = trace.path.size();
    trace.dirty = ledger.dirty_total - dirty_before;

    // Verification.
    Verifier verifier(trace.path, lower_src, upper_src, item, clean);
    trace.t_star = find_last_valid(verifier, trace.T, options.strategy);
    trace.validity_checks = verifier.checks();
    trace.verification_clean = ledger.clean_total - clean_before;

    // Clean search from C_t*.
    ItemId cur = trace.path[trace.t_star - 1].node;
    ItemId parent = trace.t_star > 1 ? trace.path[trace.t_star - 2].node : kSentinel;
    bool left_side = trace.t_star > 1 ? went_left[trace.t_star - 1] : false;
    while (cur != kSentinel) {
        parent = cur;
        left_side = clean.less(item, cur);
        cur = left_side ? tree.left(cur) : tree.right(cur);
    }
    tree.attach(parent, left_side, item);

    trace.search_clean = ledger.clean_total - clean_before - trace.verification_clean;
    ledger.clear_attribution();
    return trace;
}

std::vector<ItemId> dirty_clean_sort_in_order(const ItemArray& items, DirtyOracle& oracle,
                                              std::span<const ItemId> order,
                                              ComparisonLedger& ledger,
                                              const DirtyCleanOptions& options)
{
    if (!is_permutation_of(items.size(), order))
        throw Error("dirty_clean_sort: insertion order is not a permutation");
    if (oracle.size() != items.size())
        throw Error("dirty_clean_sort: oracle and items differ in size");
    SearchTree tree(items.size());
    for (ItemId item : order) {
        auto trace = insert_one(tree, items, item, oracle, ledger, options.insert);
        if (options.on_insert)
            options.on_insert(item, trace, tree);
    }
    return tree.inorder();
}

std::vector<ItemId> dirty_clean_sort(const ItemArray& items, DirtyOracle& oracle, SeededRng& rng,
                                     ComparisonLedger& ledger, const DirtyCleanOptions& options)
{
    std::vector<ItemId> order(items.size());
    std::iota(order.begin(), order.end(), 0u);
    rng.shuffle(order);
    return dirty_clean_sort_in_order(items, oracle, order, ledger, options);
}

// ---------------------------------------------------------------------------

HedgeState::HedgeState(std::size_t k, std::size_t horizon)
    : weights(k, 1.0), losses(k, 0.0)
{
    if (k == 0)
        throw Error("HedgeState: need at least one expert");
    const double n = static_cast<double>(std::max<std::size_t>(horizon, 1));
    beta = 1.0 / (1.0 + std::sqrt(2.0 * std::log(static_cast<double>(k)) / n));
}

std::vector<double> HedgeState::probabilities() const
{
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    std::vector<double> p(weights.size());
    for (std::size_t e = 0; e < p.size(); ++e)
        p[e] = weights[e] / total;
    return p;
}

std::size_t HedgeState::sample(SeededRng& rng) const
{
    if (weights.size() == 1)
        return 0;
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    double x = rng.uniform01() * total;
    for (std::size_t e = 0; e + 1 < weights.size(); ++e) {
        if (x < weights[e])
            return e;
        x -= weights[e];
    }
    return weights.size() - 1;
}

void HedgeState::update(std::span<const double> step_losses)
{
    if (step_losses.size() != weights.size())
        throw Error("HedgeState::update: loss vector size mismatch");
    double top = 0.0;
    for (std::size_t e = 0; e < weights.size(); ++e) {
        losses[e] += step_losses[e];
        weights[e] *= std::pow(beta, step_losses[e]);
        top = std::max(top, weights[e]);
    }
    // Rescale so weights never underflow; probabilities are unchanged.
    for (auto& w : weights)
        w /= top;
}

MultiPredictorResult multi_predictor_sort(const ItemArray& items,
                                          std::span<DirtyOracle* const> oracles, SeededRng& rng,
                                          ComparisonLedger& ledger,
                                          const DirtyCleanOptions& options)
{
    const std::size_t n = items.size();
    const std::size_t k = oracles.size();
    if (k == 0)
        throw Error("multi_predictor_sort: need at least one predictor");
    for (auto* o : oracles)
        if (o == nullptr || o->size() != n)
            throw Error("multi_predictor_sort: predictor missing or sized wrongly");

    MultiPredictorResult result;
    result.hedge = HedgeState(k, n);
    if (n < 2) {
        result.order.resize(n);
        std::iota(result.order.begin(), result.order.end(), 0u);
        return result;
    }

    std::vector<ItemId> order(n);
    std::iota(order.begin(), order.end(), 0u);
    rng.shuffle(order);
    SeededRng expert_rng = rng.split(0x48656467650001ULL);

    const double log_n = std::log2(static_cast<double>(n));
    SearchTree tree(n);
    std::vector<ItemId> sorted_so_far;
    sorted_so_far.reserve(n);
    std::vector<double> step_losses(k);

    for (ItemId item : order) {
        const std::size_t chosen = result.hedge.sample(expert_rng);
        result.choices.push_back(chosen);
        auto trace = insert_one(tree, items, item, *oracles[chosen], ledger, options.insert);
        if (options.on_insert)
            options.on_insert(item, trace, tree);

        // The item's true position among the tree items is now known from
        // the tree shape, so wrong dirty answers can be counted without any
        // clean comparison.
        const std::size_t pos = tree.inorder_rank(item);
        sorted_so_far.insert(sorted_so_far.begin() + static_cast<std::ptrdiff_t>(pos), item);
        for (std::size_t e = 0; e < k; ++e) {
            std::uint64_t wrong = 0;
            for (std::size_t q = 0; q < sorted_so_far.size(); ++q) {
                if (q == pos)
                    continue;
                const bool item_first = q > pos;
                if (oracles[e]->query(item, sorted_so_far[q]) != item_first)
                    ++wrong;
            }
            ledger.bookkeeping_dirty += sorted_so_far.size() - 1;
            step_losses[e] = std::log2(1.0 + static_cast<double>(wrong)) / log_n;
        }
        result.hedge.update(step_losses);
    }
    result.order = tree.inorder();
    return result;
}

} // namespace lasort
