#include <lasort/double_hoover.hpp>
#include <lasort/displacement_sort.hpp>

#include <algorithm>

namespace lasort {

std::optional<std::size_t> boundary_left(std::span<const std::uint32_t> L, std::uint32_t i,
                                         std::size_t delta)
{
    std::size_t seen = 0;
    for (std::size_t s = L.size(); s-- > 0;)
        if (L[s] < i && ++seen == delta)
            return s;
    return std::nullopt;
}

std::optional<std::size_t> boundary_right(std::span<const std::uint32_t> R, std::uint32_t i,
                                          std::size_t delta)
{
    std::size_t seen = 0;
    for (std::size_t s = 0; s < R.size(); ++s)
        if (R[s] > i && ++seen == delta)
            return s;
    return std::nullopt;
}

std::size_t round_strength_ceiling(std::size_t x)
{
    std::size_t p = 1;
    while (p < x)
        p *= 2;
    return p;
}

namespace {

// Binary search for the insertion slot of `item` within seq[lo, hi); the
// answer lies in [lo, hi].
std::size_t insertion_slot(std::span<const std::uint32_t> seq, std::span<const ItemId> items_at,
                           std::size_t lo, std::size_t hi, ItemId item, CleanComparator& cmp)
{
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (cmp.less(item, items_at[seq[mid]]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

class Hoover {
public:
    Hoover(const ItemArray& items, std::vector<ItemId> seq, ComparisonLedger& ledger)
        : seq_(std::move(seq)),
          ledger_(ledger),
          cmp_(items, ledger),
          inserted_(seq_.size(), false),
          l_min_(seq_.size(), kNone),
          r_max_(seq_.size(), kNone),
          explore_(seq_.size(), 0)
    {
    }

    DoubleHooverResult run()
    {
        const std::size_t n = seq_.size();
        DoubleHooverResult out;
        out.audits.resize(n);
        const std::size_t last = round_strength_ceiling(std::max<std::size_t>(n, 1));
        for (std::size_t delta = 1; delta <= last; delta *= 2) {
            for (std::uint32_t i = 0; i < n; ++i)
                if (!inserted_[i])
                    try_left(i, delta, out);
            for (std::uint32_t i = static_cast<std::uint32_t>(n); i-- > 0;)
                if (!inserted_[i])
                    try_right(i, delta, out);
        }
        if (std::find(inserted_.begin(), inserted_.end(), false) != inserted_.end())
            throw Error("double_hoover_sort: an item survived every round");

        out.left_size = L_.size();
        out.right_size = R_.size();
        const auto before = ledger_.clean_total;
        out.order.reserve(n);
        std::size_t a = 0, b = 0;
        while (a < L_.size() && b < R_.size())
            out.order.push_back(cmp_.less(seq_[L_[a]], seq_[R_[b]]) ? seq_[L_[a++]] : seq_[R_[b++]]);
        while (a < L_.size())
            out.order.push_back(seq_[L_[a++]]);
        while (b < R_.size())
            out.order.push_back(seq_[R_[b++]]);
        out.merge_comparisons = ledger_.clean_total - before;
        return out;
    }

private:
    static constexpr std::uint32_t kNone = kSentinel;

    static std::size_t slot_of(const std::vector<std::uint32_t>& side, std::uint32_t index)
    {
        return static_cast<std::size_t>(std::find(side.begin(), side.end(), index) - side.begin());
    }

    void try_left(std::uint32_t i, std::size_t delta, DoubleHooverResult& out)
    {
        const ItemId item = seq_[i];
        ledger_.attribute(item);
        const auto before = ledger_.clean_total;
        const auto slot = boundary_left(L_, i, delta);
        const bool accept = !slot || cmp_.less(seq_[L_[*slot]], item);
        if (!accept) {
            // Running minimum over the rejected boundaries. Both are members
            // of the sorted array L, so their slots already order them.
            if (l_min_[i] == kNone || *slot < slot_of(L_, l_min_[i]))
                l_min_[i] = L_[*slot];
            explore_[i] += ledger_.clean_total - before;
            ledger_.clear_attribution();
            return;
        }
        explore_[i] += ledger_.clean_total - before;

        const std::size_t lo = slot ? *slot + 1 : 0;
        std::size_t hi = L_.size();
        if (l_min_[i] != kNone)
            hi = std::find(L_.begin() + static_cast<std::ptrdiff_t>(lo), L_.end(), l_min_[i]) -
                 L_.begin();

        InsertionAudit& audit = out.audits[item];
        audit.item = item;
        audit.index = i;
        audit.round = delta;
        audit.side = Side::left;
        audit.exploration_comparisons = explore_[i];
        const std::size_t first = slot ? *slot : 0;
        const std::size_t past = l_min_[i] != kNone ? std::min(hi + 1, L_.size()) : L_.size();
        audit.interval_size = past > first ? past - first : 0;
        for (std::size_t s = first; s < past; ++s)
            if (L_[s] >= i)
                audit.interval_within_prefix = false;

        const auto mark = ledger_.clean_total;
        const std::size_t at = insertion_slot(L_, seq_, lo, std::min(hi, L_.size()), item, cmp_);
        audit.insertion_comparisons = ledger_.clean_total - mark;
        audit.landed_inside = at >= lo && at <= hi;
        L_.insert(L_.begin() + static_cast<std::ptrdiff_t>(at), i);
        inserted_[i] = true;
        ledger_.clear_attribution();
    }

    void try_right(std::uint32_t i, std::size_t delta, DoubleHooverResult& out)
    {
        const ItemId item = seq_[i];
        ledger_.attribute(item);
        const auto before = ledger_.clean_total;
        const auto slot = boundary_right(R_, i, delta);
        const bool accept = !slot || cmp_.less(item, seq_[R_[*slot]]);
        if (!accept) {
            if (r_max_[i] == kNone || *slot > slot_of(R_, r_max_[i]))
                r_max_[i] = R_[*slot];
            explore_[i] += ledger_.clean_total - before;
            ledger_.clear_attribution();
            return;
        }
        explore_[i] += ledger_.clean_total - before;

        const std::size_t hi = slot ? *slot : R_.size();
        std::size_t lo = 0;
        std::size_t first = 0;
        if (r_max_[i] != kNone) {
            const auto it = std::find(R_.begin(), R_.begin() + static_cast<std::ptrdiff_t>(hi),
                                      r_max_[i]);
            first = static_cast<std::size_t>(it - R_.begin());
            lo = first + 1;
        }

        InsertionAudit& audit = out.audits[item];
        audit.item = item;
        audit.index = i;
        audit.round = delta;
        audit.side = Side::right;
        audit.exploration_comparisons = explore_[i];
        const std::size_t past = slot ? *slot + 1 : R_.size();
        audit.interval_size = past > first ? past - first : 0;
        for (std::size_t s = first; s < past && s < R_.size(); ++s)
            if (R_[s] <= i)
                audit.interval_within_prefix = false;

        const auto mark = ledger_.clean_total;
        const std::size_t at = insertion_slot(R_, seq_, std::min(lo, hi), hi, item, cmp_);
        audit.insertion_comparisons = ledger_.clean_total - mark;
        audit.landed_inside = at >= lo && at <= hi;
        R_.insert(R_.begin() + static_cast<std::ptrdiff_t>(at), i);
        inserted_[i] = true;
        ledger_.clear_attribution();
    }

    std::vector<ItemId> seq_;
    ComparisonLedger& ledger_;
    CleanComparator cmp_;
    std::vector<std::uint32_t> L_, R_;
    std::vector<bool> inserted_;
    std::vector<std::uint32_t> l_min_, r_max_;
    std::vector<std::uint64_t> explore_;
};

} // namespace

DoubleHooverResult double_hoover_sort(const ItemArray& items, const PositionalPrediction& p_hat,
                                      ComparisonLedger& ledger)
{
    if (p_hat.size() != items.size())
        throw Error("double_hoover_sort: prediction and items differ in size");
    return Hoover(items, bucket_sort_by_prediction(p_hat), ledger).run();
}

std::vector<ItemId> one_sided_insertion_sort(const ItemArray& items,
                                             const PositionalPrediction& p_hat, Side side,
                                             ComparisonLedger& ledger,
                                             const OneSidedOptions& options)
{
    if (p_hat.size() != items.size())
        throw Error("one_sided_insertion_sort: prediction and items differ in size");
    auto seq = bucket_sort_by_prediction(p_hat);
    if (side == Side::right)
        std::reverse(seq.begin(), seq.end());

    CleanComparator cmp(items, ledger);
    std::vector<ItemId> sorted;
    sorted.reserve(items.size());
    for (ItemId item : seq) {
        ledger.attribute(item);
        const auto before = ledger.clean_total;
        const std::size_t m = sorted.size();
        std::size_t lo = 0, hi = m;
        if (side == Side::left) {
            // Gallop leftward from the largest element.
            for (std::size_t off = 1;; off *= 2) {
                if (off > m) {
                    lo = 0;
                    break;
                }
                const std::size_t q = m - off;
                if (cmp.less(sorted[q], item)) {
                    lo = q + 1;
                    break;
                }
                hi = q;
            }
        } else {
            // Gallop rightward from the smallest element.
            for (std::size_t off = 1;; off *= 2) {
                if (off > m) {
                    hi = m;
                    break;
                }
                const std::size_t q = off - 1;
                if (cmp.less(item, sorted[q])) {
                    hi = q;
                    break;
                }
                lo = q + 1;
            }
        }
        while (lo < hi) {
            const std::size_t mid = lo + (hi - lo) / 2;
            if (cmp.less(item, sorted[mid]))
                hi = mid;
            else
                lo = mid + 1;
        }
        sorted.insert(sorted.begin() + static_cast<std::ptrdiff_t>(lo), item);
        ledger.clear_attribution();
        if (options.on_insert)
            options.on_insert(item, ledger.clean_total - before);
    }
    return sorted;
}

} // namespace lasort
