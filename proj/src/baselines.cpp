#include <lasort/baselines.hpp>

#include <algorithm>
#include <array>
#include <numeric>

namespace lasort {

namespace {

constexpr std::array kAllBaselines{BaselineKind::quicksort, BaselineKind::mergesort,
                                   BaselineKind::natural_merge, BaselineKind::odd_even_straight,
                                   BaselineKind::cook_kim};

// Merges two sorted runs; stops comparing once either side is exhausted.
void merge_into(std::span<const ItemId> a, std::span<const ItemId> b, std::vector<ItemId>& out,
                CleanComparator& cmp)
{
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size())
        out.push_back(cmp.less(b[j], a[i]) ? b[j++] : a[i++]);
    out.insert(out.end(), a.begin() + static_cast<std::ptrdiff_t>(i), a.end());
    out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(j), b.end());
}

void mergesort_rec(std::vector<ItemId>& v, std::size_t lo, std::size_t hi,
                   std::vector<ItemId>& scratch, CleanComparator& cmp)
{
    if (hi - lo < 2)
        return;
    const std::size_t mid = lo + (hi - lo) / 2;
    mergesort_rec(v, lo, mid, scratch, cmp);
    mergesort_rec(v, mid, hi, scratch, cmp);
    scratch.clear();
    merge_into(std::span(v).subspan(lo, mid - lo), std::span(v).subspan(mid, hi - mid), scratch,
               cmp);
    std::copy(scratch.begin(), scratch.end(), v.begin() + static_cast<std::ptrdiff_t>(lo));
}

// Bottom-up merging of consecutive runs given by their boundaries.
std::vector<ItemId> merge_runs(std::vector<ItemId> v, std::vector<std::size_t> bounds,
                               CleanComparator& cmp, bool check_adjacent)
{
    std::vector<ItemId> next;
    while (bounds.size() > 2) {
        next.clear();
        next.reserve(v.size());
        std::vector<std::size_t> merged{0};
        for (std::size_t r = 0; r + 1 < bounds.size(); r += 2) {
            const auto a = std::span(v).subspan(bounds[r], bounds[r + 1] - bounds[r]);
            if (r + 2 >= bounds.size()) {
                next.insert(next.end(), a.begin(), a.end());
            } else {
                const auto b = std::span(v).subspan(bounds[r + 1], bounds[r + 2] - bounds[r + 1]);
                if (check_adjacent && cmp.less(a.back(), b.front())) {
                    next.insert(next.end(), a.begin(), a.end());
                    next.insert(next.end(), b.begin(), b.end());
                } else {
                    merge_into(a, b, next, cmp);
                }
            }
            merged.push_back(next.size());
        }
        v.swap(next);
        bounds.swap(merged);
    }
    return v;
}

constexpr std::size_t kCookKimSmall = 16;

std::vector<ItemId> cook_kim_impl(std::vector<ItemId> input, CleanComparator& cmp)
{
    std::vector<ItemId> core, removed;
    core.reserve(input.size());
    for (ItemId x : input) {
        if (!core.empty() && cmp.less(x, core.back())) {
            removed.push_back(core.back());
            removed.push_back(x);
            core.pop_back();
        } else {
            core.push_back(x);
        }
    }
    if (removed.empty())
        return core;
    // Recurse only while the removed part shrinks substantially; otherwise
    // (and for small buffers) mergesort it.
    if (removed.size() < kCookKimSmall || 2 * removed.size() > input.size()) {
        std::vector<ItemId> scratch;
        mergesort_rec(removed, 0, removed.size(), scratch, cmp);
    } else {
        removed = cook_kim_impl(std::move(removed), cmp);
    }
    std::vector<ItemId> out;
    out.reserve(input.size());
    merge_into(core, removed, out, cmp);
    return out;
}

} // namespace

std::string_view to_string(BaselineKind kind)
{
    switch (kind) {
    case BaselineKind::quicksort: return "quicksort";
    case BaselineKind::mergesort: return "mergesort";
    case BaselineKind::natural_merge: return "natural_merge";
    case BaselineKind::odd_even_straight: return "odd_even_straight";
    case BaselineKind::cook_kim: return "cook_kim";
    }
    return "?";
}

BaselineKind parse_baseline(std::string_view tag)
{
    for (auto k : kAllBaselines)
        if (to_string(k) == tag)
            return k;
    throw Error("unknown baseline '" + std::string(tag) + "'");
}

std::span<const BaselineKind> all_baselines()
{
    return kAllBaselines;
}

std::vector<ItemId> quicksort(const ItemArray& items, std::span<const ItemId> input,
                              SeededRng& rng, ComparisonLedger& ledger)
{
    CleanComparator cmp(items, ledger);
    std::vector<ItemId> v(input.begin(), input.end());
    std::vector<ItemId> smaller, larger;
    std::vector<std::pair<std::size_t, std::size_t>> todo{{0, v.size()}};
    while (!todo.empty()) {
        auto [lo, hi] = todo.back();
        todo.pop_back();
        if (hi - lo < 2)
            continue;
        const std::size_t p = lo + rng.uniform(hi - lo);
        const ItemId pivot = v[p];
        smaller.clear();
        larger.clear();
        for (std::size_t k = lo; k < hi; ++k) {
            if (k == p)
                continue;
            (cmp.less(v[k], pivot) ? smaller : larger).push_back(v[k]);
        }
        auto it = v.begin() + static_cast<std::ptrdiff_t>(lo);
        it = std::copy(smaller.begin(), smaller.end(), it);
        *it++ = pivot;
        std::copy(larger.begin(), larger.end(), it);
        const std::size_t mid = lo + smaller.size();
        todo.emplace_back(mid + 1, hi);
        todo.emplace_back(lo, mid);
    }
    return v;
}

std::vector<ItemId> mergesort(const ItemArray& items, std::span<const ItemId> input,
                              ComparisonLedger& ledger)
{
    CleanComparator cmp(items, ledger);
    std::vector<ItemId> v(input.begin(), input.end()), scratch;
    mergesort_rec(v, 0, v.size(), scratch, cmp);
    return v;
}

std::vector<ItemId> natural_mergesort(const ItemArray& items, std::span<const ItemId> input,
                                      ComparisonLedger& ledger)
{
    CleanComparator cmp(items, ledger);
    std::vector<ItemId> v(input.begin(), input.end());
    std::vector<std::size_t> bounds{0};
    for (std::size_t k = 1; k < v.size(); ++k)
        if (!cmp.less(v[k - 1], v[k]))
            bounds.push_back(k);
    bounds.push_back(v.size());
    if (v.empty())
        return v;
    return merge_runs(std::move(v), std::move(bounds), cmp, false);
}

std::vector<ItemId> odd_even_straight_mergesort(const ItemArray& items,
                                                std::span<const ItemId> input,
                                                ComparisonLedger& ledger)
{
    CleanComparator cmp(items, ledger);
    std::vector<ItemId> v(input.begin(), input.end());
    if (v.size() < 2)
        return v;
    // Odd-even pass: order each (odd, even) position pair.
    std::vector<std::size_t> bounds;
    for (std::size_t k = 0; k < v.size(); k += 2) {
        bounds.push_back(k);
        if (k + 1 < v.size() && cmp.less(v[k + 1], v[k]))
            std::swap(v[k], v[k + 1]);
    }
    bounds.push_back(v.size());
    // Straight (bottom-up) merging; runs already in order are concatenated
    // after a single comparison.
    return merge_runs(std::move(v), std::move(bounds), cmp, true);
}

std::vector<ItemId> cook_kim_sort(const ItemArray& items, std::span<const ItemId> input,
                                  ComparisonLedger& ledger)
{
    CleanComparator cmp(items, ledger);
    return cook_kim_impl(std::vector<ItemId>(input.begin(), input.end()), cmp);
}

std::vector<ItemId> run_baseline(BaselineKind kind, const ItemArray& items,
                                 std::span<const ItemId> input, SeededRng& rng,
                                 ComparisonLedger& ledger)
{
    if (!is_permutation_of(items.size(), input))
        throw Error("run_baseline: input is not a permutation of the items");
    switch (kind) {
    case BaselineKind::quicksort: return quicksort(items, input, rng, ledger);
    case BaselineKind::mergesort: return mergesort(items, input, ledger);
    case BaselineKind::natural_merge: return natural_mergesort(items, input, ledger);
    case BaselineKind::odd_even_straight: return odd_even_straight_mergesort(items, input, ledger);
    case BaselineKind::cook_kim: return cook_kim_sort(items, input, ledger);
    }
    throw Error("run_baseline: unknown baseline");
}

std::vector<ItemId> run_baseline(BaselineKind kind, const ItemArray& items, SeededRng& rng,
                                 ComparisonLedger& ledger)
{
    std::vector<ItemId> input(items.size());
    std::iota(input.begin(), input.end(), 0u);
    return run_baseline(kind, items, input, rng, ledger);
}

} // namespace lasort
