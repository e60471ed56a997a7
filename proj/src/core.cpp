#include <lasort/core.hpp>
#include <lasort/oracle.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lasort {

ItemArray::ItemArray(std::vector<double> keys) : keys_(std::move(keys))
{
    if (keys_.size() >= kSentinel)
        throw Error("ItemArray: too many items");
    for (double k : keys_)
        if (std::isnan(k))
            throw Error("ItemArray: NaN key has no place in a strict order");
}

Permutation::Permutation(std::vector<std::uint32_t> ranks) : ranks_(std::move(ranks))
{
    std::vector<bool> seen(ranks_.size() + 1, false);
    for (auto r : ranks_) {
        if (r < 1 || r > ranks_.size() || seen[r])
            throw Error("Permutation: ranks must be a bijection onto 1..n");
        seen[r] = true;
    }
}

std::vector<ItemId> Permutation::inverse() const
{
    std::vector<ItemId> inv(ranks_.size());
    for (ItemId i = 0; i < ranks_.size(); ++i)
        inv[ranks_[i] - 1] = i;
    return inv;
}

Permutation Permutation::identity(std::size_t n)
{
    std::vector<std::uint32_t> r(n);
    std::iota(r.begin(), r.end(), 1u);
    return Permutation(std::move(r));
}

PositionalPrediction::PositionalPrediction(std::vector<std::uint32_t> predicted)
    : predicted_(std::move(predicted))
{
    for (auto v : predicted_)
        if (v < 1 || v > predicted_.size())
            throw Error("PositionalPrediction: value " + std::to_string(v) + " outside [1, " +
                        std::to_string(predicted_.size()) + "]");
}

PositionalPrediction PositionalPrediction::from(const Permutation& p)
{
    return PositionalPrediction(std::vector<std::uint32_t>(p.ranks().begin(), p.ranks().end()));
}

void ComparisonLedger::track_items(std::size_t n)
{
    per_item_clean.assign(n, 0);
    per_item_dirty.assign(n, 0);
}

void ComparisonLedger::add_clean(std::uint64_t count)
{
    clean_total += count;
    if (current_ != kSentinel && current_ < per_item_clean.size())
        per_item_clean[current_] += count;
    else
        unattributed_clean += count;
}

void ComparisonLedger::add_dirty(std::uint64_t count)
{
    dirty_total += count;
    if (current_ != kSentinel && current_ < per_item_dirty.size())
        per_item_dirty[current_] += count;
    else
        unattributed_dirty += count;
}

bool CleanComparator::less(ItemId a, ItemId b)
{
    ledger_->add_clean();
    return items_->less(a, b);
}

bool CleanComparator::above(ItemId a, ItemId lower)
{
    if (lower == kSentinel)
        return true;
    return less(lower, a);
}

bool CleanComparator::below(ItemId a, ItemId upper)
{
    if (upper == kSentinel)
        return true;
    return less(a, upper);
}

bool counted_compare(ComparisonLedger& ledger, CompareKind kind, ItemId a, ItemId b,
                     const ItemArray& items, DirtyOracle* oracle)
{
    if (a == b)
        throw Error("counted_compare: an item cannot be compared with itself");
    if (kind == CompareKind::clean)
        return CleanComparator(items, ledger).below(a, b);
    if (oracle == nullptr)
        throw Error("counted_compare: dirty comparison needs an oracle");
    if (b == kSentinel)
        throw Error("counted_compare: dirty comparison against a sentinel");
    ledger.add_dirty();
    return oracle->query(a, b);
}

bool verify_sorted(const ItemArray& items, std::span<const ItemId> order)
{
    for (std::size_t k = 1; k < order.size(); ++k)
        if (!items.less(order[k - 1], order[k]))
            return false;
    return true;
}

bool verify_sorted(std::span<const double> keys)
{
    return std::adjacent_find(keys.begin(), keys.end(),
                              [](double a, double b) { return !(a < b); }) == keys.end();
}

bool is_permutation_of(std::size_t n, std::span<const ItemId> order)
{
    if (order.size() != n)
        return false;
    std::vector<bool> seen(n, false);
    for (ItemId i : order) {
        if (i >= n || seen[i])
            return false;
        seen[i] = true;
    }
    return true;
}

Permutation rank_permutation(const ItemArray& items)
{
    std::vector<ItemId> order(items.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](ItemId a, ItemId b) { return items.less(a, b); });
    std::vector<std::uint32_t> ranks(items.size());
    for (std::size_t r = 0; r < order.size(); ++r)
        ranks[order[r]] = static_cast<std::uint32_t>(r + 1);
    return Permutation(std::move(ranks));
}

// ---------------------------------------------------------------------------

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a)
{
    return splitmix64(splitmix64(seed) ^ (a + 0x632be59bd9b4e019ULL));
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b)
{
    return mix_seed(mix_seed(seed, a), b);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c)
{
    return mix_seed(mix_seed(seed, a, b), c);
}

std::uint64_t hash_string(std::string_view s)
{
    // FNV-1a
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

SeededRng::SeededRng(std::uint64_t seed) : seed_(seed)
{
    std::uint64_t x = seed;
    for (auto& s : s_) {
        x += 0x9e3779b97f4a7c15ULL;
        s = splitmix64(x);
    }
}

static inline std::uint64_t rotl(std::uint64_t x, int k)
{
    return (x << k) | (x >> (64 - k));
}

std::uint64_t SeededRng::next()
{
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

__extension__ typedef unsigned __int128 u128;

std::uint64_t SeededRng::uniform(std::uint64_t bound)
{
    if (bound == 0)
        throw Error("SeededRng::uniform: empty range");
    // Lemire's nearly divisionless rejection.
    u128 m = static_cast<u128>(next()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = -bound % bound;
        while (low < threshold) {
            m = static_cast<u128>(next()) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

double SeededRng::uniform01()
{
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

SeededRng SeededRng::split(std::uint64_t tag) const
{
    return SeededRng(mix_seed(seed_, tag));
}

} // namespace lasort
