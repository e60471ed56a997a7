// Shared vocabulary for the learning-augmented sorters: items, rank maps,
// predictions, the comparison ledger and the seeded random stream.
//
// Item indices are 0-based everywhere in the C++ API. Ranks and predicted
// positions are 1-based (values in 1..n), matching how positions are usually
// written down.

#ifndef LASORT_CORE_HPP
#define LASORT_CORE_HPP

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lasort {

using ItemId = std::uint32_t;

/// Stands in for a missing bound: -inf on the low side, +inf on the high side.
inline constexpr ItemId kSentinel = std::numeric_limits<ItemId>::max();

/// Thrown for every contract violation in the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Items with a strict total order. Raw keys may repeat; the order actually
/// used is (key, index) lexicographic, so two items never compare equal.
class ItemArray {
public:
    ItemArray() = default;
    explicit ItemArray(std::vector<double> keys);

    std::size_t size() const { return keys_.size(); }
    bool empty() const { return keys_.empty(); }
    double key(ItemId i) const { return keys_[i]; }
    std::span<const double> keys() const { return keys_; }

    /// Normalized strict order. Not counted; comparators wrap this.
    bool less(ItemId a, ItemId b) const
    {
        return keys_[a] < keys_[b] || (keys_[a] == keys_[b] && a < b);
    }

private:
    std::vector<double> keys_;
};

/// The true-rank map p: item i sits at position ranks[i] (1-based) of the
/// sorted output.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<std::uint32_t> ranks);

    std::size_t size() const { return ranks_.size(); }
    std::uint32_t operator[](ItemId i) const { return ranks_[i]; }
    std::span<const std::uint32_t> ranks() const { return ranks_; }

    /// p^{-1}: items listed in sorted order.
    std::vector<ItemId> inverse() const;

    static Permutation identity(std::size_t n);

private:
    std::vector<std::uint32_t> ranks_;
};

/// A per-item guess of the rank, values in 1..n. Need not be a bijection.
class PositionalPrediction {
public:
    PositionalPrediction() = default;
    explicit PositionalPrediction(std::vector<std::uint32_t> predicted);

    std::size_t size() const { return predicted_.size(); }
    std::uint32_t operator[](ItemId i) const { return predicted_[i]; }
    std::span<const std::uint32_t> values() const { return predicted_; }

    static PositionalPrediction from(const Permutation& p);

private:
    std::vector<std::uint32_t> predicted_;
};

/// Exact comparison counters. Per-item counters are optional; when enabled,
/// every comparison is charged to the item whose insertion is in progress, or
/// to the unattributed bucket when no item is.
struct ComparisonLedger {
    std::uint64_t clean_total = 0;
    std::uint64_t dirty_total = 0;
    /// Dirty queries spent only on bookkeeping (expert losses), never on search.
    std::uint64_t bookkeeping_dirty = 0;
    std::uint64_t unattributed_clean = 0;
    std::uint64_t unattributed_dirty = 0;
    std::vector<std::uint64_t> per_item_clean;
    std::vector<std::uint64_t> per_item_dirty;

    void track_items(std::size_t n);
    void attribute(ItemId item) { current_ = item; }
    void clear_attribution() { current_ = kSentinel; }

    void add_clean(std::uint64_t count = 1);
    void add_dirty(std::uint64_t count = 1);

    friend bool operator==(const ComparisonLedger&, const ComparisonLedger&) = default;

private:
    ItemId current_ = kSentinel;
};

enum class CompareKind { clean, dirty };

class DirtyOracle;

/// Counted clean comparisons over an ItemArray. Comparisons against a
/// sentinel bound are free.
class CleanComparator {
public:
    CleanComparator(const ItemArray& items, ComparisonLedger& ledger)
        : items_(&items), ledger_(&ledger) {}

    bool less(ItemId a, ItemId b);

    /// lower < a, with kSentinel meaning -inf (free).
    bool above(ItemId a, ItemId lower);
    /// a < upper, with kSentinel meaning +inf (free).
    bool below(ItemId a, ItemId upper);

    const ItemArray& items() const { return *items_; }
    ComparisonLedger& ledger() { return *ledger_; }

private:
    const ItemArray* items_;
    ComparisonLedger* ledger_;
};

/// One counted comparison of either kind. Returns true iff a is (dirtily)
/// less than b. `b` may be kSentinel for a clean comparison against +inf,
/// which is free.
bool counted_compare(ComparisonLedger& ledger, CompareKind kind, ItemId a, ItemId b,
                     const ItemArray& items, DirtyOracle* oracle = nullptr);

/// True iff `order` lists items in strictly increasing normalized order.
bool verify_sorted(const ItemArray& items, std::span<const ItemId> order);
/// True iff raw keys strictly increase.
bool verify_sorted(std::span<const double> keys);
/// True iff `order` contains each of 0..n-1 exactly once.
bool is_permutation_of(std::size_t n, std::span<const ItemId> order);

Permutation rank_permutation(const ItemArray& items);

/// Deterministic, splittable stream: xoshiro256** seeded through splitmix64.
/// All derived quantities (bounded ints, doubles, shuffles) are implemented
/// here so draws are identical across standard libraries.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed = 0);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t next();
    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t uniform(std::uint64_t bound);
    /// Uniform double in [0, 1).
    double uniform01();
    bool bernoulli(double p) { return uniform01() < p; }

    template <class T>
    void shuffle(std::vector<T>& v)
    {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = uniform(i);
            std::swap(v[i - 1], v[j]);
        }
    }

    /// Independent child stream, a pure function of (seed, tag).
    SeededRng split(std::uint64_t tag) const;

private:
    std::uint64_t seed_;
    std::uint64_t s_[4];
};

std::uint64_t splitmix64(std::uint64_t x);
/// Order-sensitive mixing of a seed with further integers.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a);
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b);
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c);
std::uint64_t hash_string(std::string_view s);

} // namespace lasort

#endif
