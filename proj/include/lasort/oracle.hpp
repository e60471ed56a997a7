// Dirty comparison oracles: complete relations over item indices that
// approximate the true order, possibly wrongly and possibly at random.

#ifndef LASORT_ORACLE_HPP
#define LASORT_ORACLE_HPP

#include <lasort/core.hpp>

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace lasort {

class DirtyOracle {
public:
    virtual ~DirtyOracle() = default;

    /// a_i dirtily precedes a_j. i != j.
    virtual bool query(ItemId i, ItemId j) = 0;

    /// Deterministic oracles answer repeated queries identically and satisfy
    /// query(i, j) != query(j, i).
    virtual bool deterministic() const { return true; }

    /// Probability that query(i, j) disagrees with the true order, when the
    /// oracle knows it.
    virtual std::optional<double> flip_probability(ItemId, ItemId) const { return std::nullopt; }

    virtual std::size_t size() const = 0;
};

using OraclePtr = std::shared_ptr<DirtyOracle>;

/// Agrees with the true order.
class ExactOracle final : public DirtyOracle {
public:
    explicit ExactOracle(const ItemArray& items) : items_(&items) {}
    bool query(ItemId i, ItemId j) override { return items_->less(i, j); }
    std::optional<double> flip_probability(ItemId, ItemId) const override { return 0.0; }
    std::size_t size() const override { return items_->size(); }

private:
    const ItemArray* items_;
};

/// Wrong on every pair.
class InvertedOracle final : public DirtyOracle {
public:
    explicit InvertedOracle(const ItemArray& items) : items_(&items) {}
    bool query(ItemId i, ItemId j) override { return items_->less(j, i); }
    std::optional<double> flip_probability(ItemId, ItemId) const override { return 1.0; }
    std::size_t size() const override { return items_->size(); }

private:
    const ItemArray* items_;
};

/// Follows a positional prediction: i precedes j iff (p̂(i), i) < (p̂(j), j).
class PredictionOrderOracle final : public DirtyOracle {
public:
    explicit PredictionOrderOracle(PositionalPrediction prediction)
        : prediction_(std::move(prediction)) {}
    bool query(ItemId i, ItemId j) override
    {
        return prediction_[i] < prediction_[j] || (prediction_[i] == prediction_[j] && i < j);
    }
    std::size_t size() const override { return prediction_.size(); }

private:
    PositionalPrediction prediction_;
};

/// The true order with an explicit set of unordered pairs answered wrongly.
class FlippedPairsOracle final : public DirtyOracle {
public:
    FlippedPairsOracle(const ItemArray& items, std::vector<std::pair<ItemId, ItemId>> pairs);
    bool query(ItemId i, ItemId j) override;
    std::optional<double> flip_probability(ItemId i, ItemId j) const override;
    std::size_t size() const override { return items_->size(); }

private:
    const ItemArray* items_;
    std::set<std::pair<ItemId, ItemId>> flipped_;
};

/// Always answers "i precedes j" from the point of view of the searcher,
/// i.e. query(i, j) is true iff i > j by index. Handy for forcing a search
/// path: inserting a fresh item with the largest index always goes left.
class AlwaysLeftOracle final : public DirtyOracle {
public:
    explicit AlwaysLeftOracle(std::size_t n) : n_(n) {}
    bool query(ItemId i, ItemId j) override { return i > j; }
    std::size_t size() const override { return n_; }

private:
    std::size_t n_;
};

enum class DamageMode { good_dominating, bad_dominating };

/// Damaged-item oracle. A pair is perturbed when both (good-dominating) or
/// either (bad-dominating) item is damaged; perturbed pairs answer with a
/// fixed fair coin keyed on (seed, min(i,j), max(i,j)).
class DamagedOracle final : public DirtyOracle {
public:
    DamagedOracle(const ItemArray& items, std::vector<bool> damaged, DamageMode mode,
                  std::uint64_t seed);
    bool query(ItemId i, ItemId j) override;
    std::optional<double> flip_probability(ItemId i, ItemId j) const override;
    std::size_t size() const override { return items_->size(); }

    bool perturbed(ItemId i, ItemId j) const;
    const std::vector<bool>& damaged() const { return damaged_; }

private:
    const ItemArray* items_;
    std::vector<bool> damaged_;
    DamageMode mode_;
    std::uint64_t seed_;
};

/// Answers each query with a fresh, independent flip of the true outcome.
class ProbabilisticOracle final : public DirtyOracle {
public:
    using FlipFn = std::function<double(ItemId, ItemId)>;

    ProbabilisticOracle(const ItemArray& items, double flip, std::uint64_t seed);
    /// `flip(i, j)` must be symmetric and lie in [0, 1].
    ProbabilisticOracle(const ItemArray& items, FlipFn flip, std::uint64_t seed);

    bool query(ItemId i, ItemId j) override;
    bool deterministic() const override { return false; }
    std::optional<double> flip_probability(ItemId i, ItemId j) const override;
    std::size_t size() const override { return items_->size(); }

private:
    const ItemArray* items_;
    FlipFn flip_;
    SeededRng rng_;
};

} // namespace lasort

#endif
