#include <lasort/oracle.hpp>

#include <algorithm>

namespace lasort {

namespace {

std::pair<ItemId, ItemId> ordered(ItemId i, ItemId j)
{
    return i < j ? std::pair{i, j} : std::pair{j, i};
}

} // namespace

FlippedPairsOracle::FlippedPairsOracle(const ItemArray& items,
                                       std::vector<std::pair<ItemId, ItemId>> pairs)
    : items_(&items)
{
    for (auto [i, j] : pairs) {
        if (i == j || i >= items.size() || j >= items.size())
            throw Error("FlippedPairsOracle: invalid pair");
        flipped_.insert(ordered(i, j));
    }
}

bool FlippedPairsOracle::query(ItemId i, ItemId j)
{
    const bool truth = items_->less(i, j);
    return flipped_.contains(ordered(i, j)) ? !truth : truth;
}

std::optional<double> FlippedPairsOracle::flip_probability(ItemId i, ItemId j) const
{
    return flipped_.contains(ordered(i, j)) ? 1.0 : 0.0;
}

DamagedOracle::DamagedOracle(const ItemArray& items, std::vector<bool> damaged, DamageMode mode,
                             std::uint64_t seed)
    : items_(&items), damaged_(std::move(damaged)), mode_(mode), seed_(seed)
{
    if (damaged_.size() != items.size())
        throw Error("DamagedOracle: damage mask size mismatch");
}

bool DamagedOracle::perturbed(ItemId i, ItemId j) const
{
    return mode_ == DamageMode::good_dominating ? (damaged_[i] && damaged_[j])
                                                : (damaged_[i] || damaged_[j]);
}

bool DamagedOracle::query(ItemId i, ItemId j)
{
    if (!perturbed(i, j))
        return items_->less(i, j);
    auto [lo, hi] = ordered(i, j);
    const bool lo_first = (mix_seed(seed_, lo, hi) >> 63) != 0;
    return i == lo ? lo_first : !lo_first;
}

std::optional<double> DamagedOracle::flip_probability(ItemId i, ItemId j) const
{
    return perturbed(i, j) ? 0.5 : 0.0;
}

ProbabilisticOracle::ProbabilisticOracle(const ItemArray& items, double flip, std::uint64_t seed)
    : ProbabilisticOracle(items, [flip](ItemId, ItemId) { return flip; }, seed)
{
}

ProbabilisticOracle::ProbabilisticOracle(const ItemArray& items, FlipFn flip, std::uint64_t seed)
    : items_(&items), flip_(std::move(flip)), rng_(seed)
{
    if (!flip_)
        throw Error("ProbabilisticOracle: missing flip probabilities");
    const double probe = items.size() >= 2 ? flip_(0, 1) : 0.0;
    if (!(probe >= 0.0 && probe <= 1.0))
        throw Error("ProbabilisticOracle: flip probability outside [0, 1]");
}

bool ProbabilisticOracle::query(ItemId i, ItemId j)
{
    const bool truth = items_->less(i, j);
    return rng_.bernoulli(flip_(i, j)) ? !truth : truth;
}

std::optional<double> ProbabilisticOracle::flip_probability(ItemId i, ItemId j) const
{
    return flip_(i, j);
}

} // namespace lasort
