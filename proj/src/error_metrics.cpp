#include <lasort/error_metrics.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lasort {

namespace {

void check_sizes(const Permutation& p, const PositionalPrediction& p_hat)
{
    if (p.size() != p_hat.size())
        throw Error("error metrics: permutation and prediction differ in size");
}

// Counts inserted values in 1..n.
class Fenwick {
public:
    explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}
    void add(std::size_t pos)
    {
        for (; pos < tree_.size(); pos += pos & (~pos + 1))
            ++tree_[pos];
    }
    std::uint32_t prefix(std::size_t pos) const
    {
        std::uint32_t s = 0;
        for (; pos > 0; pos -= pos & (~pos + 1))
            s += tree_[pos];
        return s;
    }

private:
    std::vector<std::uint32_t> tree_;
};

// Items grouped by predicted value, ascending.
std::vector<ItemId> by_prediction(const PositionalPrediction& p_hat)
{
    std::vector<ItemId> order(p_hat.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(),
                     [&](ItemId a, ItemId b) { return p_hat[a] < p_hat[b]; });
    return order;
}

} // namespace

std::vector<std::uint32_t> displacement_errors(const Permutation& p, const PositionalPrediction& p_hat)
{
    check_sizes(p, p_hat);
    std::vector<std::uint32_t> out(p.size());
    for (ItemId i = 0; i < p.size(); ++i)
        out[i] = p_hat[i] > p[i] ? p_hat[i] - p[i] : p[i] - p_hat[i];
    return out;
}

OneSidedErrors one_sided_errors(const Permutation& p, const PositionalPrediction& p_hat)
{
    check_sizes(p, p_hat);
    const std::size_t n = p.size();
    OneSidedErrors e{std::vector<std::uint32_t>(n), std::vector<std::uint32_t>(n)};
    const auto order = by_prediction(p_hat);

    // Sweep groups of equal p̂ upward: a group is inserted before its own
    // members are queried, since p̂(j) <= p̂(i) includes ties.
    Fenwick up(n);
    std::uint32_t inserted = 0;
    for (std::size_t g = 0; g < n;) {
        std::size_t end = g;
        while (end < n && p_hat[order[end]] == p_hat[order[g]])
            ++end;
        for (std::size_t k = g; k < end; ++k, ++inserted)
            up.add(p[order[k]]);
        for (std::size_t k = g; k < end; ++k)
            e.left[order[k]] = inserted - up.prefix(p[order[k]]);
        g = end;
    }

    Fenwick down(n);
    for (std::size_t g = n; g > 0;) {
        std::size_t begin = g;
        while (begin > 0 && p_hat[order[begin - 1]] == p_hat[order[g - 1]])
            --begin;
        for (std::size_t k = begin; k < g; ++k)
            down.add(p[order[k]]);
        for (std::size_t k = begin; k < g; ++k)
            e.right[order[k]] = down.prefix(p[order[k]] - 1);
        g = begin;
    }
    return e;
}

std::vector<std::uint32_t> dirty_errors(const ItemArray& items, DirtyOracle& oracle)
{
    if (!oracle.deterministic())
        throw Error("dirty_errors: oracle is probabilistic; use expected_dirty_errors");
    if (oracle.size() != items.size())
        throw Error("dirty_errors: oracle and items differ in size");
    const auto n = static_cast<ItemId>(items.size());
    std::vector<std::uint32_t> eta(n, 0);
    for (ItemId i = 0; i < n; ++i)
        for (ItemId j = i + 1; j < n; ++j)
            if (oracle.query(i, j) != items.less(i, j)) {
                ++eta[i];
                ++eta[j];
            }
    return eta;
}

std::vector<double> expected_dirty_errors(const DirtyOracle& oracle)
{
    const auto n = static_cast<ItemId>(oracle.size());
    std::vector<double> eta(n, 0.0);
    for (ItemId i = 0; i < n; ++i)
        for (ItemId j = i + 1; j < n; ++j) {
            auto q = oracle.flip_probability(i, j);
            if (!q)
                throw Error("expected_dirty_errors: oracle does not expose flip probabilities");
            eta[i] += *q;
            eta[j] += *q;
        }
    return eta;
}

std::uint64_t global_error_D(const Permutation& p, const PositionalPrediction& p_hat)
{
    check_sizes(p, p_hat);
    const std::size_t n = p.size();
    // Walk items in true order; count earlier ones predicted at or after.
    const auto sorted = p.inverse();
    Fenwick seen(n);
    std::uint64_t d = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const auto v = p_hat[sorted[k]];
        d += k - seen.prefix(v - 1);
        seen.add(v);
    }
    return d;
}

std::uint64_t global_error_D(const ItemArray& items, DirtyOracle& oracle)
{
    const auto eta = dirty_errors(items, oracle);
    return std::accumulate(eta.begin(), eta.end(), std::uint64_t{0}) / 2;
}

ErrorProfile error_profile(const ItemArray& items, const Permutation& p,
                           const PositionalPrediction& p_hat, DirtyOracle* oracle)
{
    ErrorProfile prof;
    prof.eta_delta = displacement_errors(p, p_hat);
    auto sided = one_sided_errors(p, p_hat);
    prof.eta_left = std::move(sided.left);
    prof.eta_right = std::move(sided.right);
    if (oracle) {
        prof.eta_dirty = dirty_errors(items, *oracle);
        prof.d_global =
            std::accumulate(prof.eta_dirty.begin(), prof.eta_dirty.end(), std::uint64_t{0}) / 2;
    } else {
        PredictionOrderOracle induced(p_hat);
        prof.eta_dirty = dirty_errors(items, induced);
        prof.d_global = global_error_D(p, p_hat);
    }
    return prof;
}

double sum_log2_plus2(std::span<const std::uint32_t> errors)
{
    double s = 0.0;
    for (auto e : errors)
        s += std::log2(static_cast<double>(e) + 2.0);
    return s;
}

std::vector<std::uint32_t> min_one_sided(const OneSidedErrors& e)
{
    std::vector<std::uint32_t> out(e.left.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = std::min(e.left[i], e.right[i]);
    return out;
}

} // namespace lasort
