// Brute-force reference implementations used as test oracles. Everything
// here follows the textbook definitions directly, favouring obviousness over
// speed.

#ifndef LASORT_TESTS_REFERENCE_HPP
#define LASORT_TESTS_REFERENCE_HPP

#include <lasort/core.hpp>
#include <lasort/oracle.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

namespace ref {

using lasort::ItemId;

inline std::vector<std::uint32_t> ranks(const std::vector<double>& keys)
{
    const std::size_t n = keys.size();
    std::vector<std::uint32_t> r(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t below = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (keys[j] < keys[i] || (keys[j] == keys[i] && j < i))
                ++below;
        r[i] = below + 1;
    }
    return r;
}

inline std::vector<std::uint32_t> displacement(const std::vector<std::uint32_t>& p,
                                               const std::vector<std::uint32_t>& q)
{
    std::vector<std::uint32_t> out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        out[i] = p[i] > q[i] ? p[i] - q[i] : q[i] - p[i];
    return out;
}

inline std::vector<std::uint32_t> left_error(const std::vector<std::uint32_t>& p,
                                             const std::vector<std::uint32_t>& q)
{
    std::vector<std::uint32_t> out(p.size(), 0);
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j)
            if (q[j] <= q[i] && p[j] > p[i])
                ++out[i];
    return out;
}

inline std::vector<std::uint32_t> right_error(const std::vector<std::uint32_t>& p,
                                              const std::vector<std::uint32_t>& q)
{
    std::vector<std::uint32_t> out(p.size(), 0);
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j)
            if (q[j] >= q[i] && p[j] < p[i])
                ++out[i];
    return out;
}

inline std::uint64_t global_D(const std::vector<std::uint32_t>& p, const std::vector<std::uint32_t>& q)
{
    std::uint64_t d = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j)
            if (p[i] < p[j] && q[i] >= q[j])
                ++d;
    return d;
}

/// eta_i: number of j != i for which query(i, j) disagrees with the truth.
inline std::vector<std::uint32_t> dirty(const lasort::ItemArray& items, lasort::DirtyOracle& o)
{
    const std::size_t n = items.size();
    std::vector<std::uint32_t> out(n, 0);
    for (ItemId i = 0; i < n; ++i)
        for (ItemId j = 0; j < n; ++j)
            if (i != j && o.query(i, j) != items.less(i, j))
                ++out[i];
    return out;
}

inline std::vector<ItemId> stable_bucket_order(const std::vector<std::uint32_t>& q)
{
    std::vector<ItemId> idx(q.size());
    std::iota(idx.begin(), idx.end(), 0u);
    std::stable_sort(idx.begin(), idx.end(), [&](ItemId a, ItemId b) { return q[a] < q[b]; });
    return idx;
}

inline double sum_log2_plus2(const std::vector<std::uint32_t>& e)
{
    double s = 0.0;
    for (auto v : e)
        s += std::log2(static_cast<double>(v) + 2.0);
    return s;
}

inline std::vector<std::uint32_t> elementwise_min(const std::vector<std::uint32_t>& a,
                                                  const std::vector<std::uint32_t>& b)
{
    std::vector<std::uint32_t> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = std::min(a[i], b[i]);
    return out;
}

inline std::vector<std::uint32_t> as_vector(std::span<const std::uint32_t> s)
{
    return {s.begin(), s.end()};
}

/// Comparisons of top-down mergesort on n items, counted by simulation on
/// the given sequence.
inline std::uint64_t mergesort_comparisons(std::vector<double> v)
{
    std::uint64_t count = 0;
    std::vector<double> tmp;
    auto rec = [&](auto&& self, std::size_t lo, std::size_t hi) -> void {
        if (hi - lo < 2)
            return;
        const std::size_t mid = lo + (hi - lo) / 2;
        self(self, lo, mid);
        self(self, mid, hi);
        tmp.clear();
        std::size_t i = lo, j = mid;
        while (i < mid && j < hi) {
            ++count;
            tmp.push_back(v[j] < v[i] ? v[j++] : v[i++]);
        }
        while (i < mid)
            tmp.push_back(v[i++]);
        while (j < hi)
            tmp.push_back(v[j++]);
        std::copy(tmp.begin(), tmp.end(), v.begin() + static_cast<std::ptrdiff_t>(lo));
    };
    rec(rec, 0, v.size());
    return count;
}

} // namespace ref

#endif
