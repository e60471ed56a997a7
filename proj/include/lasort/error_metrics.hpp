// Prediction-error measures. Nothing here touches a ComparisonLedger.

#ifndef LASORT_ERROR_METRICS_HPP
#define LASORT_ERROR_METRICS_HPP

#include <lasort/core.hpp>
#include <lasort/oracle.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace lasort {

struct OneSidedErrors {
    std::vector<std::uint32_t> left;
    std::vector<std::uint32_t> right;
};

struct ErrorProfile {
    std::vector<std::uint32_t> eta_delta;
    std::vector<std::uint32_t> eta_left;
    std::vector<std::uint32_t> eta_right;
    std::vector<std::uint32_t> eta_dirty;
    std::uint64_t d_global = 0;
};

/// |p̂(i) - p(i)| per item.
std::vector<std::uint32_t> displacement_errors(const Permutation& p, const PositionalPrediction& p_hat);

/// Left error counts j with p̂(j) <= p̂(i) and p(j) > p(i); right error counts
/// j with p̂(j) >= p̂(i) and p(j) < p(i). O(n log n).
OneSidedErrors one_sided_errors(const Permutation& p, const PositionalPrediction& p_hat);

/// Number of j whose dirty answer against i is wrong. Needs a deterministic
/// oracle; issues n(n-1)/2 queries.
std::vector<std::uint32_t> dirty_errors(const ItemArray& items, DirtyOracle& oracle);

/// Sum over j of the flip probability of pair (i, j).
std::vector<double> expected_dirty_errors(const DirtyOracle& oracle);

/// Pairs with p(i) < p(j) but p̂(i) >= p̂(j). O(n log n).
std::uint64_t global_error_D(const Permutation& p, const PositionalPrediction& p_hat);
/// Half the summed dirty errors, i.e. the number of wrong pairs.
std::uint64_t global_error_D(const ItemArray& items, DirtyOracle& oracle);

/// Everything at once. `oracle` may be null, in which case eta_dirty is
/// computed against the prediction-order oracle and d_global is positional.
ErrorProfile error_profile(const ItemArray& items, const Permutation& p,
                           const PositionalPrediction& p_hat, DirtyOracle* oracle = nullptr);

/// Sum of log2(e + 2) over the entries.
double sum_log2_plus2(std::span<const std::uint32_t> errors);

/// Elementwise min of left and right errors.
std::vector<std::uint32_t> min_one_sided(const OneSidedErrors& e);

} // namespace lasort

#endif
