// Instance and oracle factories. Every generator is a pure function of its
// parameters and seed.

#ifndef LASORT_GENERATORS_HPP
#define LASORT_GENERATORS_HPP

#include <lasort/core.hpp>
#include <lasort/oracle.hpp>

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lasort {

enum class Setting { class_setting, decay, block, good_dominating, bad_dominating, ranking };

std::string_view to_string(Setting s);
Setting parse_setting(std::string_view tag);
/// Settings whose natural input is a dirty oracle rather than a prediction.
bool is_dirty_setting(Setting s);

struct Instance {
    /// Heap-held so oracles that point at it survive moves of the Instance.
    std::shared_ptr<const ItemArray> items;
    Permutation truth;
    std::optional<PositionalPrediction> prediction;
    OraclePtr oracle;
    Setting setting = Setting::block;
    double parameter = 0.0;
    std::uint64_t seed = 0;
    /// Entity names, for instances read from a ranking file.
    std::vector<std::string> labels;

    std::size_t size() const { return items ? items->size() : 0; }
};

/// c classes with strictly increasing random thresholds; every item gets a
/// prediction drawn uniformly from its class's rank interval.
Instance gen_class(std::size_t n, std::size_t classes, std::uint64_t seed);

/// Starts from the perfect prediction and applies `steps` random unit shifts.
/// A shift that would leave [1, n] goes the other way instead.
Instance gen_decay(std::size_t n, std::size_t steps, std::uint64_t seed);

/// Identity prediction; the truth shuffles items within consecutive blocks of
/// `block` items. The oracle follows the prediction order.
Instance gen_block_permutation(std::size_t n, std::size_t block, std::uint64_t seed);

/// round(r n) damaged items; pairs are perturbed according to `mode`.
Instance gen_dirty_damaged(std::size_t n, double ratio, DamageMode mode, std::uint64_t seed);

/// Oracle with independent flips on every query.
std::shared_ptr<ProbabilisticOracle> gen_probabilistic_oracle(const ItemArray& items, double flip,
                                                              std::uint64_t seed);
std::shared_ptr<ProbabilisticOracle> gen_probabilistic_oracle(const ItemArray& items,
                                                              ProbabilisticOracle::FlipFn flip,
                                                              std::uint64_t seed);

/// KwikSort on the dirty tournament: random pivots, dirty comparisons only
/// (charged to the ledger). Returns the resulting ranking as a prediction.
PositionalPrediction kwiksort_fas(std::size_t n, DirtyOracle& oracle, std::uint64_t seed,
                                  ComparisonLedger& ledger);

/// One parsed row of a ranking file.
struct RankingRow {
    std::string entity;
    int year = 0;
    std::uint32_t rank = 0;
};

/// Parses `entity,year,rank` CSV. Throws with a line number on malformed
/// rows, duplicate (entity, year) pairs or a year whose ranks are not 1..m.
std::vector<RankingRow> read_ranking_csv(const std::filesystem::path& path);

/// Truth is the ranking at target_year, the prediction the ranking at
/// base_year; both restricted to entities present in both years and
/// re-ranked densely.
Instance ingest_ranking_csv(const std::filesystem::path& path, int base_year, int target_year);
Instance ranking_instance(const std::vector<RankingRow>& rows, int base_year, int target_year);

/// Shuffled 1..n as keys.
ItemArray random_keys(std::size_t n, SeededRng& rng);

} // namespace lasort

#endif
