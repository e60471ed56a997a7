// Seeded, repeated experiments over generators and sorters, CSV output and
// summary statistics.

#ifndef LASORT_HARNESS_HPP
#define LASORT_HARNESS_HPP

#include <lasort/dirty_clean_sort.hpp>
#include <lasort/generators.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lasort {

enum class Algorithm {
    dirty_clean,
    displacement,
    double_hoover,
    one_sided_left,
    one_sided_right,
    quicksort,
    mergesort,
    natural_merge,
    odd_even_straight,
    cook_kim,
};

std::string_view to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view tag);
std::vector<Algorithm> parse_algorithm_list(std::string_view comma_list);
const std::vector<Algorithm>& all_algorithms();
/// Algorithms that read a positional prediction (everything but dirty_clean).
bool uses_prediction(Algorithm a);

VerificationStrategy parse_verification(std::string_view tag);

struct ExperimentConfig {
    std::vector<Algorithm> algorithms;
    Setting setting = Setting::block;
    std::size_t n = 0;
    std::vector<double> parameters;
    std::size_t trials = 30;
    std::uint64_t seed = 0;
    VerificationStrategy verification = VerificationStrategy::galloping;
    unsigned repetitions = 1;
    /// Ranking setting only: the data file and the year to predict. Each
    /// parameter is a base year; n is ignored.
    std::filesystem::path ranking_data;
    int target_year = 0;
    /// Measure wall time. Off by default so output is byte-reproducible.
    bool record_time = false;
    /// Worker threads; output does not depend on this.
    unsigned threads = 1;

    /// Throws lasort::Error describing the first invalid field.
    void validate() const;
};

struct ExperimentRecord {
    std::string algorithm;
    std::string setting;
    std::size_t n = 0;
    double parameter = 0.0;
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    std::uint64_t clean_comparisons = 0;
    std::uint64_t dirty_comparisons = 0;
    std::uint64_t bookkeeping_dirty = 0;
    std::uint64_t wall_time_ns = 0;
    double sum_log_eta_delta = 0.0;
    double sum_log_eta_minlr = 0.0;
    double sum_log_eta_dirty = 0.0;
    bool sorted_ok = false;

    friend bool operator==(const ExperimentRecord&, const ExperimentRecord&) = default;
};

/// Seed of the instance shared by all algorithms in one (parameter, trial).
std::uint64_t trial_seed(std::uint64_t master, Setting setting, double parameter, std::size_t trial);

/// The instance the harness builds for one trial.
Instance make_trial_instance(const ExperimentConfig& config, double parameter, std::uint64_t seed);

/// Error sums of one instance: sum of log2(e + 2) over the displacement
/// errors, the smaller one-sided errors and the dirty errors. Dirty
/// settings measure the positional errors against the KwikSort prediction.
struct ErrorSums {
    double eta_delta = 0.0;
    double eta_minlr = 0.0;
    double eta_dirty = 0.0;
};
ErrorSums instance_error_sums(const Instance& instance, const PositionalPrediction& p_hat);

/// The positional prediction handed to prediction-based algorithms: the
/// instance's own, or KwikSort on its oracle for dirty settings. Dirty
/// queries spent on KwikSort are charged to `ledger`.
PositionalPrediction prediction_for(const Instance& instance, ComparisonLedger& ledger);

/// Runs one algorithm on one instance with a fresh ledger. Throws when the
/// output is not sorted, quoting the seed.
ExperimentRecord run_trial(Algorithm algorithm, const ExperimentConfig& config,
                           const Instance& instance, std::size_t trial);

/// Records ordered by (algorithm, parameter, trial), in config order.
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config);

inline constexpr std::string_view kCsvHeader =
    "algorithm,setting,n,parameter,trial,seed,clean_comparisons,dirty_comparisons,"
    "bookkeeping_dirty,wall_time_ns,sum_log_eta_delta,sum_log_eta_minlr,sum_log_eta_dirty,"
    "sorted_ok";

std::string to_csv(const std::vector<ExperimentRecord>& records);
/// Throws on an empty list (creating no file) or an unwritable path.
void write_csv(const std::vector<ExperimentRecord>& records, const std::filesystem::path& path);
std::vector<ExperimentRecord> parse_csv(std::string_view text);
std::vector<ExperimentRecord> read_csv(const std::filesystem::path& path);

struct SummaryRow {
    std::string algorithm;
    std::string setting;
    std::size_t n = 0;
    double parameter = 0.0;
    std::size_t count = 0;
    double mean = 0.0;
    /// Sample standard deviation; absent for groups of one.
    std::optional<double> stddev;
};

/// Mean and Bessel-corrected standard deviation of clean comparisons per
/// (algorithm, parameter), in first-appearance order. All records must share
/// n and setting.
std::vector<SummaryRow> summarize(const std::vector<ExperimentRecord>& records);

/// Summaries for every (setting, n) group plus an "n_log2_n" reference row
/// per parameter value.
std::vector<SummaryRow> plotdata(const std::vector<ExperimentRecord>& records);
std::string plotdata_csv(const std::vector<SummaryRow>& rows);

/// Desk-scale correctness sweep over every generator and sorter.
struct VerifyReport {
    std::uint64_t checks = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};
VerifyReport run_verify_suite(std::size_t max_n, std::uint64_t seed);

} // namespace lasort

#endif
