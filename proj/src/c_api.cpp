#include <lasort/lasort.h>

#include <lasort/baselines.hpp>
#include <lasort/displacement_sort.hpp>
#include <lasort/double_hoover.hpp>
#include <lasort/error_metrics.hpp>
#include <lasort/harness.hpp>

#include <cstring>
#include <exception>
#include <fstream>
#include <new>
#include <stdexcept>
#include <string>

using namespace lasort;

struct lasort_config {
    ExperimentConfig config;
};

struct lasort_results {
    std::vector<ExperimentRecord> records;
};

struct lasort_profile {
    ErrorProfile profile;
};

namespace {

thread_local std::string g_last_error;

lasort_status fail(lasort_status status, std::string message)
{
    g_last_error = std::move(message);
    return status;
}

// A tag or value the caller passed in was not recognized.
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

template <class F>
auto argument(F&& parse)
{
    try {
        return parse();
    } catch (const lasort::Error& e) {
        throw ArgumentError(e.what());
    }
}

// Runs `body`, mapping exceptions to status codes.
template <class F>
lasort_status guarded(F&& body)
{
    g_last_error.clear();
    try {
        return body();
    } catch (const ArgumentError& e) {
        return fail(LASORT_ERR_INVALID_ARGUMENT, e.what());
    } catch (const lasort::Error& e) {
        return fail(LASORT_ERR_CONTRACT, e.what());
    } catch (const std::filesystem::filesystem_error& e) {
        return fail(LASORT_ERR_IO, e.what());
    } catch (const std::bad_alloc&) {
        return fail(LASORT_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(LASORT_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(LASORT_ERR_INTERNAL, "unknown error");
    }
}

#define LASORT_REQUIRE(ptr)                                                                        \
    do {                                                                                           \
        if ((ptr) == nullptr)                                                                      \
            return fail(LASORT_ERR_INVALID_ARGUMENT, #ptr " is NULL");                             \
    } while (0)

const std::vector<std::uint32_t>* measure_values(const ErrorProfile& p, lasort_measure m)
{
    switch (m) {
    case LASORT_ETA_DELTA: return &p.eta_delta;
    case LASORT_ETA_LEFT: return &p.eta_left;
    case LASORT_ETA_RIGHT: return &p.eta_right;
    case LASORT_ETA_DIRTY: return &p.eta_dirty;
    }
    return nullptr;
}

} // namespace

extern "C" {

const char* lasort_version(void)
{
    return "0.1.0";
}

const char* lasort_last_error(void)
{
    return g_last_error.c_str();
}

const char* lasort_status_string(lasort_status status)
{
    switch (status) {
    case LASORT_OK: return "ok";
    case LASORT_ERR_INVALID_ARGUMENT: return "invalid argument";
    case LASORT_ERR_CONTRACT: return "contract violation";
    case LASORT_ERR_IO: return "i/o error";
    case LASORT_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

lasort_status lasort_config_create(lasort_config** out)
{
    LASORT_REQUIRE(out);
    return guarded([&] {
        *out = new lasort_config{};
        return LASORT_OK;
    });
}

void lasort_config_destroy(lasort_config* config)
{
    delete config;
}

lasort_status lasort_config_set_setting(lasort_config* config, const char* setting)
{
    LASORT_REQUIRE(config);
    LASORT_REQUIRE(setting);
    return guarded([&] {
        config->config.setting = argument([&] { return parse_setting(setting); });
        return LASORT_OK;
    });
}

lasort_status lasort_config_set_algorithms(lasort_config* config, const char* algorithms)
{
    LASORT_REQUIRE(config);
    LASORT_REQUIRE(algorithms);
    return guarded([&] {
        config->config.algorithms = argument([&] { return parse_algorithm_list(algorithms); });
        return LASORT_OK;
    });
}

lasort_status lasort_config_set_n(lasort_config* config, size_t n)
{
    LASORT_REQUIRE(config);
    config->config.n = n;
    return LASORT_OK;
}

lasort_status lasort_config_set_parameters(lasort_config* config, const double* values, size_t count)
{
    LASORT_REQUIRE(config);
    if (count > 0)
        LASORT_REQUIRE(values);
    return guarded([&] {
        config->config.parameters.assign(values, values + count);
        return LASORT_OK;
    });
}

lasort_status lasort_config_set_trials(lasort_config* config, size_t trials)
{
    LASORT_REQUIRE(config);
    config->config.trials = trials;
    return LASORT_OK;
}

lasort_status lasort_config_set_seed(lasort_config* config, uint64_t seed)
{
    LASORT_REQUIRE(config);
    config->config.seed = seed;
    return LASORT_OK;
}

lasort_status lasort_config_set_verification(lasort_config* config, const char* strategy)
{
    LASORT_REQUIRE(config);
    LASORT_REQUIRE(strategy);
    return guarded([&] {
        config->config.verification = argument([&] { return parse_verification(strategy); });
        return LASORT_OK;
    });
}

lasort_status lasort_config_set_repetitions(lasort_config* config, unsigned repetitions)
{
    LASORT_REQUIRE(config);
    if (repetitions % 2 == 0)
        return fail(LASORT_ERR_INVALID_ARGUMENT, "repetitions must be odd");
    config->config.repetitions = repetitions;
    return LASORT_OK;
}

lasort_status lasort_config_set_ranking_data(lasort_config* config, const char* path, int target_year)
{
    LASORT_REQUIRE(config);
    LASORT_REQUIRE(path);
    return guarded([&] {
        config->config.ranking_data = path;
        config->config.target_year = target_year;
        return LASORT_OK;
    });
}

lasort_status lasort_config_set_timing(lasort_config* config, int enabled)
{
    LASORT_REQUIRE(config);
    config->config.record_time = enabled != 0;
    return LASORT_OK;
}

lasort_status lasort_config_set_threads(lasort_config* config, unsigned threads)
{
    LASORT_REQUIRE(config);
    if (threads == 0)
        return fail(LASORT_ERR_INVALID_ARGUMENT, "threads must be at least 1");
    config->config.threads = threads;
    return LASORT_OK;
}

lasort_status lasort_run_experiment(const lasort_config* config, lasort_results** out)
{
    LASORT_REQUIRE(config);
    LASORT_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        auto records = run_experiment(config->config);
        *out = new lasort_results{std::move(records)};
        return LASORT_OK;
    });
}

void lasort_results_destroy(lasort_results* results)
{
    delete results;
}

lasort_status lasort_results_count(const lasort_results* results, size_t* out)
{
    LASORT_REQUIRE(results);
    LASORT_REQUIRE(out);
    *out = results->records.size();
    return LASORT_OK;
}

lasort_status lasort_results_comparisons(const lasort_results* results, size_t index,
                                         uint64_t* clean, uint64_t* dirty)
{
    LASORT_REQUIRE(results);
    if (index >= results->records.size())
        return fail(LASORT_ERR_INVALID_ARGUMENT, "record index out of range");
    if (clean)
        *clean = results->records[index].clean_comparisons;
    if (dirty)
        *dirty = results->records[index].dirty_comparisons;
    return LASORT_OK;
}

lasort_status lasort_results_write_csv(const lasort_results* results, const char* path)
{
    LASORT_REQUIRE(results);
    LASORT_REQUIRE(path);
    return guarded([&] {
        if (results->records.empty())
            return fail(LASORT_ERR_CONTRACT, "no records to write");
        std::ofstream probe(path, std::ios::app);
        if (!probe)
            return fail(LASORT_ERR_IO, std::string("cannot open '") + path + "' for writing");
        probe.close();
        write_csv(results->records, path);
        return LASORT_OK;
    });
}

lasort_status lasort_plotdata(const char* in_path, const char* out_path)
{
    LASORT_REQUIRE(in_path);
    LASORT_REQUIRE(out_path);
    return guarded([&] {
        std::ifstream in(in_path);
        if (!in)
            return fail(LASORT_ERR_IO, std::string("cannot open '") + in_path + "'");
        in.close();
        const auto text = plotdata_csv(plotdata(read_csv(in_path)));
        std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
        if (!out)
            return fail(LASORT_ERR_IO, std::string("cannot open '") + out_path + "' for writing");
        out << text;
        return out ? LASORT_OK : fail(LASORT_ERR_IO, std::string("failed writing '") + out_path + "'");
    });
}

lasort_status lasort_verify(size_t n, uint64_t seed, lasort_verify_summary* out)
{
    LASORT_REQUIRE(out);
    return guarded([&] {
        const VerifyReport report = run_verify_suite(n, seed);
        out->checks = report.checks;
        out->failures = report.failures.size();
        if (!report.ok()) {
            std::string text;
            for (const auto& f : report.failures)
                text += f + "\n";
            g_last_error = text;
        }
        return LASORT_OK;
    });
}

lasort_status lasort_sort(const char* algorithm, const double* keys, size_t n,
                          const uint32_t* prediction, uint64_t seed, uint32_t* out_order,
                          lasort_counts* counts)
{
    LASORT_REQUIRE(algorithm);
    if (n > 0) {
        LASORT_REQUIRE(keys);
        LASORT_REQUIRE(out_order);
    }
    return guarded([&] {
        const Algorithm algo = argument([&] { return parse_algorithm(algorithm); });
        if (uses_prediction(algo) && prediction == nullptr && n > 0)
            return fail(LASORT_ERR_INVALID_ARGUMENT,
                        std::string(algorithm) + " needs a positional prediction");
        const ItemArray items(std::vector<double>(keys, keys + n));
        std::optional<PositionalPrediction> p_hat;
        if (prediction)
            p_hat.emplace(std::vector<std::uint32_t>(prediction, prediction + n));

        ComparisonLedger ledger;
        SeededRng rng(seed);
        std::vector<ItemId> order;
        switch (algo) {
        case Algorithm::dirty_clean: {
            OraclePtr oracle;
            if (p_hat)
                oracle = std::make_shared<PredictionOrderOracle>(*p_hat);
            else
                oracle = std::make_shared<ExactOracle>(items);
            order = dirty_clean_sort(items, *oracle, rng, ledger);
            break;
        }
        case Algorithm::displacement: order = displacement_sort(items, *p_hat, ledger); break;
        case Algorithm::double_hoover: order = double_hoover_sort(items, *p_hat, ledger).order; break;
        case Algorithm::one_sided_left:
            order = one_sided_insertion_sort(items, *p_hat, Side::left, ledger);
            break;
        case Algorithm::one_sided_right:
            order = one_sided_insertion_sort(items, *p_hat, Side::right, ledger);
            break;
        default:
            order = run_baseline(parse_baseline(algorithm), items, bucket_sort_by_prediction(*p_hat),
                                 rng, ledger);
        }
        if (!verify_sorted(items, order))
            return fail(LASORT_ERR_INTERNAL, "sorter produced unsorted output");
        std::copy(order.begin(), order.end(), out_order);
        if (counts) {
            counts->clean = ledger.clean_total;
            counts->dirty = ledger.dirty_total;
            counts->bookkeeping_dirty = ledger.bookkeeping_dirty;
        }
        return LASORT_OK;
    });
}

lasort_status lasort_profile_create(const uint32_t* truth, const uint32_t* prediction, size_t n,
                                    lasort_profile** out)
{
    LASORT_REQUIRE(out);
    *out = nullptr;
    if (n > 0) {
        LASORT_REQUIRE(truth);
        LASORT_REQUIRE(prediction);
    }
    return guarded([&] {
        const Permutation p(std::vector<std::uint32_t>(truth, truth + n));
        const PositionalPrediction p_hat(std::vector<std::uint32_t>(prediction, prediction + n));
        std::vector<double> keys(p.ranks().begin(), p.ranks().end());
        const ItemArray items(std::move(keys));
        *out = new lasort_profile{error_profile(items, p, p_hat)};
        return LASORT_OK;
    });
}

void lasort_profile_destroy(lasort_profile* profile)
{
    delete profile;
}

lasort_status lasort_profile_size(const lasort_profile* profile, size_t* out)
{
    LASORT_REQUIRE(profile);
    LASORT_REQUIRE(out);
    *out = profile->profile.eta_delta.size();
    return LASORT_OK;
}

lasort_status lasort_profile_values(const lasort_profile* profile, lasort_measure measure,
                                    uint32_t* out, size_t capacity)
{
    LASORT_REQUIRE(profile);
    const auto* values = measure_values(profile->profile, measure);
    if (!values)
        return fail(LASORT_ERR_INVALID_ARGUMENT, "unknown measure");
    const size_t count = std::min(capacity, values->size());
    if (count > 0)
        LASORT_REQUIRE(out);
    std::copy_n(values->begin(), count, out);
    return LASORT_OK;
}

lasort_status lasort_profile_global_error(const lasort_profile* profile, uint64_t* out)
{
    LASORT_REQUIRE(profile);
    LASORT_REQUIRE(out);
    *out = profile->profile.d_global;
    return LASORT_OK;
}

lasort_status lasort_profile_log_sum(const lasort_profile* profile, lasort_measure measure,
                                     double* out)
{
    LASORT_REQUIRE(profile);
    LASORT_REQUIRE(out);
    const auto* values = measure_values(profile->profile, measure);
    if (!values)
        return fail(LASORT_ERR_INVALID_ARGUMENT, "unknown measure");
    *out = sum_log2_plus2(*values);
    return LASORT_OK;
}

} // extern "C"
