#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <lasort/lasort.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <unistd.h>

namespace {

std::string temp_path(const char* stem)
{
    static int counter = 0;
    return (std::filesystem::temp_directory_path() /
            ("lasort_capi_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + stem))
        .string();
}

std::size_t line_count(const std::string& path)
{
    std::ifstream in(path);
    std::size_t lines = 0;
    for (std::string s; std::getline(in, s);)
        ++lines;
    return lines;
}

} // namespace

TEST_CASE("status strings and version")
{
    CHECK(std::strlen(lasort_version()) > 0);
    CHECK(std::string(lasort_status_string(LASORT_OK)).size() > 0);
    CHECK(std::string(lasort_status_string(LASORT_ERR_IO)) != lasort_status_string(LASORT_OK));
}

TEST_CASE("config setters validate their arguments")
{
    lasort_config* cfg = nullptr;
    REQUIRE(lasort_config_create(&cfg) == LASORT_OK);
    CHECK(lasort_config_create(nullptr) == LASORT_ERR_INVALID_ARGUMENT);
    CHECK(lasort_config_set_setting(cfg, "block") == LASORT_OK);
    CHECK(lasort_config_set_setting(cfg, "nonsense") == LASORT_ERR_INVALID_ARGUMENT);
    CHECK(std::string(lasort_last_error()).find("nonsense") != std::string::npos);
    CHECK(lasort_config_set_setting(nullptr, "block") == LASORT_ERR_INVALID_ARGUMENT);
    CHECK(lasort_config_set_algorithms(cfg, "displacement,quicksort") == LASORT_OK);
    CHECK(lasort_config_set_algorithms(cfg, "bogo") == LASORT_ERR_INVALID_ARGUMENT);
    CHECK(lasort_config_set_verification(cfg, "linear") == LASORT_OK);
    CHECK(lasort_config_set_verification(cfg, "sideways") == LASORT_ERR_INVALID_ARGUMENT);
    CHECK(lasort_config_set_repetitions(cfg, 3) == LASORT_OK);
    CHECK(lasort_config_set_repetitions(cfg, 2) == LASORT_ERR_INVALID_ARGUMENT);
    CHECK(lasort_config_set_threads(cfg, 0) == LASORT_ERR_INVALID_ARGUMENT);
    CHECK(lasort_config_set_parameters(cfg, nullptr, 2) == LASORT_ERR_INVALID_ARGUMENT);
    lasort_config_destroy(cfg);
    lasort_config_destroy(nullptr);
}

TEST_CASE("experiments through the C API")
{
    lasort_config* cfg = nullptr;
    REQUIRE(lasort_config_create(&cfg) == LASORT_OK);
    const double params[] = {1, 4};
    REQUIRE(lasort_config_set_setting(cfg, "block") == LASORT_OK);
    REQUIRE(lasort_config_set_algorithms(cfg, "displacement") == LASORT_OK);
    REQUIRE(lasort_config_set_n(cfg, 256) == LASORT_OK);
    REQUIRE(lasort_config_set_parameters(cfg, params, 2) == LASORT_OK);
    REQUIRE(lasort_config_set_trials(cfg, 2) == LASORT_OK);
    REQUIRE(lasort_config_set_seed(cfg, 7) == LASORT_OK);
    REQUIRE(lasort_config_set_threads(cfg, 2) == LASORT_OK);

    lasort_results* res = nullptr;
    REQUIRE(lasort_run_experiment(cfg, &res) == LASORT_OK);
    std::size_t count = 0;
    CHECK(lasort_results_count(res, &count) == LASORT_OK);
    CHECK(count == 4);
    std::uint64_t clean = 0, dirty = 0;
    CHECK(lasort_results_comparisons(res, 0, &clean, &dirty) == LASORT_OK);
    CHECK(clean > 0);
    CHECK(lasort_results_comparisons(res, 4, &clean, &dirty) == LASORT_ERR_INVALID_ARGUMENT);

    const auto csv = temp_path(".csv");
    CHECK(lasort_results_write_csv(res, csv.c_str()) == LASORT_OK);
    CHECK(line_count(csv) == 5);
    CHECK(lasort_results_write_csv(res, "/nonexistent-dir/x.csv") == LASORT_ERR_IO);

    const auto plot = temp_path(".plot.csv");
    CHECK(lasort_plotdata(csv.c_str(), plot.c_str()) == LASORT_OK);
    CHECK(line_count(plot) == 5); // header, 2 parameters, 2 reference rows
    CHECK(lasort_plotdata("/nonexistent-dir/in.csv", plot.c_str()) != LASORT_OK);
    std::remove(csv.c_str());
    std::remove(plot.c_str());
    lasort_results_destroy(res);

    // Class count larger than n violates the configuration contract.
    const double too_many[] = {1000};
    REQUIRE(lasort_config_set_setting(cfg, "class") == LASORT_OK);
    REQUIRE(lasort_config_set_parameters(cfg, too_many, 1) == LASORT_OK);
    res = nullptr;
    CHECK(lasort_run_experiment(cfg, &res) != LASORT_OK);
    CHECK(res == nullptr);
    CHECK(std::strlen(lasort_last_error()) > 0);
    lasort_config_destroy(cfg);
}

TEST_CASE("sorting through the C API")
{
    const double keys[] = {30, 10, 20, 50, 40};
    const std::uint32_t perfect[] = {3, 1, 2, 5, 4};
    const std::vector<std::uint32_t> expected{1, 2, 0, 4, 3};
    for (const char* algo : {"dirty_clean", "displacement", "double_hoover", "one_sided_left", "one_sided_right",
                             "quicksort", "mergesort", "natural_merge", "odd_even_straight", "cook_kim"}) {
        std::vector<std::uint32_t> out(5);
        lasort_counts counts{};
        INFO(algo);
        REQUIRE(lasort_sort(algo, keys, 5, perfect, 1, out.data(), &counts) == LASORT_OK);
        CHECK(out == expected);
        CHECK(counts.clean > 0);
    }
    std::vector<std::uint32_t> out(5);
    lasort_counts counts{};
    CHECK(lasort_sort("dirty_clean", keys, 5, nullptr, 1, out.data(), &counts) == LASORT_OK);
    CHECK(out == expected);
    CHECK(lasort_sort("displacement", keys, 5, nullptr, 1, out.data(), &counts) == LASORT_ERR_INVALID_ARGUMENT);
    CHECK(lasort_sort("heapsort", keys, 5, perfect, 1, out.data(), &counts) == LASORT_ERR_INVALID_ARGUMENT);
    const std::uint32_t bad_prediction[] = {0, 1, 2, 3, 4};
    CHECK(lasort_sort("displacement", keys, 5, bad_prediction, 1, out.data(), &counts) != LASORT_OK);
    const double nan_keys[] = {1, std::nan("")};
    CHECK(lasort_sort("dirty_clean", nan_keys, 2, nullptr, 1, out.data(), &counts) != LASORT_OK);
}

TEST_CASE("error profiles through the C API")
{
    const std::uint32_t truth[] = {3, 1, 2};
    const std::uint32_t pred[] = {1, 2, 3};
    lasort_profile* prof = nullptr;
    REQUIRE(lasort_profile_create(truth, pred, 3, &prof) == LASORT_OK);
    std::size_t n = 0;
    CHECK(lasort_profile_size(prof, &n) == LASORT_OK);
    CHECK(n == 3);
    std::uint32_t v[3] = {};
    CHECK(lasort_profile_values(prof, LASORT_ETA_DELTA, v, 3) == LASORT_OK);
    CHECK(std::vector<std::uint32_t>(v, v + 3) == std::vector<std::uint32_t>{2, 1, 1});
    CHECK(lasort_profile_values(prof, LASORT_ETA_LEFT, v, 3) == LASORT_OK);
    CHECK(std::vector<std::uint32_t>(v, v + 3) == std::vector<std::uint32_t>{0, 1, 1});
    CHECK(lasort_profile_values(prof, LASORT_ETA_RIGHT, v, 3) == LASORT_OK);
    CHECK(std::vector<std::uint32_t>(v, v + 3) == std::vector<std::uint32_t>{2, 0, 0});
    CHECK(lasort_profile_values(prof, LASORT_ETA_DIRTY, v, 3) == LASORT_OK);
    CHECK(std::vector<std::uint32_t>(v, v + 3) == std::vector<std::uint32_t>{2, 1, 1});
    std::uint64_t d = 0;
    CHECK(lasort_profile_global_error(prof, &d) == LASORT_OK);
    CHECK(d == 2);
    double s = 0;
    CHECK(lasort_profile_log_sum(prof, LASORT_ETA_DELTA, &s) == LASORT_OK);
    CHECK(s == doctest::Approx(2.0 + 2.0 * std::log2(3.0)));
    CHECK(lasort_profile_values(prof, static_cast<lasort_measure>(9), v, 3) == LASORT_ERR_INVALID_ARGUMENT);
    lasort_profile_destroy(prof);

    const std::uint32_t not_perm[] = {1, 1, 2};
    prof = nullptr;
    CHECK(lasort_profile_create(not_perm, pred, 3, &prof) != LASORT_OK);
    CHECK(prof == nullptr);
}

TEST_CASE("verify through the C API")
{
    lasort_verify_summary summary{};
    CHECK(lasort_verify(32, 1, &summary) == LASORT_OK);
    CHECK(summary.checks > 0);
    CHECK(summary.failures == 0);
    CHECK(lasort_verify(32, 1, nullptr) == LASORT_ERR_INVALID_ARGUMENT);
}
