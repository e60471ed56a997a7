// Command-line front end: bench, verify, metrics, plotdata.

#include <lasort/lasort.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(lasort_status status)
{
    if (status != LASORT_OK)
        throw CliError(std::string(lasort_status_string(status)) + ": " + lasort_last_error());
}

template <class T, void (*Destroy)(T*)>
struct Deleter {
    void operator()(T* p) const { Destroy(p); }
};

using ConfigPtr = std::unique_ptr<lasort_config, Deleter<lasort_config, lasort_config_destroy>>;
using ResultsPtr = std::unique_ptr<lasort_results, Deleter<lasort_results, lasort_results_destroy>>;
using ProfilePtr = std::unique_ptr<lasort_profile, Deleter<lasort_profile, lasort_profile_destroy>>;

struct BenchArgs {
    std::string setting = "block";
    std::string algos = "dirty_clean,displacement,double_hoover";
    std::size_t n = 1024;
    std::vector<double> params{1};
    std::size_t trials = 30;
    std::uint64_t seed = 1;
    std::string verify = "galloping";
    unsigned reps = 1;
    std::string out;
    std::string data;
    int target_year = 0;
    bool timing = false;
    unsigned threads = 1;
};

int run_bench(const BenchArgs& a)
{
    lasort_config* raw = nullptr;
    check(lasort_config_create(&raw));
    ConfigPtr config(raw);
    check(lasort_config_set_setting(config.get(), a.setting.c_str()));
    check(lasort_config_set_algorithms(config.get(), a.algos.c_str()));
    check(lasort_config_set_n(config.get(), a.n));
    check(lasort_config_set_parameters(config.get(), a.params.data(), a.params.size()));
    check(lasort_config_set_trials(config.get(), a.trials));
    check(lasort_config_set_seed(config.get(), a.seed));
    check(lasort_config_set_verification(config.get(), a.verify.c_str()));
    check(lasort_config_set_repetitions(config.get(), a.reps));
    check(lasort_config_set_timing(config.get(), a.timing ? 1 : 0));
    check(lasort_config_set_threads(config.get(), a.threads));
    if (a.setting == "ranking") {
        if (a.data.empty())
            throw CliError("the ranking setting needs --data");
        check(lasort_config_set_ranking_data(config.get(), a.data.c_str(), a.target_year));
    }

    lasort_results* results_raw = nullptr;
    check(lasort_run_experiment(config.get(), &results_raw));
    ResultsPtr results(results_raw);
    std::size_t count = 0;
    check(lasort_results_count(results.get(), &count));
    check(lasort_results_write_csv(results.get(), a.out.c_str()));
    std::cerr << "wrote " << count << " records to " << a.out << '\n';
    return 0;
}

int run_verify(std::size_t n, std::uint64_t seed)
{
    lasort_verify_summary summary{};
    check(lasort_verify(n, seed, &summary));
    std::cout << "checks: " << summary.checks << "\nfailures: " << summary.failures << '\n';
    if (summary.failures != 0) {
        std::cerr << lasort_last_error();
        return 1;
    }
    return 0;
}

// One integer per row; the last comma-separated field counts, and a first
// line that does not parse as a number is taken as a header.
std::vector<std::uint32_t> read_column(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw CliError("cannot open '" + path + "'");
    std::vector<std::uint32_t> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto comma = line.rfind(',');
        const std::string field = comma == std::string::npos ? line : line.substr(comma + 1);
        try {
            std::size_t used = 0;
            const unsigned long v = std::stoul(field, &used);
            if (used != field.size())
                throw std::invalid_argument(field);
            values.push_back(static_cast<std::uint32_t>(v));
        } catch (const std::exception&) {
            if (line_no == 1)
                continue;
            throw CliError(path + ":" + std::to_string(line_no) + ": not an integer: '" + field + "'");
        }
    }
    return values;
}

int run_metrics(const std::string& truth_path, const std::string& prediction_path)
{
    const auto truth = read_column(truth_path);
    const auto prediction = read_column(prediction_path);
    if (truth.size() != prediction.size())
        throw CliError("truth has " + std::to_string(truth.size()) + " entries, prediction " +
                       std::to_string(prediction.size()));
    lasort_profile* raw = nullptr;
    check(lasort_profile_create(truth.data(), prediction.data(), truth.size(), &raw));
    ProfilePtr profile(raw);

    nlohmann::ordered_json out;
    out["n"] = truth.size();
    const std::pair<const char*, lasort_measure> measures[] = {
        {"eta_delta", LASORT_ETA_DELTA},
        {"eta_left", LASORT_ETA_LEFT},
        {"eta_right", LASORT_ETA_RIGHT},
        {"eta_dirty", LASORT_ETA_DIRTY},
    };
    for (const auto& [name, measure] : measures) {
        std::vector<std::uint32_t> values(truth.size());
        check(lasort_profile_values(profile.get(), measure, values.data(), values.size()));
        double log_sum = 0.0;
        check(lasort_profile_log_sum(profile.get(), measure, &log_sum));
        std::uint64_t total = 0;
        for (auto v : values)
            total += v;
        out[name] = {{"values", values}, {"sum", total}, {"sum_log2_plus2", log_sum}};
    }
    std::uint64_t d = 0;
    check(lasort_profile_global_error(profile.get(), &d));
    out["d_global"] = d;
    std::cout << out.dump(2) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Learning-augmented sorting: benchmarks, checks and error measures"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(lasort_version()));

    BenchArgs bench;
    auto* b = app.add_subcommand("bench", "Run a seeded experiment and write a CSV of records");
    b->add_option("--setting", bench.setting, "class|decay|block|good-dom|bad-dom|ranking")
        ->check(CLI::IsMember({"class", "decay", "block", "good-dom", "bad-dom", "ranking"}));
    b->add_option("--algos", bench.algos, "Comma list of algorithms, or 'all'");
    b->add_option("--n", bench.n, "Number of items")->check(CLI::PositiveNumber);
    b->add_option("--params", bench.params, "Comma list of setting parameters")->delimiter(',');
    b->add_option("--trials", bench.trials, "Trials per parameter")->check(CLI::PositiveNumber);
    b->add_option("--seed", bench.seed, "Master seed");
    b->add_option("--verify", bench.verify, "Verification strategy")
        ->check(CLI::IsMember({"linear", "galloping"}));
    b->add_option("--reps", bench.reps, "Odd number of draws per dirty comparison");
    b->add_option("--out", bench.out, "Output CSV path")->required();
    b->add_option("--data", bench.data, "Ranking CSV (ranking setting)");
    b->add_option("--target-year", bench.target_year, "Year to predict (ranking setting)");
    b->add_flag("--timing", bench.timing, "Record wall time per run");
    b->add_option("--threads", bench.threads, "Worker threads")->check(CLI::PositiveNumber);

    std::size_t verify_n = 256;
    std::uint64_t verify_seed = 1;
    auto* v = app.add_subcommand("verify", "Run the correctness sweep");
    v->add_option("--n", verify_n, "Largest instance size")->check(CLI::PositiveNumber);
    v->add_option("--seed", verify_seed, "Seed");

    std::string truth_path, prediction_path;
    auto* m = app.add_subcommand("metrics", "Print the error profile of a prediction");
    m->add_option("--truth", truth_path, "CSV of true ranks")->required()->check(CLI::ExistingFile);
    m->add_option("--prediction", prediction_path, "CSV of predicted positions")
        ->required()
        ->check(CLI::ExistingFile);

    std::string plot_in, plot_out;
    auto* p = app.add_subcommand("plotdata", "Summarize a results CSV for plotting");
    p->add_option("--in", plot_in, "Results CSV")->required()->check(CLI::ExistingFile);
    p->add_option("--out", plot_out, "Summary CSV")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*b)
            return run_bench(bench);
        if (*v)
            return run_verify(verify_n, verify_seed);
        if (*m)
            return run_metrics(truth_path, prediction_path);
        if (*p) {
            check(lasort_plotdata(plot_in.c_str(), plot_out.c_str()));
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
