#include <lasort/harness.hpp>

#include <lasort/baselines.hpp>
#include <lasort/displacement_sort.hpp>
#include <lasort/double_hoover.hpp>
#include <lasort/error_metrics.hpp>
#include <lasort/finger_tree.hpp>

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

namespace lasort {

namespace {

struct AlgorithmName {
    Algorithm algorithm;
    std::string_view tag;
};

constexpr AlgorithmName kAlgorithmNames[] = {
    {Algorithm::dirty_clean, "dirty_clean"},
    {Algorithm::displacement, "displacement"},
    {Algorithm::double_hoover, "double_hoover"},
    {Algorithm::one_sided_left, "one_sided_left"},
    {Algorithm::one_sided_right, "one_sided_right"},
    {Algorithm::quicksort, "quicksort"},
    {Algorithm::mergesort, "mergesort"},
    {Algorithm::natural_merge, "natural_merge"},
    {Algorithm::odd_even_straight, "odd_even_straight"},
    {Algorithm::cook_kim, "cook_kim"},
};

std::optional<BaselineKind> as_baseline(Algorithm a)
{
    switch (a) {
    case Algorithm::quicksort: return BaselineKind::quicksort;
    case Algorithm::mergesort: return BaselineKind::mergesort;
    case Algorithm::natural_merge: return BaselineKind::natural_merge;
    case Algorithm::odd_even_straight: return BaselineKind::odd_even_straight;
    case Algorithm::cook_kim: return BaselineKind::cook_kim;
    default: return std::nullopt;
    }
}

bool is_integral(double x)
{
    return std::isfinite(x) && std::floor(x) == x;
}

std::string format_double(double x)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc())
        throw Error("cannot format number");
    return std::string(buf, ptr);
}

template <class T>
T parse_field(std::string_view s, std::string_view what, std::size_t line)
{
    T value{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw Error("line " + std::to_string(line) + ": bad " + std::string(what) + " '" +
                    std::string(s) + "'");
    return value;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto at = s.find(sep, start);
        out.push_back(s.substr(start, at == std::string_view::npos ? s.npos : at - start));
        if (at == std::string_view::npos)
            return out;
        start = at + 1;
    }
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::uint64_t algorithm_stream(Algorithm a)
{
    return hash_string(to_string(a));
}

} // namespace

std::string_view to_string(Algorithm a)
{
    for (const auto& entry : kAlgorithmNames)
        if (entry.algorithm == a)
            return entry.tag;
    return "?";
}

Algorithm parse_algorithm(std::string_view tag)
{
    for (const auto& entry : kAlgorithmNames)
        if (entry.tag == tag)
            return entry.algorithm;
    throw Error("unknown algorithm '" + std::string(tag) + "'");
}

std::vector<Algorithm> parse_algorithm_list(std::string_view comma_list)
{
    std::vector<Algorithm> out;
    for (auto part : split(comma_list, ',')) {
        part = trim(part);
        if (part.empty())
            continue;
        if (part == "all") {
            const auto& every = all_algorithms();
            out.insert(out.end(), every.begin(), every.end());
            continue;
        }
        out.push_back(parse_algorithm(part));
    }
    if (out.empty())
        throw Error("empty algorithm list");
    return out;
}

const std::vector<Algorithm>& all_algorithms()
{
    static const std::vector<Algorithm> every = [] {
        std::vector<Algorithm> v;
        for (const auto& entry : kAlgorithmNames)
            v.push_back(entry.algorithm);
        return v;
    }();
    return every;
}

bool uses_prediction(Algorithm a)
{
    return a != Algorithm::dirty_clean;
}

VerificationStrategy parse_verification(std::string_view tag)
{
    if (tag == "linear")
        return VerificationStrategy::linear;
    if (tag == "galloping")
        return VerificationStrategy::galloping;
    throw Error("unknown verification strategy '" + std::string(tag) + "'");
}

void ExperimentConfig::validate() const
{
    if (algorithms.empty())
        throw Error("config: no algorithms");
    if (parameters.empty())
        throw Error("config: no parameters");
    if (trials < 1)
        throw Error("config: trials must be at least 1");
    if (repetitions % 2 == 0)
        throw Error("config: repetitions must be odd");
    if (threads < 1)
        throw Error("config: threads must be at least 1");
    if (setting == Setting::ranking) {
        if (ranking_data.empty())
            throw Error("config: the ranking setting needs a data file");
        for (double p : parameters)
            if (!is_integral(p))
                throw Error("config: base year " + format_double(p) + " is not an integer");
        return;
    }
    if (n < 1)
        throw Error("config: n must be at least 1");
    for (double p : parameters) {
        const std::string shown = format_double(p);
        switch (setting) {
        case Setting::class_setting:
            if (!is_integral(p) || p < 1 || p > static_cast<double>(n))
                throw Error("config: class count " + shown + " outside 1..n");
            break;
        case Setting::decay:
            if (!is_integral(p) || p < 0)
                throw Error("config: decay steps " + shown + " must be a non-negative integer");
            break;
        case Setting::block:
            if (!is_integral(p) || p < 1)
                throw Error("config: block size " + shown + " must be a positive integer");
            break;
        case Setting::good_dominating:
        case Setting::bad_dominating:
            if (!(p >= 0.0 && p <= 1.0))
                throw Error("config: damage ratio " + shown + " outside [0, 1]");
            break;
        case Setting::ranking: break;
        }
    }
}

std::uint64_t trial_seed(std::uint64_t master, Setting setting, double parameter, std::size_t trial)
{
    return mix_seed(master, hash_string(to_string(setting)), std::bit_cast<std::uint64_t>(parameter),
                    trial);
}

Instance make_trial_instance(const ExperimentConfig& config, double parameter, std::uint64_t seed)
{
    const auto whole = static_cast<std::size_t>(parameter);
    switch (config.setting) {
    case Setting::class_setting: return gen_class(config.n, whole, seed);
    case Setting::decay: return gen_decay(config.n, whole, seed);
    case Setting::block: return gen_block_permutation(config.n, whole, seed);
    case Setting::good_dominating:
        return gen_dirty_damaged(config.n, parameter, DamageMode::good_dominating, seed);
    case Setting::bad_dominating:
        return gen_dirty_damaged(config.n, parameter, DamageMode::bad_dominating, seed);
    case Setting::ranking: {
        Instance inst = ingest_ranking_csv(config.ranking_data, static_cast<int>(parameter),
                                           config.target_year);
        inst.seed = seed;
        return inst;
    }
    }
    throw Error("unknown setting");
}

PositionalPrediction prediction_for(const Instance& instance, ComparisonLedger& ledger)
{
    if (instance.prediction)
        return *instance.prediction;
    if (!instance.oracle)
        throw Error("instance has neither a prediction nor an oracle");
    return kwiksort_fas(instance.size(), *instance.oracle, mix_seed(instance.seed, 0x4b77696b), ledger);
}

ErrorSums instance_error_sums(const Instance& instance, const PositionalPrediction& p_hat)
{
    ErrorSums sums;
    sums.eta_delta = sum_log2_plus2(displacement_errors(instance.truth, p_hat));
    sums.eta_minlr = sum_log2_plus2(min_one_sided(one_sided_errors(instance.truth, p_hat)));
    if (instance.oracle && instance.oracle->deterministic()) {
        sums.eta_dirty = sum_log2_plus2(dirty_errors(*instance.items, *instance.oracle));
    } else {
        PredictionOrderOracle follow(p_hat);
        sums.eta_dirty = sum_log2_plus2(dirty_errors(*instance.items, follow));
    }
    return sums;
}

namespace {

// Everything the algorithms of one (parameter, trial) share.
struct TrialContext {
    Instance instance;
    PositionalPrediction p_hat;
    /// Dirty queries spent deriving p_hat (zero when the instance had one).
    std::uint64_t prediction_dirty = 0;
    ErrorSums sums;
};

TrialContext make_context(const ExperimentConfig& config, double parameter, std::size_t trial)
{
    TrialContext ctx;
    ctx.instance = make_trial_instance(config, parameter,
                                       trial_seed(config.seed, config.setting, parameter, trial));
    ComparisonLedger scratch;
    ctx.p_hat = prediction_for(ctx.instance, scratch);
    ctx.prediction_dirty = scratch.dirty_total;
    ctx.sums = instance_error_sums(ctx.instance, ctx.p_hat);
    return ctx;
}

ExperimentRecord run_with_context(Algorithm algorithm, const ExperimentConfig& config,
                                  const TrialContext& ctx, std::size_t trial)
{
    const Instance& inst = ctx.instance;
    const ItemArray& items = *inst.items;
    ComparisonLedger ledger;
    SeededRng rng(mix_seed(inst.seed, algorithm_stream(algorithm)));

    const auto start = std::chrono::steady_clock::now();
    std::vector<ItemId> order;
    if (algorithm == Algorithm::dirty_clean) {
        DirtyCleanOptions options;
        options.insert.strategy = config.verification;
        options.insert.repetitions = config.repetitions;
        OraclePtr oracle = inst.oracle;
        if (!oracle)
            oracle = std::make_shared<PredictionOrderOracle>(ctx.p_hat);
        order = dirty_clean_sort(items, *oracle, rng, ledger, options);
    } else {
        if (!inst.prediction)
            ledger.dirty_total += ctx.prediction_dirty;
        switch (algorithm) {
        case Algorithm::displacement: order = displacement_sort(items, ctx.p_hat, ledger); break;
        case Algorithm::double_hoover: order = double_hoover_sort(items, ctx.p_hat, ledger).order; break;
        case Algorithm::one_sided_left:
            order = one_sided_insertion_sort(items, ctx.p_hat, Side::left, ledger);
            break;
        case Algorithm::one_sided_right:
            order = one_sided_insertion_sort(items, ctx.p_hat, Side::right, ledger);
            break;
        default: {
            const auto input = bucket_sort_by_prediction(ctx.p_hat);
            order = run_baseline(*as_baseline(algorithm), items, input, rng, ledger);
        }
        }
    }
    const auto elapsed = std::chrono::steady_clock::now() - start;

    ExperimentRecord rec;
    rec.algorithm = std::string(to_string(algorithm));
    rec.setting = std::string(to_string(config.setting));
    rec.n = items.size();
    rec.parameter = inst.parameter;
    rec.trial = trial;
    rec.seed = inst.seed;
    rec.clean_comparisons = ledger.clean_total;
    rec.dirty_comparisons = ledger.dirty_total;
    rec.bookkeeping_dirty = ledger.bookkeeping_dirty;
    if (config.record_time)
        rec.wall_time_ns = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(elapsed).count());
    rec.sum_log_eta_delta = ctx.sums.eta_delta;
    rec.sum_log_eta_minlr = ctx.sums.eta_minlr;
    rec.sum_log_eta_dirty = ctx.sums.eta_dirty;
    rec.sorted_ok = is_permutation_of(items.size(), order) && verify_sorted(items, order);
    if (!rec.sorted_ok)
        throw Error(rec.algorithm + " produced unsorted output on setting " + rec.setting +
                    ", parameter " + format_double(rec.parameter) + ", trial " +
                    std::to_string(trial) + ", instance seed " + std::to_string(inst.seed));
    return rec;
}

} // namespace

ExperimentRecord run_trial(Algorithm algorithm, const ExperimentConfig& config,
                           const Instance& instance, std::size_t trial)
{
    TrialContext ctx;
    ctx.instance = instance;
    ComparisonLedger scratch;
    ctx.p_hat = prediction_for(instance, scratch);
    ctx.prediction_dirty = scratch.dirty_total;
    ctx.sums = instance_error_sums(instance, ctx.p_hat);
    return run_with_context(algorithm, config, ctx, trial);
}

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config)
{
    config.validate();
    const std::size_t jobs = config.parameters.size() * config.trials;
    const std::size_t algos = config.algorithms.size();
    // slot (a, p, t) -> index (a * |P| + p) * trials + t: the output order.
    std::vector<ExperimentRecord> records(jobs * algos);

    std::atomic<std::size_t> next{0};
    std::mutex failure_lock;
    std::string failure;
    auto worker = [&] {
        for (;;) {
            const std::size_t job = next.fetch_add(1);
            if (job >= jobs)
                return;
            const std::size_t p = job / config.trials, t = job % config.trials;
            try {
                const TrialContext ctx = make_context(config, config.parameters[p], t);
                for (std::size_t a = 0; a < algos; ++a)
                    records[(a * config.parameters.size() + p) * config.trials + t] =
                        run_with_context(config.algorithms[a], config, ctx, t);
            } catch (const std::exception& e) {
                std::lock_guard lock(failure_lock);
                if (failure.empty())
                    failure = e.what();
                next.store(jobs);
                return;
            }
        }
    };

    const unsigned threads = std::min<std::size_t>(config.threads, std::max<std::size_t>(jobs, 1));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < threads; ++k)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }
    if (!failure.empty())
        throw Error(failure);
    return records;
}

// ---------------------------------------------------------------------------
// CSV

std::string to_csv(const std::vector<ExperimentRecord>& records)
{
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const auto& r : records) {
        out << r.algorithm << ',' << r.setting << ',' << r.n << ',' << format_double(r.parameter) << ','
            << r.trial << ',' << r.seed << ',' << r.clean_comparisons << ',' << r.dirty_comparisons
            << ',' << r.bookkeeping_dirty << ',' << r.wall_time_ns << ','
            << format_double(r.sum_log_eta_delta) << ',' << format_double(r.sum_log_eta_minlr) << ','
            << format_double(r.sum_log_eta_dirty) << ',' << (r.sorted_ok ? "true" : "false") << '\n';
    }
    return out.str();
}

void write_csv(const std::vector<ExperimentRecord>& records, const std::filesystem::path& path)
{
    if (records.empty())
        throw Error("write_csv: no records to write");
    const std::string text = to_csv(records);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error("write_csv: cannot open '" + path.string() + "' for writing");
    out << text;
    out.close();
    if (!out)
        throw Error("write_csv: failed writing '" + path.string() + "'");
}

std::vector<ExperimentRecord> parse_csv(std::string_view text)
{
    std::vector<ExperimentRecord> out;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = trim(text.substr(0, eol));
        text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
        ++line_no;
        if (line.empty())
            continue;
        if (!header_seen) {
            if (line != kCsvHeader)
                throw Error("line 1: unexpected CSV header");
            header_seen = true;
            continue;
        }
        const auto f = split(line, ',');
        if (f.size() != 14)
            throw Error("line " + std::to_string(line_no) + ": expected 14 fields, got " +
                        std::to_string(f.size()));
        ExperimentRecord r;
        r.algorithm = std::string(f[0]);
        r.setting = std::string(f[1]);
        r.n = parse_field<std::size_t>(f[2], "n", line_no);
        r.parameter = parse_field<double>(f[3], "parameter", line_no);
        r.trial = parse_field<std::size_t>(f[4], "trial", line_no);
        r.seed = parse_field<std::uint64_t>(f[5], "seed", line_no);
        r.clean_comparisons = parse_field<std::uint64_t>(f[6], "clean_comparisons", line_no);
        r.dirty_comparisons = parse_field<std::uint64_t>(f[7], "dirty_comparisons", line_no);
        r.bookkeeping_dirty = parse_field<std::uint64_t>(f[8], "bookkeeping_dirty", line_no);
        r.wall_time_ns = parse_field<std::uint64_t>(f[9], "wall_time_ns", line_no);
        r.sum_log_eta_delta = parse_field<double>(f[10], "sum_log_eta_delta", line_no);
        r.sum_log_eta_minlr = parse_field<double>(f[11], "sum_log_eta_minlr", line_no);
        r.sum_log_eta_dirty = parse_field<double>(f[12], "sum_log_eta_dirty", line_no);
        if (f[13] == "true")
            r.sorted_ok = true;
        else if (f[13] == "false")
            r.sorted_ok = false;
        else
            throw Error("line " + std::to_string(line_no) + ": bad sorted_ok '" + std::string(f[13]) + "'");
        out.push_back(std::move(r));
    }
    if (!header_seen)
        throw Error("empty CSV");
    return out;
}

std::vector<ExperimentRecord> read_csv(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str());
}

// ---------------------------------------------------------------------------
// Summaries

std::vector<SummaryRow> summarize(const std::vector<ExperimentRecord>& records)
{
    if (records.empty())
        throw Error("summarize: no records");
    std::vector<SummaryRow> rows;
    std::vector<std::vector<double>> values;
    for (const auto& r : records) {
        if (r.n != records.front().n || r.setting != records.front().setting)
            throw Error("summarize: records mix settings or sizes");
        auto it = std::find_if(rows.begin(), rows.end(), [&](const SummaryRow& s) {
            return s.algorithm == r.algorithm && s.parameter == r.parameter;
        });
        if (it == rows.end()) {
            rows.push_back({r.algorithm, r.setting, r.n, r.parameter, 0, 0.0, std::nullopt});
            values.emplace_back();
            it = rows.end() - 1;
        }
        values[static_cast<std::size_t>(it - rows.begin())].push_back(
            static_cast<double>(r.clean_comparisons));
    }
    for (std::size_t g = 0; g < rows.size(); ++g) {
        const auto& v = values[g];
        const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
        rows[g].count = v.size();
        rows[g].mean = mean;
        if (v.size() > 1) {
            double ss = 0.0;
            for (double x : v)
                ss += (x - mean) * (x - mean);
            rows[g].stddev = std::sqrt(ss / static_cast<double>(v.size() - 1));
        }
    }
    return rows;
}

std::vector<SummaryRow> plotdata(const std::vector<ExperimentRecord>& records)
{
    if (records.empty())
        throw Error("plotdata: no records");
    std::vector<std::pair<std::string, std::size_t>> groups;
    for (const auto& r : records)
        if (std::find(groups.begin(), groups.end(), std::pair(r.setting, r.n)) == groups.end())
            groups.emplace_back(r.setting, r.n);

    std::vector<SummaryRow> out;
    for (const auto& [setting, n] : groups) {
        std::vector<ExperimentRecord> subset;
        std::vector<double> params;
        for (const auto& r : records)
            if (r.setting == setting && r.n == n) {
                subset.push_back(r);
                if (std::find(params.begin(), params.end(), r.parameter) == params.end())
                    params.push_back(r.parameter);
            }
        auto rows = summarize(subset);
        out.insert(out.end(), rows.begin(), rows.end());
        const double nd = static_cast<double>(n);
        const double reference = n > 1 ? nd * std::log2(nd) : 0.0;
        for (double p : params)
            out.push_back({"n_log2_n", setting, n, p, 1, reference, 0.0});
    }
    return out;
}

std::string plotdata_csv(const std::vector<SummaryRow>& rows)
{
    std::ostringstream out;
    out << "setting,n,algorithm,parameter,trials,mean_clean,std_clean\n";
    for (const auto& r : rows) {
        out << r.setting << ',' << r.n << ',' << r.algorithm << ',' << format_double(r.parameter) << ','
            << r.count << ',' << format_double(r.mean) << ',';
        if (r.stddev)
            out << format_double(*r.stddev);
        out << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Verification sweep

VerifyReport run_verify_suite(std::size_t max_n, std::uint64_t seed)
{
    if (max_n < 1)
        throw Error("verify: n must be at least 1");
    VerifyReport report;
    auto check = [&](bool ok, const std::string& what) {
        ++report.checks;
        if (!ok && report.failures.size() < 50)
            report.failures.push_back(what);
    };

    std::vector<std::size_t> sizes;
    for (std::size_t n = 1; n <= std::min<std::size_t>(max_n, 16); ++n)
        sizes.push_back(n);
    for (std::size_t n = 32; n < max_n; n *= 2)
        sizes.push_back(n - 1);
    if (max_n > 16)
        sizes.push_back(max_n);

    std::size_t instance_no = 0;
    for (std::size_t n : sizes) {
        std::vector<Instance> instances;
        const auto s = [&](std::uint64_t tag) { return mix_seed(seed, n, tag); };
        instances.push_back(gen_block_permutation(n, 1, s(1)));
        instances.push_back(gen_block_permutation(n, std::max<std::size_t>(1, n / 4), s(2)));
        instances.push_back(gen_class(n, std::max<std::size_t>(1, n / 8), s(3)));
        instances.push_back(gen_class(n, 1, s(4)));
        instances.push_back(gen_decay(n, 4 * n, s(5)));
        instances.push_back(gen_dirty_damaged(n, 0.3, DamageMode::good_dominating, s(6)));
        instances.push_back(gen_dirty_damaged(n, 0.3, DamageMode::bad_dominating, s(7)));

        for (const Instance& inst : instances) {
            ++instance_no;
            const ItemArray& items = *inst.items;
            ComparisonLedger scratch;
            const PositionalPrediction p_hat = prediction_for(inst, scratch);
            const std::string where = std::string(to_string(inst.setting)) + " n=" +
                                      std::to_string(n) + " seed=" + std::to_string(inst.seed);
            auto sorted = [&](const std::vector<ItemId>& order) {
                return is_permutation_of(n, order) && verify_sorted(items, order);
            };

            for (Algorithm a : all_algorithms()) {
                if (a == Algorithm::dirty_clean)
                    continue;
                ComparisonLedger ledger;
                SeededRng rng(mix_seed(inst.seed, algorithm_stream(a)));
                std::vector<ItemId> order;
                switch (a) {
                case Algorithm::displacement: {
                    DisplacementOptions opts;
                    bool balanced = true;
                    opts.on_insert = [&](const FingerInsertStats&, const FingerTree& tree) {
                        balanced = balanced && tree.check_invariants();
                    };
                    order = displacement_sort(items, p_hat, ledger, opts);
                    check(balanced, "finger tree invariant broken, " + where);
                    break;
                }
                case Algorithm::double_hoover: {
                    auto result = double_hoover_sort(items, p_hat, ledger);
                    const auto errs = min_one_sided(one_sided_errors(inst.truth, p_hat));
                    bool audits_ok = true;
                    for (ItemId i = 0; i < n; ++i) {
                        const auto& audit = result.audits[i];
                        audits_ok = audits_ok && audit.interval_within_prefix && audit.landed_inside &&
                                    audit.round <= round_strength_ceiling(errs[i] + 2);
                    }
                    check(audits_ok, "double-hoover audit violated, " + where);
                    order = std::move(result.order);
                    break;
                }
                case Algorithm::one_sided_left:
                    order = one_sided_insertion_sort(items, p_hat, Side::left, ledger);
                    break;
                case Algorithm::one_sided_right:
                    order = one_sided_insertion_sort(items, p_hat, Side::right, ledger);
                    break;
                default:
                    order = run_baseline(*as_baseline(a), items, bucket_sort_by_prediction(p_hat), rng,
                                         ledger);
                }
                check(sorted(order), std::string(to_string(a)) + " unsorted, " + where);
            }

            // Dirty-clean under several oracles and both verification modes.
            std::vector<OraclePtr> oracles;
            if (inst.oracle)
                oracles.push_back(inst.oracle);
            oracles.push_back(std::make_shared<ExactOracle>(items));
            oracles.push_back(std::make_shared<InvertedOracle>(items));
            oracles.push_back(std::make_shared<PredictionOrderOracle>(p_hat));
            oracles.push_back(gen_probabilistic_oracle(items, 0.3, s(100 + instance_no)));
            for (const auto& oracle : oracles) {
                for (auto strategy : {VerificationStrategy::linear, VerificationStrategy::galloping}) {
                    ComparisonLedger ledger;
                    SeededRng rng(mix_seed(inst.seed, algorithm_stream(Algorithm::dirty_clean)));
                    DirtyCleanOptions opts;
                    opts.insert.strategy = strategy;
                    opts.insert.repetitions = oracle->deterministic() ? 1 : 3;
                    bool bst_ok = true;
                    opts.on_insert = [&](ItemId, const SearchTrace&, const SearchTree& tree) {
                        if (n <= 64)
                            bst_ok = bst_ok && verify_sorted(items, tree.inorder());
                    };
                    const auto order = dirty_clean_sort(items, *oracle, rng, ledger, opts);
                    check(bst_ok, "search tree out of order, " + where);
                    check(sorted(order), "dirty_clean unsorted, " + where);
                }
            }

            // Error identities.
            if (inst.oracle) {
                const auto eta = dirty_errors(items, *inst.oracle);
                const std::uint64_t total = std::accumulate(eta.begin(), eta.end(), std::uint64_t{0});
                check(total == 2 * global_error_D(items, *inst.oracle), "2D != sum eta, " + where);
            }
            const auto delta = displacement_errors(inst.truth, p_hat);
            const std::uint64_t delta_sum = std::accumulate(delta.begin(), delta.end(), std::uint64_t{0});
            check(2 * global_error_D(inst.truth, p_hat) >= delta_sum, "D < sum eta_delta / 2, " + where);
        }
    }
    return report;
}

} // namespace lasort
