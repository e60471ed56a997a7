#include <lasort/generators.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace lasort {

namespace {

// Stream tags keep the draws of different generator stages independent.
enum : std::uint64_t {
    kKeysStream = 1,
    kPredictionStream = 2,
    kDamageStream = 3,
    kCoinStream = 4,
};

Instance make_instance(ItemArray items, Setting setting, double parameter, std::uint64_t seed)
{
    Instance inst;
    auto shared = std::make_shared<ItemArray>(std::move(items));
    inst.truth = rank_permutation(*shared);
    inst.items = std::move(shared);
    inst.setting = setting;
    inst.parameter = parameter;
    inst.seed = seed;
    return inst;
}

} // namespace

std::string_view to_string(Setting s)
{
    switch (s) {
    case Setting::class_setting: return "class";
    case Setting::decay: return "decay";
    case Setting::block: return "block";
    case Setting::good_dominating: return "good-dom";
    case Setting::bad_dominating: return "bad-dom";
    case Setting::ranking: return "ranking";
    }
    return "?";
}

Setting parse_setting(std::string_view tag)
{
    for (auto s : {Setting::class_setting, Setting::decay, Setting::block, Setting::good_dominating,
                   Setting::bad_dominating, Setting::ranking})
        if (to_string(s) == tag)
            return s;
    throw Error("unknown setting '" + std::string(tag) + "'");
}

bool is_dirty_setting(Setting s)
{
    return s == Setting::good_dominating || s == Setting::bad_dominating;
}

ItemArray random_keys(std::size_t n, SeededRng& rng)
{
    std::vector<double> keys(n);
    std::iota(keys.begin(), keys.end(), 1.0);
    rng.shuffle(keys);
    return ItemArray(std::move(keys));
}

Instance gen_class(std::size_t n, std::size_t classes, std::uint64_t seed)
{
    if (classes < 1 || classes > n)
        throw Error("gen_class: need 1 <= classes <= n");
    SeededRng root(seed);
    SeededRng key_rng = root.split(kKeysStream);
    SeededRng rng = root.split(kPredictionStream);
    Instance inst = make_instance(random_keys(n, key_rng), Setting::class_setting,
                                  static_cast<double>(classes), seed);

    // classes - 1 distinct thresholds from 1..n-1 (partial Fisher-Yates).
    std::vector<std::uint32_t> pool(n - 1);
    std::iota(pool.begin(), pool.end(), 1u);
    for (std::size_t k = 0; k + 1 < classes; ++k)
        std::swap(pool[k], pool[k + rng.uniform(pool.size() - k)]);
    std::vector<std::uint32_t> cuts(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(classes - 1));
    std::sort(cuts.begin(), cuts.end());
    cuts.insert(cuts.begin(), 0);
    cuts.push_back(static_cast<std::uint32_t>(n));

    std::vector<std::uint32_t> p_hat(n);
    const auto sorted = inst.truth.inverse();
    for (std::size_t k = 1; k < cuts.size(); ++k) {
        const std::uint32_t lo = cuts[k - 1], hi = cuts[k];
        for (std::uint32_t r = lo + 1; r <= hi; ++r)
            p_hat[sorted[r - 1]] = lo + 1 + static_cast<std::uint32_t>(rng.uniform(hi - lo));
    }
    inst.prediction = PositionalPrediction(std::move(p_hat));
    inst.oracle = std::make_shared<PredictionOrderOracle>(*inst.prediction);
    return inst;
}

Instance gen_decay(std::size_t n, std::size_t steps, std::uint64_t seed)
{
    if (n == 0)
        throw Error("gen_decay: n must be positive");
    SeededRng root(seed);
    SeededRng key_rng = root.split(kKeysStream);
    SeededRng rng = root.split(kPredictionStream);
    Instance inst = make_instance(random_keys(n, key_rng), Setting::decay,
                                  static_cast<double>(steps), seed);
    std::vector<std::uint32_t> p_hat(inst.truth.ranks().begin(), inst.truth.ranks().end());
    const auto top = static_cast<std::uint32_t>(n);
    for (std::size_t s = 0; s < steps; ++s) {
        const auto i = rng.uniform(n);
        bool up = rng.uniform(2) == 1;
        if (up && p_hat[i] == top)
            up = false;
        else if (!up && p_hat[i] == 1)
            up = true;
        if (up && p_hat[i] < top)
            ++p_hat[i];
        else if (!up && p_hat[i] > 1)
            --p_hat[i];
    }
    inst.prediction = PositionalPrediction(std::move(p_hat));
    inst.oracle = std::make_shared<PredictionOrderOracle>(*inst.prediction);
    return inst;
}

Instance gen_block_permutation(std::size_t n, std::size_t block, std::uint64_t seed)
{
    if (block < 1)
        throw Error("gen_block_permutation: block size must be at least 1");
    SeededRng rng = SeededRng(seed).split(kKeysStream);
    std::vector<double> keys(n);
    for (std::size_t start = 0; start < n; start += block) {
        const std::size_t end = std::min(n, start + block);
        std::vector<double> ranks(end - start);
        std::iota(ranks.begin(), ranks.end(), static_cast<double>(start + 1));
        rng.shuffle(ranks);
        std::copy(ranks.begin(), ranks.end(), keys.begin() + static_cast<std::ptrdiff_t>(start));
    }
    Instance inst = make_instance(ItemArray(std::move(keys)), Setting::block,
                                  static_cast<double>(block), seed);
    inst.prediction = PositionalPrediction::from(Permutation::identity(n));
    inst.oracle = std::make_shared<PredictionOrderOracle>(*inst.prediction);
    return inst;
}

Instance gen_dirty_damaged(std::size_t n, double ratio, DamageMode mode, std::uint64_t seed)
{
    if (!(ratio >= 0.0 && ratio <= 1.0))
        throw Error("gen_dirty_damaged: ratio must lie in [0, 1]");
    SeededRng root(seed);
    SeededRng key_rng = root.split(kKeysStream);
    SeededRng damage_rng = root.split(kDamageStream);
    Instance inst = make_instance(random_keys(n, key_rng),
                                  mode == DamageMode::good_dominating ? Setting::good_dominating
                                                                      : Setting::bad_dominating,
                                  ratio, seed);
    const auto count = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(n)));
    std::vector<ItemId> ids(n);
    std::iota(ids.begin(), ids.end(), 0u);
    damage_rng.shuffle(ids);
    std::vector<bool> damaged(n, false);
    for (std::size_t k = 0; k < count; ++k)
        damaged[ids[k]] = true;
    inst.oracle = std::make_shared<DamagedOracle>(*inst.items, std::move(damaged), mode,
                                                  mix_seed(seed, kCoinStream));
    return inst;
}

std::shared_ptr<ProbabilisticOracle> gen_probabilistic_oracle(const ItemArray& items, double flip,
                                                              std::uint64_t seed)
{
    if (!(flip >= 0.0 && flip <= 1.0))
        throw Error("gen_probabilistic_oracle: flip probability outside [0, 1]");
    return std::make_shared<ProbabilisticOracle>(items, flip, seed);
}

std::shared_ptr<ProbabilisticOracle> gen_probabilistic_oracle(const ItemArray& items,
                                                              ProbabilisticOracle::FlipFn flip,
                                                              std::uint64_t seed)
{
    return std::make_shared<ProbabilisticOracle>(items, std::move(flip), seed);
}

PositionalPrediction kwiksort_fas(std::size_t n, DirtyOracle& oracle, std::uint64_t seed,
                                  ComparisonLedger& ledger)
{
    if (oracle.size() != n)
        throw Error("kwiksort_fas: oracle and n differ");
    if (!oracle.deterministic())
        throw Error("kwiksort_fas: needs a deterministic oracle");
    SeededRng rng(seed);
    std::vector<ItemId> v(n);
    std::iota(v.begin(), v.end(), 0u);
    std::vector<ItemId> before, after;
    std::vector<std::pair<std::size_t, std::size_t>> todo{{0, n}};
    while (!todo.empty()) {
        auto [lo, hi] = todo.back();
        todo.pop_back();
        if (hi - lo < 2)
            continue;
        const std::size_t p = lo + rng.uniform(hi - lo);
        const ItemId pivot = v[p];
        before.clear();
        after.clear();
        for (std::size_t k = lo; k < hi; ++k) {
            if (k == p)
                continue;
            ledger.add_dirty();
            (oracle.query(v[k], pivot) ? before : after).push_back(v[k]);
        }
        auto it = v.begin() + static_cast<std::ptrdiff_t>(lo);
        it = std::copy(before.begin(), before.end(), it);
        *it++ = pivot;
        std::copy(after.begin(), after.end(), it);
        const std::size_t mid = lo + before.size();
        todo.emplace_back(mid + 1, hi);
        todo.emplace_back(lo, mid);
    }
    std::vector<std::uint32_t> p_hat(n);
    for (std::size_t r = 0; r < n; ++r)
        p_hat[v[r]] = static_cast<std::uint32_t>(r + 1);
    return PositionalPrediction(std::move(p_hat));
}

// ---------------------------------------------------------------------------

namespace {

std::string trim(std::string s)
{
    const auto ws = " \t\r\n";
    s.erase(0, s.find_first_not_of(ws));
    s.erase(s.find_last_not_of(ws) + 1);
    return s;
}

template <class T>
bool parse_number(const std::string& s, T& out)
{
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

} // namespace

std::vector<RankingRow> read_ranking_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open ranking file '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line) || trim(line) != "entity,year,rank")
        throw Error(path.string() + ":1: expected header 'entity,year,rank'");

    std::vector<RankingRow> rows;
    std::set<std::pair<std::string, int>> seen;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty())
            continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        for (std::string f; std::getline(ss, f, ',');)
            fields.push_back(trim(f));
        const std::string where = path.string() + ":" + std::to_string(lineno) + ": ";
        RankingRow row;
        if (fields.size() != 3 || fields[0].empty())
            throw Error(where + "malformed row '" + line + "'");
        row.entity = fields[0];
        if (!parse_number(fields[1], row.year))
            throw Error(where + "bad year '" + fields[1] + "'");
        if (!parse_number(fields[2], row.rank) || row.rank == 0)
            throw Error(where + "bad rank '" + fields[2] + "'");
        if (!seen.emplace(row.entity, row.year).second)
            throw Error(where + "duplicate entry for (" + row.entity + ", " +
                        std::to_string(row.year) + ")");
        rows.push_back(std::move(row));
    }

    std::map<int, std::vector<std::uint32_t>> by_year;
    for (const auto& r : rows)
        by_year[r.year].push_back(r.rank);
    for (auto& [year, ranks] : by_year) {
        std::sort(ranks.begin(), ranks.end());
        for (std::size_t k = 0; k < ranks.size(); ++k)
            if (ranks[k] != k + 1)
                throw Error(path.string() + ": ranks for year " + std::to_string(year) +
                            " are not 1.." + std::to_string(ranks.size()));
    }
    return rows;
}

Instance ranking_instance(const std::vector<RankingRow>& rows, int base_year, int target_year)
{
    std::map<std::string, std::uint32_t> base, target;
    for (const auto& r : rows) {
        if (r.year == base_year)
            base[r.entity] = r.rank;
        if (r.year == target_year)
            target[r.entity] = r.rank;
    }
    if (base.empty())
        throw Error("ranking data has no year " + std::to_string(base_year));
    if (target.empty())
        throw Error("ranking data has no year " + std::to_string(target_year));

    std::vector<std::string> names;
    for (const auto& [name, rank] : target)
        if (base.contains(name))
            names.push_back(name);
    if (names.empty())
        throw Error("no entity is ranked in both years");

    // Dense re-ranking among the common entities.
    auto dense = [&](const std::map<std::string, std::uint32_t>& year) {
        std::vector<std::size_t> idx(names.size());
        std::iota(idx.begin(), idx.end(), 0u);
        std::sort(idx.begin(), idx.end(),
                  [&](std::size_t a, std::size_t b) { return year.at(names[a]) < year.at(names[b]); });
        std::vector<std::uint32_t> out(names.size());
        for (std::size_t r = 0; r < idx.size(); ++r)
            out[idx[r]] = static_cast<std::uint32_t>(r + 1);
        return out;
    };
    const auto truth_ranks = dense(target);
    std::vector<double> keys(truth_ranks.begin(), truth_ranks.end());

    Instance inst = make_instance(ItemArray(std::move(keys)), Setting::ranking,
                                  static_cast<double>(base_year), 0);
    inst.prediction = PositionalPrediction(dense(base));
    inst.oracle = std::make_shared<PredictionOrderOracle>(*inst.prediction);
    inst.labels = std::move(names);
    return inst;
}

Instance ingest_ranking_csv(const std::filesystem::path& path, int base_year, int target_year)
{
    return ranking_instance(read_ranking_csv(path), base_year, target_year);
}

} // namespace lasort
