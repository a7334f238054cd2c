#include "cli/commands.hpp"

#include "cli/tsv.hpp"

#include "orbitsum/orbitsum.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>

namespace orbitsum::cli {

namespace {

struct Options {
    std::string coefficients;
    std::string exclude;
    std::string versus;
    unsigned degree = 2;
    std::size_t prime_count = 0;
    std::uint32_t prime_limit = 0;
    std::string cache = "./orbitsum-cache.csv";
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::string out;
    std::size_t step = 1000;
    std::size_t bins = 0;
};

struct Context {
    const Options& opt;
    std::ostream& out;
    std::ostream& err;
};

std::int64_t parse_int(std::string_view s)
{
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ValidationError("not an integer: '" + std::string(s) + "'");
    }
    return v;
}

std::vector<std::int64_t> selected_coefficients(const Options& opt)
{
    if (opt.coefficients.empty()) {
        throw ValidationError("no coefficients given (use -c/--coefficients)");
    }
    auto list = parse_coefficients(opt.coefficients);
    if (!opt.exclude.empty()) {
        const auto drop = parse_coefficients(opt.exclude);
        std::erase_if(list, [&](std::int64_t c) { return std::find(drop.begin(), drop.end(), c) != drop.end(); });
    }
    if (list.empty()) {
        throw ValidationError("coefficient list is empty after exclusions");
    }
    std::set<std::int64_t> seen;
    for (auto c : list) {
        if (!seen.insert(c).second) {
            throw ValidationError("duplicate coefficient " + std::to_string(c));
        }
    }
    return list;
}

SurveyConfig make_config(const Options& opt, std::vector<std::int64_t> coefficients)
{
    SurveyConfig cfg;
    cfg.coefficients = std::move(coefficients);
    cfg.degree = opt.degree;
    if (opt.prime_count) {
        cfg.prime_count = opt.prime_count;
    }
    if (opt.prime_limit) {
        cfg.prime_limit = opt.prime_limit;
    }
    cfg.worker_count = opt.workers;
    cfg.validate();
    return cfg;
}

std::string tag(std::int64_t c) { return "c" + std::to_string(c); }

// Destination of one TSV: `out` verbatim when only one file is produced, otherwise
// `<stem>_<tag><ext>` next to it.
std::string output_path(const std::string& out, const std::string& tag_text, bool several)
{
    if (!several || out == "-") {
        return out;
    }
    const std::filesystem::path path(out);
    auto name = path.stem().string() + "_" + tag_text + path.extension().string();
    return (path.parent_path() / name).string();
}

void emit(const Context& ctx, const TsvTable& table, const std::string& tag_text, bool several)
{
    if (ctx.opt.out.empty()) {
        return;
    }
    const auto path = output_path(ctx.opt.out, tag_text, several);
    if (path == "-") {
        table.write(ctx.out);
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw StoreError("cannot open output file " + path);
    }
    table.write(file);
    file.flush();
    if (!file) {
        throw StoreError("error writing output file " + path);
    }
    ctx.err << "wrote " << path << " (" << table.rows() << " rows)\n";
}

void summary(const Context& ctx, const std::string& key, const std::string& value)
{
    ctx.out << key << " = " << value << '\n';
}

std::string keyed(std::string_view name, std::int64_t c)
{
    return std::string(name) + "[c=" + std::to_string(c) + "]";
}

struct Loaded {
    std::vector<std::int64_t> coefficients;
    std::vector<Prime> primes;
    std::vector<std::vector<CountRecord>> records; // per coefficient, in the order given
};

Loaded load_grid(const Context& ctx, std::vector<std::int64_t> coefficients)
{
    const auto cfg = make_config(ctx.opt, coefficients);
    Loaded grid;
    grid.primes = cfg.primes();
    const CacheFile cache(ctx.opt.cache);
    for (auto c : coefficients) {
        grid.records.push_back(gather_records(cache, c, cfg.degree, grid.primes));
    }
    grid.coefficients = std::move(coefficients);
    return grid;
}

int cmd_survey(const Context& ctx)
{
    const auto cfg = make_config(ctx.opt, selected_coefficients(ctx.opt));
    CacheFile cache(ctx.opt.cache);
    const auto result = run_survey(cfg, cache, [&](const SurveyProgress& p) {
        ctx.err << "progress: " << p.cached + p.computed << "/" << p.total << " pairs (" << p.computed
                << " computed)\n";
    });
    summary(ctx, "records", std::to_string(result.records.size()));
    summary(ctx, "cached", std::to_string(result.stats.cached));
    summary(ctx, "computed", std::to_string(result.stats.computed));
    summary(ctx, "cache", ctx.opt.cache);
    return 0;
}

int cmd_sums(const Context& ctx)
{
    const auto grid = load_grid(ctx, selected_coefficients(ctx.opt));
    const bool several = grid.coefficients.size() > 1;
    for (std::size_t i = 0; i < grid.coefficients.size(); ++i) {
        const auto c = grid.coefficients[i];
        const auto st = cumulative_sum(grid.records[i]);
        emit(ctx, series_table(st, "ST"), tag(c), several);
        summary(ctx, keyed("N", c), std::to_string(st.size()));
        summary(ctx, keyed("ST", c), format_number(st.points.back().value));
    }
    return 0;
}

int cmd_ratios(const Context& ctx)
{
    const auto left = selected_coefficients(ctx.opt);
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    if (ctx.opt.versus.empty()) {
        for (std::size_t i = 0; i < left.size(); ++i) {
            for (std::size_t j = i + 1; j < left.size(); ++j) {
                pairs.emplace_back(left[i], left[j]);
            }
        }
        if (pairs.empty()) {
            throw ValidationError("ratios needs two coefficients or a --versus list");
        }
    } else {
        for (auto a : left) {
            for (auto b : parse_coefficients(ctx.opt.versus)) {
                pairs.emplace_back(a, b);
            }
        }
    }

    std::vector<std::int64_t> all;
    for (const auto& [a, b] : pairs) {
        for (auto c : {a, b}) {
            if (std::find(all.begin(), all.end(), c) == all.end()) {
                all.push_back(c);
            }
        }
    }
    const auto grid = load_grid(ctx, all);
    std::map<std::int64_t, Series> sums;
    for (std::size_t i = 0; i < all.size(); ++i) {
        sums.emplace(all[i], cumulative_sum(grid.records[i]));
    }

    const bool several = pairs.size() > 1;
    for (const auto& [a, b] : pairs) {
        const auto ratio = ratio_series(sums.at(a), sums.at(b));
        emit(ctx, series_table(ratio, "ratio"), tag(a) + "_vs_" + tag(b), several);
        summary(ctx, "ratio[c=" + std::to_string(a) + ",c'=" + std::to_string(b) + "]",
                format_number(ratio.points.back().value));
    }
    return 0;
}

int cmd_normalized(const Context& ctx)
{
    const auto grid = load_grid(ctx, selected_coefficients(ctx.opt));
    const bool several = grid.coefficients.size() > 1;
    for (std::size_t i = 0; i < grid.coefficients.size(); ++i) {
        const auto c = grid.coefficients[i];
        const auto normalized = normalized_series(cumulative_sum(grid.records[i]));
        emit(ctx, series_table(normalized, "ST_over_sqrt_p"), tag(c), several);
        summary(ctx, keyed("normalized", c), format_number(normalized.points.back().value));
    }
    return 0;
}

int cmd_slope(const Context& ctx)
{
    const auto grid = load_grid(ctx, selected_coefficients(ctx.opt));
    const bool several = grid.coefficients.size() > 1;
    for (std::size_t i = 0; i < grid.coefficients.size(); ++i) {
        const auto c = grid.coefficients[i];
        const auto normalized = normalized_series(cumulative_sum(grid.records[i]));
        const auto progression = slope_progression(normalized, ctx.opt.step);
        emit(ctx, series_table(progression, "slope"), tag(c), several);
        const auto fit = fit_series(normalized);
        summary(ctx, keyed("k_hat", c), format_number(fit.slope));
        summary(ctx, keyed("intercept", c), format_number(fit.intercept));
        summary(ctx, keyed("residual_rms", c), format_number(fit.residual_rms));
        summary(ctx, keyed("n", c), std::to_string(fit.n));
    }
    return 0;
}

int cmd_fit_rayleigh(const Context& ctx)
{
    const auto grid = load_grid(ctx, selected_coefficients(ctx.opt));
    const bool several = grid.coefficients.size() > 1;
    for (std::size_t i = 0; i < grid.coefficients.size(); ++i) {
        const auto c = grid.coefficients[i];
        const auto samples = normalized_counts(grid.records[i]);
        const auto fit = rayleigh_fit(samples);
        const auto hist = histogram_density(samples, ctx.opt.bins);

        TsvTable table({"bin_lo", "bin_hi", "density", "rayleigh_pdf"});
        for (std::size_t b = 0; b < hist.bins(); ++b) {
            const double mid = 0.5 * (hist.edges[b] + hist.edges[b + 1]);
            table.add_row({format_number(hist.edges[b]), format_number(hist.edges[b + 1]),
                           format_number(hist.densities[b]), format_number(rayleigh_pdf(mid, fit.sigma))});
        }
        emit(ctx, table, tag(c), several);

        const auto k = fit_series(normalized_series(cumulative_sum(grid.records[i]))).slope;
        summary(ctx, keyed("sigma_hat", c), format_number(fit.sigma));
        summary(ctx, keyed("n", c), std::to_string(fit.n));
        summary(ctx, keyed("ks_distance", c), format_number(fit.ks_distance));
        summary(ctx, keyed("k_hat", c), format_number(k));
        summary(ctx, keyed("consistency", c), format_number(consistency_check(k, fit.sigma)));
    }
    return 0;
}

int cmd_column_sum(const Context& ctx)
{
    // Coefficients are irrelevant here; every residue is summed.
    const auto cfg = make_config(ctx.opt, {0});
    const auto primes = cfg.primes();
    std::vector<std::uint64_t> sums(primes.size());

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::optional<std::string> failure;
    {
        std::vector<std::jthread> pool;
        const auto workers = std::min<std::size_t>(cfg.worker_count, primes.size());
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (auto i = next.fetch_add(1); i < primes.size(); i = next.fetch_add(1)) {
                    try {
                        sums[i] = sum_over_c(primes[i], cfg.degree);
                    } catch (const std::exception& e) {
                        std::lock_guard lock(error_mutex);
                        failure = "p = " + std::to_string(primes[i]) + ": " + e.what();
                        next = primes.size();
                    }
                }
            });
        }
    }
    if (failure) {
        throw Error("column-sum failed at " + *failure);
    }

    TsvTable table({"N", "p_N", "column_sum"});
    for (std::size_t i = 0; i < primes.size(); ++i) {
        table.add_row({format_number(std::uint64_t{i + 1}), format_number(std::uint64_t{primes[i]}),
                       format_number(sums[i])});
    }
    emit(ctx, table, "column", false);
    summary(ctx, "primes", std::to_string(primes.size()));
    summary(ctx, "column_sum[p=" + std::to_string(primes.back()) + "]", format_number(sums.back()));
    return 0;
}

void add_grid_options(CLI::App& cmd, Options& opt, bool with_coefficients, bool with_cache)
{
    if (with_coefficients) {
        cmd.add_option("-c,--coefficients", opt.coefficients,
                       "Coefficients c: comma-separated integers or ranges a..b (write negatives as -c=-5..5)")
            ->required();
        cmd.add_option("--exclude", opt.exclude, "Coefficients to drop from the list");
    }
    cmd.add_option("-d,--degree", opt.degree, "Map degree d in x^d + c")
        ->capture_default_str()
        ->check(CLI::Range(2u, 1u << 20));
    auto* count = cmd.add_option("--prime-count", opt.prime_count, "Use the first N primes")
                      ->check(CLI::Range(std::size_t{1}, std::size_t{100'000'000}));
    auto* limit = cmd.add_option("--prime-limit", opt.prime_limit, "Use all primes <= N")
                      ->check(CLI::Range(2u, (1u << 31) - 1));
    count->excludes(limit);
    limit->excludes(count);
    if (with_cache) {
        cmd.add_option("--cache", opt.cache, "Cache file of computed counts")->capture_default_str();
    }
    cmd.add_option("--out", opt.out, "TSV output path ('-' for stdout)");
}

} // namespace

std::vector<std::int64_t> parse_coefficients(std::string_view text)
{
    // CLI11 keeps the '=' of a short option written as -c=-5..5.
    if (text.starts_with('=')) {
        text.remove_prefix(1);
    }
    std::vector<std::int64_t> out;
    while (true) {
        const auto comma = text.find(',');
        const auto item = text.substr(0, comma);
        const auto dots = item.find("..");
        if (dots == std::string_view::npos) {
            out.push_back(parse_int(item));
        } else {
            const auto lo = parse_int(item.substr(0, dots));
            const auto hi = parse_int(item.substr(dots + 2));
            if (lo > hi) {
                throw ValidationError("empty coefficient range '" + std::string(item) + "'");
            }
            if (hi - lo > 10'000'000) {
                throw ValidationError("coefficient range '" + std::string(item) + "' is too large");
            }
            for (auto c = lo; c <= hi; ++c) {
                out.push_back(c);
            }
        }
        if (comma == std::string_view::npos) {
            break;
        }
        text.remove_prefix(comma + 1);
    }
    return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"orbitsum: periodic points of x^d + c over prime fields"};
    app.require_subcommand(1);
    Options opt;

    auto* survey = app.add_subcommand("survey", "Compute and cache T_c(p) for a coefficient/prime grid");
    add_grid_options(*survey, opt, true, true);
    survey->add_option("--workers", opt.workers, "Worker threads")->capture_default_str()->check(
        CLI::PositiveNumber);

    auto* sums = app.add_subcommand("sums", "Cumulative sums ST_c(p_N)");
    add_grid_options(*sums, opt, true, true);

    auto* ratios = app.add_subcommand("ratios", "Ratios ST_c(p_N) / ST_c'(p_N)");
    add_grid_options(*ratios, opt, true, true);
    ratios->add_option("--versus", opt.versus, "Denominator coefficients c' (default: all pairs within -c)");

    auto* normalized = app.add_subcommand("normalized", "ST_c(p_N) / sqrt(p_N)");
    add_grid_options(*normalized, opt, true, true);

    auto* slope = app.add_subcommand("slope", "Slope of the affine fit to ST_c(p_N) / sqrt(p_N) over prefixes");
    add_grid_options(*slope, opt, true, true);
    slope->add_option("--step", opt.step, "Prefix length increment")->capture_default_str()->check(
        CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));

    auto* rayleigh = app.add_subcommand("fit-rayleigh", "Rayleigh fit and histogram of T_c(p) / sqrt(p)");
    add_grid_options(*rayleigh, opt, true, true);
    rayleigh->add_option("--bins", opt.bins, "Histogram bins (0: ceil(sqrt(n)))")->capture_default_str();

    auto* column = app.add_subcommand("column-sum", "Sum of T_c(p) over all c in [0, p) for each prime");
    add_grid_options(*column, opt, false, false);
    column->add_option("--workers", opt.workers, "Worker threads")->capture_default_str()->check(
        CLI::PositiveNumber);

    for (auto* cmd : app.get_subcommands({})) {
        cmd->callback([cmd] {
            if (cmd->count("--prime-count") + cmd->count("--prime-limit") == 0) {
                throw CLI::RequiredError("--prime-count or --prime-limit");
            }
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    const Context ctx{opt, out, err};
    try {
        if (survey->parsed()) {
            return cmd_survey(ctx);
        }
        if (sums->parsed()) {
            return cmd_sums(ctx);
        }
        if (ratios->parsed()) {
            return cmd_ratios(ctx);
        }
        if (normalized->parsed()) {
            return cmd_normalized(ctx);
        }
        if (slope->parsed()) {
            return cmd_slope(ctx);
        }
        if (rayleigh->parsed()) {
            return cmd_fit_rayleigh(ctx);
        }
        return cmd_column_sum(ctx);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace orbitsum::cli
