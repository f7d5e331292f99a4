#include "cellrate/cli/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>

#include "CLI11.hpp"
#include "cellrate/cli/scenario_file.hpp"
#include "cellrate/errors.hpp"
#include "cellrate/montecarlo/simulate.hpp"
#include "cellrate/multicell/average.hpp"
#include "cellrate/multicell/interference.hpp"
#include "cellrate/multicell/rate.hpp"
#include "cellrate/numerics/quadrature.hpp"
#include "cellrate/numerics/special.hpp"
#include "cellrate/numerics/tabulated_pdf.hpp"
#include "cellrate/singlecell/analysis.hpp"

namespace cellrate::cli {

namespace {

constexpr double kLn2 = std::numbers::ln2;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

class CsvWriter {
  public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
        : out_(path) {
        if (!out_) throw Error("cannot open output file: " + path.string());
        write_strings(header);
    }

    void row(const std::vector<double>& values) {
        std::vector<std::string> s(values.size());
        std::transform(values.begin(), values.end(), s.begin(),
                       [](double v) { return fmt(v); });
        write_strings(s);
    }

  private:
    void write_strings(const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

    std::ofstream out_;
};

struct SweepRange {
    double lo = 0.0, hi = 0.0;
    int n = 0;
};

SweepRange parse_range(const std::string& text) {
    SweepRange r;
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw ScenarioError("range must look like lo:hi:n, got '" + text + "'");
    try {
        r.lo = std::stod(text.substr(0, c1));
        r.hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
        r.n = std::stoi(text.substr(c2 + 1));
    } catch (const std::exception&) {
        throw ScenarioError("range must look like lo:hi:n, got '" + text + "'");
    }
    if (!(r.lo < r.hi) || r.n < 2) throw ScenarioError("range needs lo < hi and n >= 2");
    return r;
}

struct FigContext {
    ScenarioFile sf;
    std::unique_ptr<channel::FadingModel> fading;
    std::filesystem::path out_dir;
    uint64_t seed = 1;
    int64_t drops = 1;
    bool interference_limited = false;
    std::optional<std::string> sigma_sweep;
    std::optional<std::string> radii;
    std::string policy = "";
    double ref_power_w = 1.0;
    bool ref_power_set = false;
    double ref_radius_m = 4000.0;
};

mc::SimConfig sim_config(const FigContext& ctx, SchedulerSpec sched) {
    mc::SimConfig cfg;
    cfg.seed = ctx.seed;
    cfg.num_drops = ctx.drops;
    cfg.scenario = ctx.sf.scenario;
    cfg.fading = ctx.fading.get();
    cfg.scheduler = sched;
    return cfg;
}

void fig_rate_pdf(const FigContext& ctx, int id) {
    const bool greedy = id == 2;
    const std::vector<double> grid = ctx.sf.rate_grid();
    const singlecell::SingleCellAnalysis analysis(ctx.sf.scenario, *ctx.fading, grid);

    const bool closed_rr = !greedy && channel::is_unit_rayleigh(*ctx.fading) &&
                           ctx.sf.scenario.serving.exponent == 2.0;
    std::vector<double> analytic(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) {
        if (greedy)
            analytic[i] = singlecell::greedy_rate_pdf_at(grid[i], analysis);
        else if (closed_rr)
            analytic[i] = singlecell::rr_rate_pdf_rayleigh(grid[i], ctx.sf.scenario.radius_m,
                                                           ctx.sf.scenario.snr_composite());
        else
            analytic[i] = singlecell::rr_rate_pdf_at(grid[i], analysis);
    }

    const mc::SingleCellSamples samples = simulate_single_cell(
        sim_config(ctx, greedy ? SchedulerSpec::greedy() : SchedulerSpec::round_robin()));
    const std::vector<double> empirical = numerics::histogram_density(samples.rate_nats, grid);

    CsvWriter csv(ctx.out_dir / ("fig" + std::to_string(id) + ".csv"),
                  {"rate_nats", "rate_bits", "pdf_analytic", "pdf_empirical"});
    for (size_t i = 0; i < grid.size(); ++i)
        csv.row({grid[i], grid[i] / kLn2, analytic[i], empirical[i]});
}

void fig_coverage(const FigContext& ctx) {
    const double rho = ctx.sf.scenario.radius_m;
    const std::vector<double> radii = numerics::linspace(0.0, rho, 201);
    const singlecell::SingleCellAnalysis analysis(ctx.sf.scenario, *ctx.fading,
                                                  ctx.sf.rate_grid());
    singlecell::CoverageOptions opts;
    opts.seed = ctx.seed;
    opts.drops = ctx.drops;
    const std::vector<double> cov_greedy = singlecell::effective_coverage_cdf(
        SchedulerSpec::greedy(), analysis, radii, opts);
    const std::vector<double> cov_rr = singlecell::effective_coverage_cdf(
        SchedulerSpec::round_robin(), analysis, radii);
    const std::vector<double> cov_pf = singlecell::effective_coverage_cdf(
        SchedulerSpec::proportional_fair(), analysis, radii);

    CsvWriter csv(ctx.out_dir / "fig3.csv",
                  {"radius_m", "served_fraction_greedy", "served_fraction_rr",
                   "served_fraction_pf", "area_fraction"});
    for (size_t i = 0; i < radii.size(); ++i)
        csv.row({radii[i], cov_greedy[i], cov_rr[i], cov_pf[i],
                 singlecell::area_fraction(radii[i], rho)});
}

void fig_sigma_sweep(const FigContext& ctx) {
    const SweepRange r = parse_range(ctx.sigma_sweep.value_or("20:1000:40"));
    const std::vector<double> sigmas = numerics::linspace(r.lo, r.hi, r.n);
    const auto& scen = ctx.sf.scenario;
    multicell::CellAverageOptions opts;
    opts.interference_limited = ctx.interference_limited;

    CsvWriter csv(ctx.out_dir / "fig4.csv", {"sigma_m", "avg_rate_nats", "avg_rate_bits"});
    for (double s : sigmas) {
        const auto density = multicell::SchedulerDensity::truncated_gaussian(
            s, scen.radius_m, scen.user_min_distance_m);
        const double v = multicell::cell_average_rate(scen, *ctx.fading, density,
                                                      scen.noise_power_w, opts);
        csv.row({s, v, v / kLn2});
    }
}

void fig_tradeoff(const FigContext& ctx, int id) {
    const SweepRange r = parse_range(ctx.radii.value_or("500:4000:8"));
    const std::vector<double> radii = numerics::linspace(r.lo, r.hi, r.n);

    std::string policy = ctx.policy;
    if (policy.empty()) policy = (id == 6) ? "edge-scaled" : "fixed";
    multicell::PowerPolicy pp;
    if (policy == "fixed") {
        pp.mode = multicell::PowerPolicy::Mode::Fixed;
        pp.reference_power_w =
            ctx.ref_power_set ? ctx.ref_power_w : ctx.sf.scenario.serving.tx_power_w;
    } else if (policy == "edge-scaled") {
        pp.mode = multicell::PowerPolicy::Mode::EdgeScaled;
        pp.reference_power_w = ctx.ref_power_w;
        pp.reference_radius_m = ctx.ref_radius_m;
    } else {
        throw ScenarioError("--policy must be fixed or edge-scaled");
    }

    const std::vector<SchedulerSpec> scheds = {SchedulerSpec::round_robin(),
                                               SchedulerSpec::greedy(),
                                               SchedulerSpec::proportional_fair()};
    multicell::CellAverageOptions opts;
    opts.interference_limited = ctx.interference_limited;
    const std::vector<multicell::TradeoffRow> rows = multicell::tradeoff_sweep(
        radii, scheds, pp, ctx.sf.scenario, *ctx.fading, opts);

    std::vector<std::string> header = {"radius_m", "num_users", "tx_power_w"};
    for (const auto& s : scheds) {
        header.push_back(s.name() + "_sigma_m");
        header.push_back(s.name() + "_multicell_nats");
        header.push_back(s.name() + "_multicell_bits");
        header.push_back(s.name() + "_singlecell_nats");
        header.push_back(s.name() + "_singlecell_bits");
    }
    CsvWriter csv(ctx.out_dir / ("fig" + std::to_string(id) + ".csv"), header);
    for (size_t i = 0; i < rows.size(); i += scheds.size()) {
        std::vector<double> cells = {rows[i].radius_m, static_cast<double>(rows[i].num_users),
                                     rows[i].tx_power_w};
        for (size_t k = 0; k < scheds.size(); ++k) {
            const auto& row = rows[i + k];
            cells.push_back(row.sigma_m);
            cells.push_back(row.multicell_avg_rate);
            cells.push_back(row.multicell_avg_rate / kLn2);
            cells.push_back(row.singlecell_avg_rate);
            cells.push_back(row.singlecell_avg_rate / kLn2);
        }
        csv.row(cells);
    }
}

int cmd_fig(const FigContext& ctx, int id) {
    std::filesystem::create_directories(ctx.out_dir);
    switch (id) {
        case 1:
        case 2: fig_rate_pdf(ctx, id); break;
        case 3: fig_coverage(ctx); break;
        case 4: fig_sigma_sweep(ctx); break;
        case 5:
        case 6: fig_tradeoff(ctx, id); break;
        default: throw ScenarioError("figure id must be 1..6");
    }
    return 0;
}

int cmd_validate(const ScenarioFile& sf) {
    const auto fading = sf.make_fading();
    const auto& scen = sf.scenario;
    bool all_ok = true;
    auto check = [&all_ok](const std::string& name, bool ok, const std::string& detail = "") {
        std::cout << (ok ? "PASS " : "FAIL ") << name;
        if (!ok && !detail.empty()) std::cout << " (" << detail << ")";
        std::cout << "\n";
        all_ok = all_ok && ok;
    };
    auto rel = [](double a, double b) {
        return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
    };

    const numerics::QuadSpec quad;
    const double mass = numerics::integrate_semiinfinite(
        [&](double a) { return fading->pdf(a); }, 0.0, quad);
    check("fading pdf mass", std::abs(mass - 1.0) < 1e-6, fmt(mass));

    const double fmean = numerics::integrate_semiinfinite(
        [&](double a) { return a * fading->pdf(a); }, 0.0, quad);
    check("fading mean", rel(fmean, fading->mean()) < 1e-6, fmt(fmean));

    const singlecell::SingleCellAnalysis analysis(scen, *fading, sf.rate_grid());
    const double rr_mass = numerics::integrate_semiinfinite(
        [&](double r) { return singlecell::rr_rate_pdf_at(r, analysis); }, 0.0, quad);
    check("rr rate pdf mass", std::abs(rr_mass - 1.0) < 1e-6, fmt(rr_mass));

    if (channel::is_unit_rayleigh(*fading) && scen.serving.exponent == 2.0) {
        double worst = 0.0;
        for (double rate : {0.1, 0.5, 1.0, 2.0, 4.0}) {
            const double a = singlecell::rr_rate_pdf_at(rate, analysis);
            const double b =
                singlecell::rr_rate_pdf_rayleigh(rate, scen.radius_m, scen.snr_composite());
            worst = std::max(worst, rel(a, b));
        }
        check("rr closed form vs quadrature", worst < 1e-6, fmt(worst));
    }

    {
        channel::CellScenario one = scen;
        one.num_users = 1;
        const singlecell::SingleCellAnalysis a1(one, *fading, sf.rate_grid());
        double worst = 0.0;
        for (double rate : {0.2, 1.0, 3.0})
            worst = std::max(worst, rel(singlecell::pf_rate_pdf_at(rate, a1),
                                        singlecell::rr_rate_pdf_at(rate, a1)));
        check("pf with one user equals rr", worst < 1e-9, fmt(worst));
    }

    const double tail_log_cdf = singlecell::greedy_max_snr_log_cdf(
        scen.snr_composite() * 1e12 / (scen.radius_m * scen.radius_m), analysis);
    check("greedy max-SNR cdf tends to 1", std::abs(tail_log_cdf) < 1e-9, fmt(tail_log_cdf));

    {
        double worst = 0.0;
        for (double frac : {0.23, 0.52, 0.81}) {
            const auto p = multicell::make_interference_profile(
                scen, {frac * scen.radius_m, 0.37 * frac * scen.radius_m});
            double sum = 0.0;
            for (double c : p.coefficients) sum += c;
            worst = std::max(worst, std::abs(sum - 1.0));
        }
        check("interference coefficient sums", worst < 1e-7, fmt(worst));
    }

    if (channel::is_unit_rayleigh(*fading)) {
        const auto p = multicell::make_interference_profile(
            scen, {0.5 * scen.radius_m, 0.21 * scen.radius_m});
        const std::vector<double> rates = {0.1, 0.8, 2.0};
        const auto pdf = multicell::rate_pdf_at(p, *fading, scen.noise_power_w, rates);
        double worst = 0.0;
        for (size_t i = 0; i < rates.size(); ++i)
            worst = std::max(worst, rel(pdf.values()[i],
                                        multicell::rate_pdf_at_rayleigh(
                                            p, scen.noise_power_w, rates[i])));
        check("location rate pdf closed vs quadrature", worst < 1e-5, fmt(worst));

        const double closed = multicell::avg_rate_interference_limited(p);
        const double moment = multicell::mean_rate_at(p, 0.0);
        check("interference-limited average consistency", rel(closed, moment) < 1e-6,
              fmt(closed) + " vs " + fmt(moment));
    }

    {
        const auto density = multicell::SchedulerDensity::truncated_gaussian(
            0.1 * scen.radius_m, scen.radius_m, scen.user_min_distance_m);
        const double dm = numerics::integrate([&](double d) { return density.pdf(d); },
                                              scen.user_min_distance_m, scen.radius_m, quad);
        check("scheduler density mass", std::abs(dm - 1.0) < 1e-6, fmt(dm));
    }

    return all_ok ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"downlink cellular rate and interference distribution toolkit"};
    app.require_subcommand(1);

    int fig_id = 0;
    std::string scenario_path, out_dir = ".";
    std::optional<uint64_t> seed_opt;
    std::optional<int64_t> drops_opt;
    bool il = false;
    std::optional<std::string> sigma_sweep, radii;
    std::string policy;
    double ref_power = 1.0, ref_radius = 4000.0;

    CLI::App* fig = app.add_subcommand("fig", "reproduce one figure as CSV");
    fig->add_option("id", fig_id, "figure id (1..6)")->required();
    fig->add_option("scenario", scenario_path, "scenario file path")->required();
    fig->add_option("--out", out_dir, "output directory");
    fig->add_option("--seed", seed_opt, "Monte-Carlo seed override");
    fig->add_option("--drops", drops_opt, "Monte-Carlo drop count override");
    fig->add_flag("--interference-limited", il, "average the noise-free rate");
    fig->add_option("--sigma-sweep", sigma_sweep, "sigma sweep lo:hi:n (fig 4)");
    fig->add_option("--radii", radii, "radius sweep lo:hi:n (figs 5-6)");
    fig->add_option("--policy", policy, "power policy: fixed | edge-scaled");
    auto* rp = fig->add_option("--ref-power", ref_power, "reference power (W)");
    fig->add_option("--ref-radius", ref_radius, "reference radius (m)");

    CLI::App* validate = app.add_subcommand("validate", "run the cheap invariant suite");
    std::string validate_path;
    validate->add_option("scenario", validate_path, "scenario file path")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (fig->parsed()) {
            FigContext ctx;
            ctx.sf = parse_scenario_file(scenario_path);
            ctx.fading = ctx.sf.make_fading();
            ctx.out_dir = out_dir;
            ctx.seed = seed_opt.value_or(ctx.sf.mc_seed);
            ctx.drops = drops_opt.value_or(ctx.sf.mc_drops);
            ctx.interference_limited = il;
            ctx.sigma_sweep = sigma_sweep;
            ctx.radii = radii;
            ctx.policy = policy;
            ctx.ref_power_w = ref_power;
            ctx.ref_power_set = rp->count() > 0;
            ctx.ref_radius_m = ref_radius;
            if (ctx.drops < 1) throw ScenarioError("--drops must be >= 1");
            return cmd_fig(ctx, fig_id);
        }
        return cmd_validate(parse_scenario_file(validate_path));
    } catch (const ScenarioError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

}  // namespace cellrate::cli
