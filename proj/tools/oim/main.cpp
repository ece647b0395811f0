#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "oim/bounds.hpp"
#include "oim/evolution.hpp"
#include "oim/io.hpp"
#include "oim/montecarlo.hpp"
#include "oim/mpsk.hpp"
#include "oim/solver.hpp"
#include "oim/types.hpp"
#include "oim/waveform.hpp"

using nlohmann::json;

namespace {

struct Cfg {
    std::vector<double> alpha_sq{0.2, 0.4, 0.6};
    double p = 0.5;
    double target_pi = 0.0;
    std::vector<double> pi_grid;
    int pi_points = 20;
    double pi_frac = 0.97;
    double tol = 1e-6;
    double eta = 1.0;
    double xi = 1.0;
    double nu = 0.0;
    double r_max = std::numeric_limits<double>::infinity();
    int dac_bits = 0;
    int n_bins = 1024;
    int gap_n_bins = 4096;
    bool usd = false;
    std::uint64_t trials = 250000;
    int batches = 5;
    std::uint64_t seed = 0;
    bool has_seed = false;
    int threads = 0; // 0 = hardware concurrency
    double t1 = -1.0; // explicit strategy override when >= 0
    double v = 0.5;
    int n0 = 1;
    std::vector<double> r_values{10, 30, 100, 300, 1000};
    std::vector<double> f_values{0.66, 0.90};
    std::vector<double> pi2_grid{0.0, 0.01, 0.02, 0.05, 0.10, 0.15, 0.20};
    int m_min = 3;
    int m_max = 8;
    double alpha_per_bit = 0.2;
    int dump_trials = 0;
    std::string out;
    std::string config_path;
};

double json_double(const json& v) {
    if (v.is_string()) return std::stod(v.get<std::string>());
    return v.get<double>();
}

std::vector<double> json_list(const json& v) {
    if (v.is_array()) {
        std::vector<double> out;
        for (const auto& e : v) out.push_back(json_double(e));
        return out;
    }
    return {json_double(v)};
}

void overlay_config(Cfg& c, const json& j) {
    if (!j.is_object()) throw std::invalid_argument("config file must hold a JSON object");
    for (const auto& [key, val] : j.items()) {
        if (key == "alpha_sq") c.alpha_sq = json_list(val);
        else if (key == "p") c.p = json_double(val);
        else if (key == "target_pi") c.target_pi = json_double(val);
        else if (key == "pi_grid") c.pi_grid = json_list(val);
        else if (key == "pi_points") c.pi_points = val.get<int>();
        else if (key == "pi_frac") c.pi_frac = json_double(val);
        else if (key == "tol") c.tol = json_double(val);
        else if (key == "eta") c.eta = json_double(val);
        else if (key == "xi") c.xi = json_double(val);
        else if (key == "nu") c.nu = json_double(val);
        else if (key == "r_max") c.r_max = json_double(val);
        else if (key == "dac_bits") c.dac_bits = val.get<int>();
        else if (key == "n_bins") { c.n_bins = val.get<int>(); c.gap_n_bins = c.n_bins; }
        else if (key == "usd") c.usd = val.get<bool>();
        else if (key == "trials") c.trials = val.get<std::uint64_t>();
        else if (key == "batches") c.batches = val.get<int>();
        else if (key == "seed") { c.seed = val.get<std::uint64_t>(); c.has_seed = true; }
        else if (key == "threads") c.threads = val.get<int>();
        else if (key == "t1") c.t1 = json_double(val);
        else if (key == "v") c.v = json_double(val);
        else if (key == "n0") c.n0 = val.get<int>();
        else if (key == "r_values") c.r_values = json_list(val);
        else if (key == "f_values") c.f_values = json_list(val);
        else if (key == "pi2_grid") c.pi2_grid = json_list(val);
        else if (key == "m_min") c.m_min = val.get<int>();
        else if (key == "m_max") c.m_max = val.get<int>();
        else if (key == "alpha_per_bit") c.alpha_per_bit = json_double(val);
        else if (key == "dump_trials") c.dump_trials = val.get<int>();
        else if (key == "out") c.out = val.get<std::string>();
        else throw std::invalid_argument("unknown config key: " + key);
    }
}

oim::ImperfectionModel make_imp(const Cfg& c) {
    oim::ImperfectionModel imp;
    imp.eta = c.eta;
    imp.xi = c.xi;
    imp.nu = c.nu;
    imp.r_max = c.r_max;
    imp.dac_bits = c.dac_bits;
    imp.n_bins = c.n_bins;
    imp.validate();
    return imp;
}

json imp_json(const Cfg& c) {
    json j;
    j["eta"] = c.eta;
    j["xi"] = c.xi;
    j["nu"] = c.nu;
    j["r_max"] = std::isfinite(c.r_max) ? json(c.r_max) : json("inf");
    j["dac_bits"] = c.dac_bits;
    j["n_bins"] = c.n_bins;
    return j;
}

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

std::string resolve_out(const std::string& out) {
    if (out.empty()) return out;
    std::filesystem::path p(out);
    if (p.is_absolute()) return out;
    const char* dir = std::getenv("OIM_OUT_DIR");
    if (dir && *dir) return (std::filesystem::path(dir) / p).string();
    return out;
}

void ensure_seed(Cfg& c) {
    if (c.has_seed) return;
    std::random_device rd;
    c.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    c.has_seed = true;
    std::fprintf(stderr, "generated master seed: %llu\n",
                 static_cast<unsigned long long>(c.seed));
}

// Emits the table to --out (plus a sidecar manifest) or to stdout.
void emit(const Cfg& c, const std::string& command, const json& config,
          const std::vector<std::string>& header,
          const std::vector<std::vector<std::string>>& rows) {
    const std::string config_line = config.dump();
    const std::string path = resolve_out(c.out);
    if (path.empty()) {
        oim::write_csv(std::cout, config_line, header, rows);
        return;
    }
    oim::write_csv_file(path, config_line, header, rows);
    json manifest;
    manifest["command"] = command;
    manifest["config"] = config;
    manifest["schema"] = header;
    manifest["version"] = "0.1.0";
    oim::write_text_file(path + ".manifest.json", manifest.dump(2) + "\n");
}

std::string fmt(double x) { return oim::format_g9(x); }
std::string fmt(int x) { return std::to_string(x); }
std::string fmt(std::uint64_t x) { return std::to_string(x); }

json alpha_json(const Cfg& c) {
    return c.alpha_sq.size() == 1 ? json(c.alpha_sq[0]) : json(c.alpha_sq);
}

// Strategy for one alpha: explicit (t1, v, n0) when --t1 is set, otherwise
// solved for the requested inconclusive target on the same bin grid.
oim::StrategySpec pick_strategy(const Cfg& c, double a) {
    if (c.t1 >= 0.0) {
        oim::StrategySpec spec;
        spec.alpha_sq = a;
        spec.p = c.p;
        spec.target_pi = c.target_pi;
        spec.t1 = c.t1;
        spec.v = c.v;
        spec.n0 = c.n0;
        spec.validate();
        return spec;
    }
    return oim::solve_strategy(a, c.p, c.target_pi, c.tol, c.n_bins);
}

int run_bounds(const Cfg& c) {
    json cfg;
    cfg["alpha_sq"] = alpha_json(c);
    cfg["p"] = c.p;
    std::vector<std::vector<std::string>> rows;
    for (double a : c.alpha_sq) {
        rows.push_back({fmt(a), fmt(oim::helstrom_error(a, c.p)), fmt(oim::idp_bound(a)),
                        fmt(oim::homodyne_error(a)), fmt(oim::overlap_sq(a))});
    }
    emit(c, "bounds", cfg,
         {"alpha_sq", "helstrom_error", "idp_bound", "homodyne_error", "overlap_sq"}, rows);
    return 0;
}

int run_tradeoff(const Cfg& c) {
    const oim::ImperfectionModel imp = make_imp(c);
    json cfg = imp_json(c);
    cfg["alpha_sq"] = alpha_json(c);
    cfg["p"] = c.p;
    cfg["tol"] = c.tol;
    if (!c.pi_grid.empty()) cfg["pi_grid"] = c.pi_grid;
    else {
        cfg["pi_points"] = c.pi_points;
        cfg["pi_frac"] = c.pi_frac;
    }
    std::vector<std::vector<std::string>> rows;
    for (double a : c.alpha_sq) {
        std::vector<double> grid = c.pi_grid;
        if (grid.empty()) {
            if (c.pi_points < 2) throw std::invalid_argument("pi_points must be >= 2");
            const double hi = c.pi_frac * oim::idp_bound(a);
            for (int i = 0; i < c.pi_points; ++i)
                grid.push_back(hi * i / (c.pi_points - 1));
        }
        for (const auto& pt : oim::tradeoff_curve(a, c.p, grid, imp, c.tol)) {
            rows.push_back({fmt(a), fmt(pt.target_pi), fmt(pt.achieved_pi), fmt(pt.achieved_pe),
                            fmt(pt.t1), fmt(pt.v), fmt(pt.n0), pt.converged ? "1" : "0"});
        }
        if (c.usd) {
            const oim::StrategySpec spec = oim::solve_usd_endpoint(a, c.p, c.n_bins);
            const auto ideal =
                oim::evaluate_strategy(spec.t1, spec.v, a, c.p, c.n_bins);
            const oim::WaveformTable wf = oim::build_waveform(spec, imp);
            const auto got = oim::evolve(spec, wf, imp).final();
            rows.push_back({fmt(a), fmt(ideal.p_i), fmt(got.p_i), fmt(got.p_e), fmt(spec.t1),
                            fmt(spec.v), fmt(spec.n0), "1"});
        }
    }
    emit(c, "tradeoff", cfg,
         {"alpha_sq", "target_pi", "achieved_pi", "achieved_pe", "t1", "v", "n0", "converged"},
         rows);
    return 0;
}

void dump_trial_records(const Cfg& c, const json& cfg, const oim::StrategySpec& spec,
                        const oim::WaveformTable& wf, const oim::ImperfectionModel& imp) {
    std::vector<std::vector<std::string>> rows;
    for (int t = 0; t < c.dump_trials; ++t) {
        oim::TrialRng rng = oim::TrialRng::for_trial(c.seed, static_cast<std::uint64_t>(t));
        const oim::TrialRecord rec = oim::simulate_trial(spec, wf, imp, rng);
        std::string bits;
        bits.reserve(rec.detections.size());
        for (std::uint8_t d : rec.detections) bits.push_back(d ? '1' : '0');
        const char* outcome = rec.outcome == oim::Outcome::correct ? "correct"
                              : rec.outcome == oim::Outcome::error ? "error"
                                                                   : "inconclusive";
        rows.push_back({fmt(spec.alpha_sq), fmt(t), fmt(rec.true_state), outcome,
                        fmt(rec.n1_final), fmt(rec.n2_final), bits});
    }
    const std::string path = resolve_out(c.out) + ".trials.csv";
    oim::write_csv_file(path, cfg.dump(),
                        {"alpha_sq", "trial", "true_state", "outcome", "n1", "n2", "detections"},
                        rows);
}

int run_montecarlo(Cfg& c) {
    const oim::ImperfectionModel imp = make_imp(c);
    ensure_seed(c);
    json cfg = imp_json(c);
    cfg["alpha_sq"] = alpha_json(c);
    cfg["p"] = c.p;
    cfg["target_pi"] = c.target_pi;
    cfg["trials"] = c.trials;
    cfg["batches"] = c.batches;
    cfg["seed"] = c.seed;
    std::vector<std::vector<std::string>> rows;
    const int threads = resolve_threads(c.threads);
    for (double a : c.alpha_sq) {
        const oim::StrategySpec spec = pick_strategy(c, a);
        const oim::WaveformTable wf = oim::build_waveform(spec, imp);
        const oim::EnsembleStats st =
            oim::run_ensemble(spec, wf, imp, c.trials, c.seed, c.batches, threads);
        rows.push_back({fmt(a), fmt(c.target_pi), fmt(st.p_i), fmt(st.p_e), fmt(st.se_i),
                        fmt(st.se_e), fmt(st.n_trials), fmt(st.master_seed)});
        if (c.dump_trials > 0 && !c.out.empty()) dump_trial_records(c, cfg, spec, wf, imp);
    }
    emit(c, "montecarlo", cfg,
         {"alpha_sq", "target_pi", "achieved_pi", "achieved_pe", "se_pi", "se_pe", "n_trials",
          "master_seed"},
         rows);
    return 0;
}

int run_dolinar(Cfg& c) {
    const oim::ImperfectionModel imp = make_imp(c);
    ensure_seed(c);
    json cfg = imp_json(c);
    cfg["alpha_sq"] = alpha_json(c);
    cfg["p"] = c.p;
    cfg["trials"] = c.trials;
    cfg["batches"] = c.batches;
    cfg["seed"] = c.seed;
    std::vector<std::vector<std::string>> rows;
    const int threads = resolve_threads(c.threads);
    for (double a : c.alpha_sq) {
        oim::StrategySpec spec;
        spec.alpha_sq = a;
        spec.p = c.p;
        spec.validate();
        const oim::WaveformTable wf = oim::build_waveform(spec, imp);
        const double pe_model = oim::evolve(spec, wf, imp).final().p_e;
        const oim::EnsembleStats st =
            oim::run_ensemble(spec, wf, imp, c.trials, c.seed, c.batches, threads);
        rows.push_back({fmt(a), fmt(st.p_e), fmt(st.se_e), fmt(pe_model),
                        fmt(oim::helstrom_error(a, c.p)), fmt(oim::homodyne_error(a))});
    }
    emit(c, "dolinar", cfg,
         {"alpha_sq", "p_e_mc", "se_pe", "p_e_model", "helstrom_error", "homodyne_error"}, rows);
    return 0;
}

int run_waveform(const Cfg& c) {
    const oim::ImperfectionModel imp = make_imp(c);
    const double a = c.alpha_sq.front();
    const oim::StrategySpec spec = pick_strategy(c, a);
    json cfg = imp_json(c);
    cfg["alpha_sq"] = a;
    cfg["p"] = c.p;
    cfg["target_pi"] = c.target_pi;
    cfg["t1"] = spec.t1;
    cfg["v"] = spec.v;
    cfg["n0"] = spec.n0;
    const oim::WaveformTable wf = oim::build_waveform(spec, imp);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t k = 0; k < wf.n_bins(); ++k) {
        const auto& b = wf.bins[k];
        rows.push_back({fmt(static_cast<int>(k)), fmt(b.t_mid), fmt(b.mag_ideal),
                        fmt(b.mag_applied), b.mode == oim::Mode::first ? "first" : "second"});
    }
    emit(c, "waveform", cfg, {"bin_index", "t_mid", "mag_ideal", "mag_applied", "mode"}, rows);
    return 0;
}

int run_evolve(const Cfg& c) {
    const oim::ImperfectionModel imp = make_imp(c);
    const double a = c.alpha_sq.front();
    const oim::StrategySpec spec = pick_strategy(c, a);
    json cfg = imp_json(c);
    cfg["alpha_sq"] = a;
    cfg["p"] = c.p;
    cfg["target_pi"] = c.target_pi;
    cfg["t1"] = spec.t1;
    cfg["v"] = spec.v;
    cfg["n0"] = spec.n0;
    const oim::WaveformTable wf = oim::build_waveform(spec, imp);
    const oim::ProbabilityTrace tr = oim::evolve(spec, wf, imp);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
        rows.push_back({fmt(static_cast<int>(k)), fmt(tr.times[k]), fmt(tr.triples[k].p_c),
                        fmt(tr.triples[k].p_e), fmt(tr.triples[k].p_i)});
    }
    emit(c, "evolve", cfg, {"bin_index", "t", "p_c", "p_e", "p_i"}, rows);
    return 0;
}

int run_tpsk(const Cfg& c) {
    json cfg;
    cfg["alpha_sq"] = alpha_json(c);
    cfg["f_values"] = c.f_values;
    cfg["pi2_grid"] = c.pi2_grid;
    cfg["n_bins"] = c.n_bins;
    std::vector<std::vector<std::string>> rows;
    for (double a : c.alpha_sq) {
        for (double f : c.f_values) {
            const double p_conc = 1.0 - oim::min_inconclusive_prob(3, a, f);
            for (double pi2 : c.pi2_grid) {
                if (!(pi2 < p_conc)) {
                    std::fprintf(stderr,
                                 "tpsk: skipping pi2=%g at alpha_sq=%g f=%g "
                                 "(stage-2 budget exceeds conclusive weight %g)\n",
                                 pi2, a, f, p_conc);
                    continue;
                }
                oim::MpskConfig mc;
                mc.m = 3;
                mc.alpha_sq = a;
                mc.f = f;
                mc.target_pi2 = pi2;
                const oim::HybridResult r = oim::hybrid_tpsk(mc, c.n_bins);
                const double base = oim::heterodyne_baseline(3, a, r.p_i_total);
                rows.push_back({fmt(3), fmt(a), fmt(f), fmt(r.p_i_total),
                                fmt(r.conditional_error), fmt(base)});
            }
        }
    }
    emit(c, "tpsk", cfg,
         {"m", "alpha_sq", "f", "p_i_total", "conditional_error",
          "baseline_conditional_error"},
         rows);
    return 0;
}

int run_mpsk_scaling(const Cfg& c) {
    if (c.m_min < 3 || c.m_max < c.m_min)
        throw std::invalid_argument("m range must satisfy 3 <= m_min <= m_max");
    json cfg;
    cfg["m_min"] = c.m_min;
    cfg["m_max"] = c.m_max;
    cfg["alpha_per_bit"] = c.alpha_per_bit;
    std::vector<int> m_range;
    for (int m = c.m_min; m <= c.m_max; ++m) m_range.push_back(m);
    std::vector<std::vector<std::string>> rows;
    for (const auto& pt : oim::scaling_study(m_range, c.alpha_per_bit))
        rows.push_back({fmt(pt.m), fmt(c.alpha_per_bit), fmt(pt.log10_p_conc_max)});
    emit(c, "mpsk-scaling", cfg, {"m", "alpha_sq_per_bit", "log10_p_conc_max"}, rows);
    return 0;
}

int run_gap(const Cfg& c) {
    json cfg;
    cfg["alpha_sq"] = alpha_json(c);
    cfg["r_values"] = c.r_values;
    cfg["n_bins"] = c.gap_n_bins;
    std::vector<std::vector<std::string>> rows;
    for (double a : c.alpha_sq) {
        for (const auto& [r, g_sq] : oim::gap_scaling(a, c.r_values, c.gap_n_bins))
            rows.push_back({fmt(a), fmt(r), fmt(g_sq)});
    }
    emit(c, "gap", cfg, {"alpha_sq", "r", "g_sq"}, rows);
    return 0;
}

void add_out_options(CLI::App* sub, Cfg& c) {
    sub->add_option("--config", c.config_path, "JSON config file (flags override it)");
    sub->add_option("--out", c.out,
                    "output CSV path (stdout if omitted; relative paths resolve "
                    "against OIM_OUT_DIR)");
}

void add_imp_options(CLI::App* sub, Cfg& c) {
    sub->add_option("--eta", c.eta, "detection efficiency in [0,1]");
    sub->add_option("--xi", c.xi, "interference visibility in [0,1]");
    sub->add_option("--nu", c.nu, "dark counts per pulse");
    sub->add_option("--r-max", c.r_max, "displacement power cap |u|^2 <= r_max*alpha_sq");
    sub->add_option("--dac-bits", c.dac_bits, "waveform DAC bits (0 disables)");
    sub->add_option("--n-bins", c.n_bins, "time bins per pulse");
}

void add_strategy_options(CLI::App* sub, Cfg& c) {
    sub->add_option("--target-pi", c.target_pi, "inconclusive probability target");
    sub->add_option("--tol", c.tol, "solver tolerance on the target");
    sub->add_option("--t1", c.t1, "explicit switch time (skips the solver)");
    sub->add_option("--v", c.v, "explicit nulling weight, used with --t1");
    sub->add_option("--n0", c.n0, "explicit count offset, used with --t1");
}

// Scans argv ahead of CLI11 so config-file values become defaults that
// command-line flags then override.
std::string find_config_path(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) return argv[i + 1];
        if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
    }
    return {};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"displacement + photon-counting receiver: bounds, tradeoff solver,\n"
                 "Monte-Carlo simulator and M-PSK extensions"};
    app.require_subcommand(1);

    Cfg c;
    const std::string config_path = find_config_path(argc, argv);
    if (!config_path.empty()) {
        std::ifstream f(config_path);
        if (!f) {
            std::fprintf(stderr, "error: cannot read config file: %s\n", config_path.c_str());
            return 4;
        }
        json j;
        try {
            f >> j;
            overlay_config(c, j);
        } catch (const json::exception& e) {
            std::fprintf(stderr, "error: bad config file: %s\n", e.what());
            return 2;
        } catch (const std::invalid_argument& e) {
            std::fprintf(stderr, "error: %s\n", e.what());
            return 2;
        }
    }

    CLI::App* bounds = app.add_subcommand("bounds", "closed-form benchmark error rates");
    bounds->add_option("--alpha-sq", c.alpha_sq, "mean photon numbers")->delimiter(',');
    bounds->add_option("--p", c.p, "prior of the + hypothesis");
    add_out_options(bounds, c);

    CLI::App* tradeoff =
        app.add_subcommand("tradeoff", "error vs inconclusive-probability frontier");
    tradeoff->add_option("--alpha-sq", c.alpha_sq, "mean photon numbers")->delimiter(',');
    tradeoff->add_option("--p", c.p, "prior of the + hypothesis");
    tradeoff->add_option("--pi-grid", c.pi_grid, "explicit inconclusive targets")->delimiter(',');
    tradeoff->add_option("--pi-points", c.pi_points, "grid size when --pi-grid is omitted");
    tradeoff->add_option("--pi-frac", c.pi_frac,
                         "grid upper edge as a fraction of the unambiguous bound");
    tradeoff->add_option("--tol", c.tol, "solver tolerance on the target");
    tradeoff->add_flag("--usd", c.usd, "append the unambiguous endpoint row");
    add_imp_options(tradeoff, c);
    add_out_options(tradeoff, c);

    CLI::App* mc = app.add_subcommand("montecarlo", "trial-level simulation of one strategy");
    mc->add_option("--alpha-sq", c.alpha_sq, "mean photon numbers")->delimiter(',');
    mc->add_option("--p", c.p, "prior of the + hypothesis");
    add_strategy_options(mc, c);
    add_imp_options(mc, c);
    mc->add_option("--trials", c.trials, "trials per alpha");
    mc->add_option("--batches", c.batches, "batches for the scatter estimate");
    auto* mc_seed = mc->add_option("--seed", c.seed, "master seed (generated if omitted)");
    mc->add_option("--threads", c.threads, "worker threads (0 = hardware)");
    mc->add_option("--dump-trials", c.dump_trials,
                   "write the first N trial records next to --out");
    add_out_options(mc, c);

    CLI::App* dolinar =
        app.add_subcommand("dolinar", "minimum-error sweep: model, trials and bounds");
    dolinar->add_option("--alpha-sq", c.alpha_sq, "mean photon numbers")->delimiter(',');
    dolinar->add_option("--p", c.p, "prior of the + hypothesis");
    add_imp_options(dolinar, c);
    dolinar->add_option("--trials", c.trials, "trials per alpha");
    dolinar->add_option("--batches", c.batches, "batches for the scatter estimate");
    auto* dol_seed = dolinar->add_option("--seed", c.seed, "master seed (generated if omitted)");
    dolinar->add_option("--threads", c.threads, "worker threads (0 = hardware)");
    add_out_options(dolinar, c);

    CLI::App* waveform = app.add_subcommand("waveform", "per-bin displacement magnitudes");
    waveform->add_option("--alpha-sq", c.alpha_sq, "mean photon number (first value used)")
        ->delimiter(',');
    waveform->add_option("--p", c.p, "prior of the + hypothesis");
    add_strategy_options(waveform, c);
    add_imp_options(waveform, c);
    add_out_options(waveform, c);

    CLI::App* evolve = app.add_subcommand("evolve", "deterministic probability trace");
    evolve->add_option("--alpha-sq", c.alpha_sq, "mean photon number (first value used)")
        ->delimiter(',');
    evolve->add_option("--p", c.p, "prior of the + hypothesis");
    add_strategy_options(evolve, c);
    add_imp_options(evolve, c);
    add_out_options(evolve, c);

    CLI::App* tpsk =
        app.add_subcommand("tpsk", "hybrid ternary-PSK measurement vs heterodyne baseline");
    tpsk->add_option("--alpha-sq", c.alpha_sq, "total mean photon numbers")->delimiter(',');
    tpsk->add_option("--f", c.f_values, "elimination-stage energy fractions")->delimiter(',');
    tpsk->add_option("--pi2-grid", c.pi2_grid, "stage-2 inconclusive budgets")->delimiter(',');
    tpsk->add_option("--n-bins", c.n_bins, "time bins of the binary stage");
    add_out_options(tpsk, c);

    CLI::App* scaling =
        app.add_subcommand("mpsk-scaling", "elimination ceiling vs alphabet size");
    scaling->add_option("--m-min", c.m_min, "smallest alphabet size");
    scaling->add_option("--m-max", c.m_max, "largest alphabet size");
    scaling->add_option("--alpha-per-bit", c.alpha_per_bit, "mean photon number per bit");
    add_out_options(scaling, c);

    CLI::App* gap = app.add_subcommand("gap", "power-cap gap scaling of the unambiguous endpoint");
    gap->add_option("--alpha-sq", c.alpha_sq, "mean photon numbers")->delimiter(',');
    gap->add_option("--r-values", c.r_values, "power ratios R")->delimiter(',');
    gap->add_option("--n-bins", c.gap_n_bins, "time bins per pulse");
    add_out_options(gap, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (mc_seed->count() > 0 || dol_seed->count() > 0) c.has_seed = true;

    try {
        if (*bounds) return run_bounds(c);
        if (*tradeoff) return run_tradeoff(c);
        if (*mc) return run_montecarlo(c);
        if (*dolinar) return run_dolinar(c);
        if (*waveform) return run_waveform(c);
        if (*evolve) return run_evolve(c);
        if (*tpsk) return run_tpsk(c);
        if (*scaling) return run_mpsk_scaling(c);
        if (*gap) return run_gap(c);
    } catch (const oim::SolveError& e) {
        std::fprintf(stderr, "solver failed: %s (closest inconclusive probability: %s)\n",
                     e.what(), oim::format_g9(e.best_pi).c_str());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return 2;
    } catch (const std::ios_base::failure& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
