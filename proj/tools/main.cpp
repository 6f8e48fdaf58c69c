// Command-line front end: substitution info, window generation, additive
// measure growth, ergodic deviation, spectral scaling, invariant self tests
// and a heuristic period scan. Outputs CSV series plus JSON summaries; all
// randomized experiments are reproducible from --seed.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <thread>

#include "subtile/config.hpp"
#include "subtile/errors.hpp"
#include "subtile/experiment.hpp"
#include "subtile/io.hpp"
#include "subtile/selftest.hpp"
#include "subtile/svg.hpp"

namespace fs = std::filesystem;
using namespace subtile;

namespace {

struct CommonOpts {
    std::string builtin;
    std::string config_path;
    std::string out_dir = "out";
    uint64_t seed = kDefaultSeed;
    int threads = 0;
    int anchors = 64;
    int radii_min = 0;
    int radii_max = 6;
    int drop_head = 2;
    double tau = 6.0;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool radial) {
    auto* b = cmd->add_option("--builtin", o.builtin, "built-in substitution (table|ab42|sym95)");
    auto* c = cmd->add_option("--config", o.config_path, "substitution config JSON");
    b->excludes(c);
    cmd->add_option("--out", o.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
    cmd->add_option("--threads", o.threads, "worker threads (0 = hardware)");
    if (radial) {
        cmd->add_option("--anchors", o.anchors, "anchor sample count")->capture_default_str();
        cmd->add_option("--radii-min", o.radii_min, "smallest radius exponent N (R = lambda^N)")
            ->capture_default_str();
        cmd->add_option("--radii-max", o.radii_max, "largest radius exponent N")
            ->capture_default_str();
        cmd->add_option("--drop-head", o.drop_head,
                        "series rows to discard before exponent fits")
            ->capture_default_str();
    }
}

Model load_model(const CommonOpts& o) {
    if (!o.builtin.empty()) return make_model(builtin_substitution(o.builtin));
    if (!o.config_path.empty()) return make_model(parse_config(o.config_path));
    throw ParseError("one of --builtin or --config is required");
}

Sampling sampling_of(const CommonOpts& o) {
    Sampling s;
    s.anchors = o.anchors;
    s.seed = o.seed;
    s.threads = o.threads > 0 ? o.threads
                              : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    return s;
}

void write_file(const fs::path& path, const std::string& text) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
}

std::string error_json(const char* type, const std::string& message) {
    nlohmann::ordered_json j;
    j["error"] = type;
    j["message"] = message;
    return j.dump(2);
}

double default_fit_tolerance(const Model& m, const std::string& quantity) {
    if (quantity == "spectral_G") return m.sub->dim == 1 ? 0.15 : 0.25;
    if (quantity == "ergodic_sum") return m.sub->dim == 1 ? 0.05 : 0.12;
    return 0.12;
}

std::string nonperiodicity_note(const Substitution& sub) {
    return sub.asserted_nonperiodic
               ? "nonperiodicity asserted, not proven; see period-scan"
               : "substitution not asserted nonperiodic";
}

int cmd_info(const CommonOpts& o, bool emit_cfg) {
    Model m = load_model(o);
    if (emit_cfg) {
        std::cout << emit_config(*m.sub);
        return 0;
    }
    std::string text = info_json(m);
    std::cout << text << "\n";
    if (!o.out_dir.empty()) write_file(fs::path(o.out_dir) / "info.json", text + "\n");
    return 0;
}

int cmd_generate(const CommonOpts& o, int n_levels, int root, bool svg) {
    Model m = load_model(o);
    Window w = make_window(m.sub, root, n_levels);
    auto raster = m.sub->integral_lattice && w.extent()[0] * w.extent()[1] <= (1 << 24)
                      ? w.raster()
                      : nullptr;
    nlohmann::ordered_json j;
    j["example"] = m.sub->name;
    j["root_type"] = m.sub->prototiles[root].id;
    j["levels"] = n_levels;
    j["extent"] = {w.extent()[0], w.extent()[1]};
    j["anchor"] = {w.anchor()[0], w.anchor()[1]};
    j["margin"] = w.margin();
    if (raster) {
        std::vector<long long> counts(m.sub->num_types(), 0);
        Box all{{0, 0}, w.extent()};
        w.for_each_tile(all, [&](int type, Vec2) { ++counts[type]; });
        j["tile_counts"] = counts;
    }
    std::cout << j.dump(2) << "\n";
    if (svg) {
        double side = std::min(96.0, w.extent()[0]);
        Box region{{0, 0}, {side, m.sub->dim == 2 ? std::min(96.0, w.extent()[1]) : 1.0}};
        std::ostringstream os;
        write_patch_svg(os, w, region);
        write_file(fs::path(o.out_dir) / "patch.svg", os.str());
    }
    return 0;
}

int cmd_phi(const CommonOpts& o, int direction) {
    Model m = load_model(o);
    int n = direction - 1;
    if (n < 0 || n >= m.sd.expanding_dims) {
        std::cout << error_json("HypothesisViolated",
                                "direction " + std::to_string(direction) +
                                    " is not in the rapidly expanding part (dims = " +
                                    std::to_string(m.sd.expanding_dims) + ")")
                  << "\n";
        return 3;
    }
    PhiVector v = phi_from_left(m.sd, n);
    ExperimentSeries series = phi_growth_series(m, v, o.radii_min, o.radii_max, sampling_of(o));
    std::ostringstream csv;
    write_series_csv(csv, series);
    write_file(fs::path(o.out_dir) / "series.csv", csv.str());

    FitResult fit = fit_exponent(series, o.drop_head);
    double expected = m.sub->dim * std::log(std::abs(m.sd.eigenvalues[n])) / std::log(m.sd.theta1);
    bool pass = std::abs(fit.slope - expected) <= default_fit_tolerance(m, "phi_growth");
    std::string summary = fit_summary_json(m.sub->name, "phi_growth", fit, expected, pass,
                                           nonperiodicity_note(*m.sub), o.seed);
    write_file(fs::path(o.out_dir) / "fit.json", "[" + summary + "]\n");
    std::cout << summary << "\n";
    return 0;
}

int cmd_deviate(const CommonOpts& o) {
    Model m = load_model(o);
    CylindricalFunction f = default_function(*m.sub, m.freq);
    DeviationSeries dev = deviation_series(m, f, o.radii_min, o.radii_max, sampling_of(o));

    std::ostringstream s1, s2;
    write_series_csv(s1, dev.sums);
    write_series_csv(s2, dev.residuals);
    write_file(fs::path(o.out_dir) / "series.csv", s1.str());
    write_file(fs::path(o.out_dir) / "residual.csv", s2.str());

    int d = m.sub->dim;
    std::string note = nonperiodicity_note(*m.sub);
    std::vector<std::string> fits;

    FitResult fs_ = fit_exponent(dev.sums, o.drop_head);
    double exp_sum = m.sd.hypothesis_ok ? m.sd.alpha : std::numeric_limits<double>::quiet_NaN();
    bool pass_sum = m.sd.hypothesis_ok
                        ? std::abs(fs_.slope - exp_sum) <= default_fit_tolerance(m, "ergodic_sum")
                        : fs_.slope <= d - 1 + 0.15;
    fits.push_back(fit_summary_json(m.sub->name, "ergodic_sum", fs_, exp_sum, pass_sum,
                                    m.sd.hypothesis_ok ? note : "boundary-dominated control: slope bound " +
                                                                    fmt_double(d - 1 + 0.15) + "; " + note,
                                    o.seed));

    // The residual can vanish identically (complete expanding part with
    // per-tile constant profiles); fit only when there is signal.
    try {
        FitResult fr = fit_exponent(dev.residuals, o.drop_head);
        bool pass_res = fr.slope <= d - 1 + 0.15;
        fits.push_back(fit_summary_json(m.sub->name, "deviation_residual", fr,
                                        static_cast<double>(d - 1), pass_res,
                                        "upper bound d-1+0.15; " + note, o.seed));
    } catch (const InsufficientData&) {
        fits.push_back(fit_summary_json(m.sub->name, "deviation_residual", FitResult{}, d - 1,
                                        true, "residual numerically zero; expansion exact; " + note,
                                        o.seed));
    }

    std::string all = "[";
    for (size_t i = 0; i < fits.size(); ++i) all += (i ? ",\n" : "\n") + fits[i];
    all += "\n]\n";
    write_file(fs::path(o.out_dir) / "fit.json", all);
    std::cout << all;
    return 0;
}

int cmd_spectral(const CommonOpts& o) {
    Model m = load_model(o);
    CylindricalFunction f = default_function(*m.sub, m.freq);
    KernelSpec kernel;
    kernel.tau = o.tau;
    Sampling s = sampling_of(o);

    ScalingProfile prof = run_scaling(m, f, kernel, o.radii_min, o.radii_max, s);
    std::ostringstream csv;
    write_spectral_csv(csv, prof.series, kernel);
    write_file(fs::path(o.out_dir) / "series.csv", csv.str());

    std::string note = prof.note +
                       "finite-N stabilization witness only; the limit profile itself is not "
                       "computed; " +
                       nonperiodicity_note(*m.sub);
    bool pass = false;
    FitResult fit{};
    if (prof.fit) {
        fit = *prof.fit;
        pass = prof.hypothesis_ok &&
               std::abs(fit.slope - prof.expected_slope) <= default_fit_tolerance(m, "spectral_G");
    }
    std::string summary =
        fit_summary_json(m.sub->name, "spectral_G", fit, prof.expected_slope, pass, note, o.seed);
    write_file(fs::path(o.out_dir) / "fit.json", "[" + summary + "]\n");
    std::cout << summary << "\n";

    if (!prof.hypothesis_ok) {
        std::cout << error_json("HypothesisViolated", "scaling hypotheses fail: " + prof.note +
                                                          "(series written, eta profile skipped)")
                  << "\n";
        return 3;
    }

    // Small-ball witness on a dyadic-style grid around a = 1.
    std::vector<double> a_grid{0.5, 1.0, 2.0, 4.0};
    int Nhi = std::max(o.radii_min + 1, o.radii_max - 1);
    std::vector<int> Ns{Nhi - 1, Nhi};
    std::vector<EtaRow> eta = run_eta(m, f, kernel, a_grid, Ns, s);
    std::ostringstream etacsv;
    write_eta_csv(etacsv, m.sub->name, f.id, eta, s.anchors, s.seed);
    write_file(fs::path(o.out_dir) / "eta.csv", etacsv.str());
    return 0;
}

int cmd_selftest(const CommonOpts& o) {
    Model m = load_model(o);
    bool ok = run_selftest(m, std::cout);
    return ok ? 0 : 1;
}

int cmd_period_scan(const CommonOpts& o, long long bound) {
    Model m = load_model(o);
    PeriodScanResult res = period_scan(m, bound);
    nlohmann::ordered_json j;
    j["example"] = m.sub->name;
    j["bound"] = res.bound;
    j["probe_cells"] = res.probe_cells;
    if (res.found) j["period"] = {res.period[0], res.period[1]};
    else j["period"] = nullptr;
    j["note"] = res.found ? "translation symmetry found on the probe window"
                          : "no period up to the bound on the probe window (evidence only)";
    std::cout << j.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"self-similar substitution tilings: measures, deviations, spectral scaling"};
    app.require_subcommand(1);

    CommonOpts o;
    int n_levels = 4;
    int root = 0;
    bool svg = false;
    int direction = 2;
    long long bound = 12;

    CLI::App* info = app.add_subcommand("info", "incidence matrix, spectrum, frequencies");
    add_common(info, o, false);

    CLI::App* emitc = app.add_subcommand("emit-config", "canonical config JSON");
    add_common(emitc, o, false);

    CLI::App* gen = app.add_subcommand("generate", "window statistics and optional SVG");
    add_common(gen, o, false);
    gen->add_option("--n-levels", n_levels, "hierarchy depth")->capture_default_str();
    gen->add_option("--root", root, "root prototile index (0-based)")->capture_default_str();
    gen->add_flag("--svg", svg, "write patch.svg");

    CLI::App* phi = app.add_subcommand("phi", "additive measure growth series and fit");
    add_common(phi, o, true);
    phi->add_option("--direction", direction, "eigendirection (1-based, default theta2)")
        ->capture_default_str();

    CLI::App* dev = app.add_subcommand("deviate", "ergodic ball integrals and residual series");
    add_common(dev, o, true);

    CLI::App* spec = app.add_subcommand("spectral", "spectral scaling and eta witness");
    add_common(spec, o, true);
    spec->add_option("--tau", o.tau, "Gaussian truncation radius multiplier")->capture_default_str();

    CLI::App* self = app.add_subcommand("selftest", "exact invariant suite");
    add_common(self, o, false);

    CLI::App* scan = app.add_subcommand("period-scan", "heuristic translation period search");
    add_common(scan, o, false);
    scan->add_option("--bound", bound, "largest period (sup norm)")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    // The smoothed spectral estimator starts at N=1 unless told otherwise.
    if (spec->parsed() && spec->count("--radii-min") == 0) o.radii_min = 1;
    if (spec->parsed() && spec->count("--radii-max") == 0) o.radii_max = 5;

    try {
        if (info->parsed()) return cmd_info(o, false);
        if (emitc->parsed()) return cmd_info(o, true);
        if (gen->parsed()) return cmd_generate(o, n_levels, root, svg);
        if (phi->parsed()) return cmd_phi(o, direction);
        if (dev->parsed()) return cmd_deviate(o);
        if (spec->parsed()) return cmd_spectral(o);
        if (self->parsed()) return cmd_selftest(o);
        if (scan->parsed()) return cmd_period_scan(o, bound);
    } catch (const ParseError& e) {
        std::cout << error_json("ParseError", e.what()) << "\n";
        return 2;
    } catch (const GeometryError& e) {
        std::cout << error_json("GeometryError", e.what()) << "\n";
        return 2;
    } catch (const NotPrimitive& e) {
        std::cout << error_json("NotPrimitive", e.what()) << "\n";
        return 2;
    } catch (const LengthMismatch& e) {
        std::cout << error_json("LengthMismatch", e.what()) << "\n";
        return 2;
    } catch (const DegenerateSpectrum& e) {
        std::cout << error_json("DegenerateSpectrum", e.what()) << "\n";
        return 2;
    } catch (const HypothesisViolated& e) {
        std::cout << error_json("HypothesisViolated", e.what()) << "\n";
        return 3;
    } catch (const Error& e) {
        std::cout << error_json("Error", e.what()) << "\n";
        return 1;
    }
    return 0;
}
