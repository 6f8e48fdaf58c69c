// Acceptance suite: one line per criterion, [PASS]/[FAIL] with details and
// timing. Every tolerance is pinned here in code. Exit status is the number
// of failed criteria.

#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "subtile/config.hpp"
#include "subtile/experiment.hpp"
#include "subtile/io.hpp"
#include "subtile/reference.hpp"
#include "subtile/rng.hpp"

using namespace subtile;

namespace {

struct Result {
    bool pass = false;
    std::string detail;
};

int g_threads = 2;

Model model_of(const std::string& name) { return make_model(builtin_substitution(name)); }

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

// --- 1: spectral data exactness --------------------------------------------
Result c1_spectral_exactness() {
    Model table = model_of("table");
    Model ab = model_of("ab42");
    Model sym = model_of("sym95");
    double e1 = std::abs(table.sd.theta1 - 4.0);
    double e2 = std::abs(ab.sd.alpha - 0.5);
    double a_closed = 2.0 * std::log(5.0) / std::log(9.0);
    double e3 = std::abs(sym.sd.alpha - a_closed);
    bool pass = e1 <= 1e-9 && e2 <= 1e-12 && e3 <= 1e-12;
    return {pass, "table |theta1-4|=" + fmt(e1) + ", ab42 |alpha-1/2|=" + fmt(e2) +
                      ", sym95 |alpha-2ln5/ln9|=" + fmt(e3)};
}

// --- 2: exact self-similarity ----------------------------------------------
Result c2_self_similarity() {
    long long checked = 0;
    for (const std::string& name : builtin_names()) {
        Substitution sub = builtin_substitution(name);
        Window w = make_window(sub, 0, 6);
        Rng rng(211);
        std::vector<std::pair<std::vector<long long>, long long>> eigens = {
            {{1, 1}, std::llround(std::pow(sub.lambda, sub.dim))}};
        if (name == "ab42") eigens.push_back({{1, -1}, 2});
        if (name == "sym95") eigens.push_back({{1, -1}, 5});
        if (name == "table") eigens.push_back({{1, -1}, 0});
        for (auto& [v, theta] : eigens) {
            for (int trial = 0; trial < 100; ++trial) {
                int k = static_cast<int>(rng.uniform_int(5));
                SupertileDomain dom;
                for (int parts = 0; parts < 3; ++parts) {
                    Vec2 p{rng.uniform(0.0, w.extent()[0]),
                           sub.dim == 2 ? rng.uniform(0.0, w.extent()[1]) : 0.5};
                    dom.parts.push_back(w.supertile_at(p, k));
                }
                SelfSimilarityReport rep = self_similarity_supertiles(sub, v, theta, dom);
                if (rep.lhs != rep.rhs)
                    return {false, name + ": mismatch " + fmt(rep.lhs) + " vs " + fmt(rep.rhs)};
                ++checked;
            }
        }
    }
    return {true, std::to_string(checked) + " unions, zero residual in int64"};
}

// --- 3: oracle equivalence --------------------------------------------------
Result c3_oracle_equivalence() {
    double worst = 0;
    for (const std::string& name : builtin_names()) {
        Model m = model_of(name);
        const Substitution& sub = *m.sub;
        double pad = sub.max_tile_side() + 2;
        int n = levels_for(sub, 0, 64.0 + pad);
        Window w = make_window(m.sub, 0, n);
        Patch patch = materialize(sub, 0, n);
        CylindricalFunction f = default_function(sub, m.freq);
        Rng rng(307);
        std::vector<Vec2> anchors = sample_anchors(w, 64.0 + pad, 50, rng);
        for (const Vec2& a : anchors) {
            double rho = rng.uniform(2.0, 64.0);
            double hier = ergodic_integral(f, w.with_anchor(a), rho);
            double flat = ergodic_integral_reference(sub, f, patch, a, rho);
            worst = std::max(worst, std::abs(hier - flat));
        }
    }
    return {worst <= 1e-8, "max |hierarchical - flat| = " + fmt(worst) + " over 150 pairs"};
}

// --- 4: exact deviation expansion -------------------------------------------
Result c4_deviation_exact() {
    double worst = 0;
    for (const std::string& name : {std::string("sym95"), std::string("ab42")}) {
        Model m = model_of(name);
        CylindricalFunction f = CylindricalFunction::constants(*m.sub, {1.0, -1.0});
        for (int k = 0; k <= 6; ++k)
            for (int j = 0; j < m.sub->num_types(); ++j)
                worst = std::max(worst,
                                 std::abs(deviation_residual_box(*m.sub, m.sd, m.freq, f, k, j)));
    }
    return {worst <= 1e-9, "max |residual| on supertile supports = " + fmt(worst)};
}

// --- 5: additive-measure growth exponent ------------------------------------
Result c5_phi_growth() {
    Model sym = model_of("sym95");
    PhiVector v = phi_from_left(sym.sd, 1);
    Sampling s{64, 501, g_threads};
    ExperimentSeries series = phi_growth_series(sym, v, 2, 6, s);
    FitResult fit = fit_exponent(series, 0);
    bool pass = fit.slope >= 1.345 && fit.slope <= 1.585;
    return {pass, "sym95 slope " + fmt(fit.slope) + " (alpha " + fmt(sym.sd.alpha) +
                      " +- 0.12), stderr " + fmt(fit.stderr_)};
}

// --- 6: ergodic deviation exponent ------------------------------------------
Result c6_deviation_exponent() {
    Model ab = model_of("ab42");
    CylindricalFunction fa = default_function(*ab.sub, ab.freq);
    Sampling sa{64, 601, g_threads};
    DeviationSeries da = deviation_series(ab, fa, 2, 9, sa);
    FitResult fia = fit_exponent(da.sums, 0);
    bool pass_a = std::abs(fia.slope - 0.5) <= 0.05;

    Model sym = model_of("sym95");
    CylindricalFunction fs = default_function(*sym.sub, sym.freq);
    Sampling ss{64, 602, g_threads};
    DeviationSeries ds = deviation_series(sym, fs, 2, 6, ss);
    FitResult fis = fit_exponent(ds.sums, 0);
    bool pass_s = std::abs(fis.slope - sym.sd.alpha) <= 0.12;

    return {pass_a && pass_s, "ab42 slope " + fmt(fia.slope) + " (0.5 +- 0.05), sym95 slope " +
                                  fmt(fis.slope) + " (" + fmt(sym.sd.alpha) + " +- 0.12)"};
}

// --- 7: hypothesis-violated control ------------------------------------------
Result c7_table_control() {
    Model table = model_of("table");
    CylindricalFunction f = default_function(*table.sub, table.freq);
    Sampling s{64, 701, g_threads};
    DeviationSeries dev = deviation_series(table, f, 2, 8, s);
    FitResult fit = fit_exponent(dev.sums, 0);
    bool pass = fit.slope <= 1.15;
    return {pass, "table RMS(S) slope " + fmt(fit.slope) + " <= 1.15 (boundary-dominated)"};
}

// --- 8: spectral scaling ------------------------------------------------------
Result c8_spectral_scaling() {
    Model ab = model_of("ab42");
    CylindricalFunction fa = default_function(*ab.sub, ab.freq);
    Sampling sa{64, 801, g_threads};
    ScalingProfile pa = run_scaling(ab, fa, KernelSpec{}, 1, 7, sa);
    if (!pa.fit) return {false, "ab42: no usable fit"};
    bool pass_a = pa.hypothesis_ok && std::abs(pa.fit->slope + 1.0) <= 0.15;

    Model sym = model_of("sym95");
    CylindricalFunction fs = default_function(*sym.sub, sym.freq);
    Sampling ss{32, 802, g_threads};
    ScalingProfile ps = run_scaling(sym, fs, KernelSpec{}, 1, 5, ss);
    if (!ps.fit) return {false, "sym95: no usable fit"};
    double expected = 2.0 * sym.sd.alpha - 4.0;  // -1.0701
    bool pass_s = ps.hypothesis_ok && std::abs(ps.fit->slope - expected) <= 0.25;

    return {pass_a && pass_s, "ab42 slope " + fmt(pa.fit->slope) + " (-1 +- 0.15), sym95 slope " +
                                  fmt(ps.fit->slope) + " (" + fmt(expected) + " +- 0.25)"};
}

// --- 9: estimator sanity ------------------------------------------------------
Result c9_estimator_sanity() {
    Model ab = model_of("ab42");
    Window w = make_window(ab.sub, 0, 8);
    KernelSpec kernel;
    Rng rng(901);
    std::vector<Vec2> anchors = sample_anchors(w, kernel.tau * 64 + 4, 16, rng);

    CylindricalFunction c = CylindricalFunction::constants(*ab.sub, {2.0, 2.0}, "const2");
    std::vector<std::pair<double, double>> pts;
    double worst = 0;
    for (int N = 1; N <= 3; ++N) {
        double R = std::pow(4.0, N);
        Estimate e = spectral_form(c, w, R, kernel, anchors, g_threads);
        worst = std::max(worst, std::abs(e.value - 4.0));
        pts.emplace_back(std::log(R), std::log(e.value));
    }
    double slope =
        (pts.back().second - pts.front().second) / (pts.back().first - pts.front().first);

    CylindricalFunction z = CylindricalFunction::constants(*ab.sub, {0.0, 0.0}, "zero");
    double zmax = 0;
    for (int N = 1; N <= 3; ++N) {
        Estimate e = spectral_form(z, w, std::pow(4.0, N), kernel, anchors, g_threads);
        zmax = std::max(zmax, std::abs(e.value));
    }
    bool pass = std::abs(slope) <= 0.01 && worst <= 1e-9 * 4.0 && zmax == 0.0;
    return {pass, "G(const)=c^2 max err " + fmt(worst) + ", slope " + fmt(slope) +
                      " (0 +- 0.01), G(zero) max " + fmt(zmax)};
}

// --- 10: eta-profile coherence ------------------------------------------------
Result c10_eta_profile() {
    Model ab = model_of("ab42");
    CylindricalFunction f = default_function(*ab.sub, ab.freq);
    Sampling s{64, 1001, g_threads};
    std::vector<double> a_grid{0.5, 1.0, 2.0, 4.0};
    std::vector<int> Ns{4, 5, 6};
    std::vector<EtaRow> rows = run_eta(ab, f, KernelSpec{}, a_grid, Ns, s);

    auto row_of = [&](double a, int N) -> const EtaRow& {
        for (const EtaRow& r : rows)
            if (r.N == N && std::abs(r.a - a) < 1e-12) return r;
        throw Error("eta row missing");
    };

    // monotone non-decreasing in a, up to 3x stderr
    for (int N : Ns)
        for (size_t i = 0; i + 1 < a_grid.size(); ++i) {
            const EtaRow& lo = row_of(a_grid[i], N);
            const EtaRow& hi = row_of(a_grid[i + 1], N);
            if (hi.value < lo.value - 3.0 * (lo.stderr_ + hi.stderr_))
                return {false, "monotonicity fails at a=" + fmt(a_grid[i + 1]) +
                                    ", N=" + std::to_string(N)};
        }

    // dilation consistency: profile(lambda a, N) vs lambda^{2d-2alpha} profile(a, N+1)
    double lam_pow = std::pow(4.0, 2.0 * 1 - 2.0 * ab.sd.alpha);  // = 4
    double worst_gap = 0;
    for (double a : {0.5, 1.0})
        for (int N : {4, 5}) {
            const EtaRow& lhs = row_of(4.0 * a, N);
            const EtaRow& rhs = row_of(a, N + 1);
            double gap = std::abs(lhs.value - lam_pow * rhs.value);
            double tol = 3.0 * (lhs.stderr_ + lam_pow * rhs.stderr_);
            worst_gap = std::max(worst_gap, gap / std::max(tol, 1e-30));
            if (gap > tol)
                return {false, "dilation consistency fails at a=" + fmt(a) +
                                    ", N=" + std::to_string(N) + ": gap " + fmt(gap) + " > " +
                                    fmt(tol)};
        }
    return {true, "monotone in a; dilation identity within 3x stderr (worst ratio " +
                      fmt(worst_gap) + ")"};
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
        if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc)
            g_threads = std::atoi(argv[++i]);
    }

    std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
        {"spectral data exactness", c1_spectral_exactness},
        {"exact self-similarity on supertile unions", c2_self_similarity},
        {"hierarchical vs flat ball integrals", c3_oracle_equivalence},
        {"exact deviation expansion on supertile supports", c4_deviation_exact},
        {"additive measure growth exponent (sym95)", c5_phi_growth},
        {"ergodic deviation exponents (ab42, sym95)", c6_deviation_exponent},
        {"boundary-dominated control (table)", c7_table_control},
        {"spectral scaling exponents (ab42, sym95)", c8_spectral_scaling},
        {"estimator sanity (constants and zero)", c9_estimator_sanity},
        {"eta profile coherence (ab42)", c10_eta_profile},
    };

    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        int id = static_cast<int>(i) + 1;
        if (only != 0 && only != id) continue;
        auto start = std::chrono::steady_clock::now();
        Result r;
        try {
            r = criteria[i].second();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << "criterion " << id << ": "
                  << criteria[i].first << " — " << r.detail << " [" << fmt(secs) << " s]\n";
        if (!r.pass) ++failures;
    }
    std::cout << (failures == 0 ? "ALL CRITERIA PASSED\n"
                                : std::to_string(failures) + " CRITERIA FAILED\n");
    return failures;
}
