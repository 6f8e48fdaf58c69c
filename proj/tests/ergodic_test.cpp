#include <doctest.h>

#include <cmath>
#include <numbers>

#include "subtile/config.hpp"
#include "subtile/ergodic.hpp"
#include "subtile/errors.hpp"
#include "subtile/experiment.hpp"
#include "subtile/reference.hpp"
#include "subtile/rng.hpp"

using namespace subtile;

namespace {

Model model_of(const std::string& name) { return make_model(builtin_substitution(name)); }

}  // namespace

TEST_CASE("integral_mu") {
    Model sym = model_of("sym95");
    CylindricalFunction f = CylindricalFunction::constants(*sym.sub, {1.0, -1.0});
    CHECK(integral_mu(f, sym.freq) == doctest::Approx(0.0));

    CylindricalFunction c = CylindricalFunction::constants(*sym.sub, {2.5, 2.5});
    CHECK(integral_mu(c, sym.freq) == doctest::Approx(2.5));

    Model ab = model_of("ab42");
    CylindricalFunction g = CylindricalFunction::constants(*ab.sub, {1.0, 0.0});
    CHECK(integral_mu(g, ab.freq) == doctest::Approx(0.5));
}

TEST_CASE("supertile integrals") {
    Model sym = model_of("sym95");
    CylindricalFunction f = CylindricalFunction::constants(*sym.sub, {1.0, -1.0});
    CHECK(supertile_integral(*sym.sub, f, 0, 1) == doctest::Approx(-1.0));
    CHECK(supertile_integral(*sym.sub, f, 1, 0) == doctest::Approx(5.0));  // 7 - 2

    CylindricalFunction one = CylindricalFunction::constants(*sym.sub, {1.0, 1.0});
    for (int k = 0; k <= 5; ++k)
        CHECK(supertile_integral(*sym.sub, one, k, 0) ==
              doctest::Approx(std::pow(9.0, k) * sym.sub->volume(0)));
}

TEST_CASE("ergodic integral of a constant recovers ball volume") {
    Model sym = model_of("sym95");
    Window w = make_window(sym.sub, 0, 6);
    CylindricalFunction one = CylindricalFunction::constants(*sym.sub, {1.0, 1.0});
    for (double rho : {7.5, 31.0, 100.5}) {
        double v = ergodic_integral(one, w, rho);
        CHECK(std::abs(v - std::numbers::pi * rho * rho) <= 1e-9 * rho);
    }
    CHECK(ergodic_integral(one, w, 0.0) == 0.0);
}

TEST_CASE("ergodic integral equals the flat enumeration") {
    for (const std::string& name : builtin_names()) {
        Model m = model_of(name);
        const Substitution& sub = *m.sub;
        double pad = sub.max_tile_side() + 2;
        int n = levels_for(sub, 0, 64.3 + pad);
        Window w = make_window(m.sub, 0, n);
        Patch patch = materialize(sub, 0, n);
        CylindricalFunction f = default_function(sub, m.freq);
        Rng rng(53);
        std::vector<Vec2> anchors = sample_anchors(w, 64.3 + pad, 5, rng);
        for (const Vec2& a : anchors) {
            double rho = rng.uniform(3.0, 64.3);
            double hier = ergodic_integral(f, w.with_anchor(a), rho);
            double flat = ergodic_integral_reference(sub, f, patch, a, rho);
            CHECK(std::abs(hier - flat) <= 1e-8);
        }
    }
}

TEST_CASE("ergodic integral handles refined profiles") {
    Model sym = model_of("sym95");
    const Substitution& sub = *sym.sub;
    // checkerboard on a 2x2 refinement of each unit tile
    CylindricalFunction f = CylindricalFunction::table(
        sub, 2, {{1.0, -1.0, -1.0, 1.0}, {-1.0, 1.0, 1.0, -1.0}}, "checker");
    CHECK(f.integral(0) == doctest::Approx(0.0));
    CHECK(f.integral_sq(0) == doctest::Approx(1.0));

    int n = levels_for(sub, 0, 20);
    Window w = make_window(sym.sub, 0, n);
    Patch patch = materialize(sub, 0, n);
    Rng rng(59);
    std::vector<Vec2> anchors = sample_anchors(w, 20, 4, rng);
    for (const Vec2& a : anchors) {
        double rho = rng.uniform(2.0, 15.0);
        double hier = ergodic_integral(f, w.with_anchor(a), rho);
        double flat = ergodic_integral_reference(sub, f, patch, a, rho);
        CHECK(std::abs(hier - flat) <= 1e-8);
    }
}

TEST_CASE("deviation residual vanishes on supertile supports") {
    for (const std::string& name : {std::string("sym95"), std::string("ab42")}) {
        Model m = model_of(name);
        CylindricalFunction f = CylindricalFunction::constants(*m.sub, {1.0, -1.0});
        for (int k = 0; k <= 6; ++k)
            for (int j = 0; j < m.sub->num_types(); ++j)
                CHECK(std::abs(deviation_residual_box(*m.sub, m.sd, m.freq, f, k, j)) <= 1e-9);
    }
}

TEST_CASE("deviation residual vanishes for constants on supertile supports") {
    Model sym = model_of("sym95");
    CylindricalFunction c = CylindricalFunction::constants(*sym.sub, {3.25, 3.25});
    for (int k = 0; k <= 6; ++k)
        for (int j = 0; j < 2; ++j)
            CHECK(std::abs(deviation_residual_box(*sym.sub, sym.sd, sym.freq, c, k, j)) <=
                  1e-9 * std::pow(9.0, k));
}

TEST_CASE("fit_exponent: exact power law and edge cases") {
    ExperimentSeries s;
    s.example = "synthetic";
    for (int N = 1; N <= 8; ++N) {
        double R = std::pow(2.0, N);
        s.rows.push_back({N, R, 0.0, std::pow(R, 1.5), 0.0, 1});
    }
    FitResult fit = fit_exponent(s, 0);
    CHECK(std::abs(fit.slope - 1.5) <= 1e-12);
    CHECK(fit.stderr_ <= 1e-12);

    ExperimentSeries flat;
    for (int N = 1; N <= 6; ++N) flat.rows.push_back({N, std::pow(2.0, N), 0.0, 7.25, 0.0, 1});
    CHECK(std::abs(fit_exponent(flat, 0).slope) <= 1e-12);

    ExperimentSeries short_series;
    for (int N = 1; N <= 3; ++N)
        short_series.rows.push_back({N, std::pow(2.0, N), 0.0, 1.0, 0.0, 1});
    CHECK_THROWS_AS(fit_exponent(short_series, 0), InsufficientData);
    CHECK_THROWS_AS(fit_exponent(s, 6), InsufficientData);
}

TEST_CASE("exponent fits agree across disjoint anchor sets") {
    Model sym = model_of("sym95");
    CylindricalFunction f = default_function(*sym.sub, sym.freq);
    Sampling s1{24, 1001, 2};
    Sampling s2{24, 2002, 2};
    DeviationSeries a = deviation_series(sym, f, 1, 4, s1);
    DeviationSeries b = deviation_series(sym, f, 1, 4, s2);
    FitResult fa = fit_exponent(a.sums, 0);
    FitResult fb = fit_exponent(b.sums, 0);
    CHECK(std::abs(fa.slope - fb.slope) <= 2.0 * (fa.stderr_ + fb.stderr_) + 0.05);
}

TEST_CASE("residual stays boundary-sized for refined profiles") {
    // A checkerboard profile defeats the exact telescoping of per-tile
    // constants, so the residual is genuinely boundary-driven; its growth
    // must stay below the d-1+0.15 bound.
    Model sym = model_of("sym95");
    CylindricalFunction f = CylindricalFunction::table(
        *sym.sub, 2, {{1.0, -1.0, -1.0, 1.0}, {-1.0, 1.0, 1.0, -1.0}}, "checker");
    Sampling s{32, 811, 2};
    DeviationSeries dev = deviation_series(sym, f, 2, 5, s);
    bool nonzero = false;
    for (const SeriesRow& r : dev.residuals.rows) nonzero = nonzero || r.rms > 1e-9;
    CHECK(nonzero);
    FitResult fit = fit_exponent(dev.residuals, 0);
    CHECK(fit.slope <= 1.15);
}

TEST_CASE("profile integral caching matches direct sums") {
    Model table = model_of("table");
    CylindricalFunction f = CylindricalFunction::table(
        *table.sub, 2, {{0.5, -1.0, 2.0, 0.25}, {1.0, 1.0, -0.5, 0.75}}, "mixed");
    // type 0 is 1x2, refined 2x2 -> subcells of volume 1/2 * 1 = wait: the
    // extent is (1,2), so subcells are 0.5 x 1 with volume 0.5.
    double direct0 = (0.5 - 1.0 + 2.0 + 0.25) * 0.5;
    CHECK(f.integral(0) == doctest::Approx(direct0).epsilon(1e-12));
    double direct0sq = (0.25 + 1.0 + 4.0 + 0.0625) * 0.5;
    CHECK(f.integral_sq(0) == doctest::Approx(direct0sq).epsilon(1e-12));
}
