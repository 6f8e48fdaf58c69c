#include "subtile/selftest.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <sstream>

#include "subtile/config.hpp"
#include "subtile/io.hpp"
#include "subtile/reference.hpp"

namespace subtile {

namespace {

// Integral rescaling of an eigenvector of S^t, verified exactly in int64.
std::optional<std::pair<std::vector<long long>, long long>> try_integer_eigen(
    const SpectralData& sd, int n) {
    if (n >= static_cast<int>(sd.left.size()) || sd.left[n].empty()) return std::nullopt;
    double theta = sd.eigenvalues[n];
    if (std::abs(theta - std::round(theta)) > 1e-9) return std::nullopt;
    double mn = 0;
    for (double x : sd.left[n])
        if (std::abs(x) > 1e-9 && (mn == 0 || std::abs(x) < mn)) mn = std::abs(x);
    if (mn == 0) return std::nullopt;
    std::vector<long long> v(sd.left[n].size());
    for (size_t i = 0; i < v.size(); ++i) {
        double scaled = sd.left[n][i] / mn;
        if (std::abs(scaled - std::round(scaled)) > 1e-9) return std::nullopt;
        v[i] = std::llround(scaled);
    }
    long long th = std::llround(theta);
    std::vector<long long> w = mat_t_vec(sd.S, v);
    for (size_t i = 0; i < v.size(); ++i)
        if (w[i] != th * v[i]) return std::nullopt;
    return std::make_pair(v, th);
}

struct Check {
    std::string name;
    std::function<std::pair<bool, std::string>()> fn;
};

}  // namespace

bool run_selftest(const Model& model, std::ostream& os) {
    const Substitution& sub = *model.sub;
    const SpectralData& sd = model.sd;
    const int m = sub.num_types();
    const int d = sub.dim;
    const double pad = sub.max_tile_side() + 2.0;

    std::vector<Check> checks;

    checks.push_back({"rule geometry", [&] {
        GeometryReport rep = validate_geometry(sub);
        return std::make_pair(rep.ok, rep.ok ? "exact cover" : rep.problems.front());
    }});

    checks.push_back({"theta1 = lambda^d", [&] {
        double want = std::pow(sub.lambda, d);
        double err = std::abs(sd.theta1 - want) / want;
        return std::make_pair(err <= 1e-9, "rel err " + fmt_double(err));
    }});

    checks.push_back({"column volume conservation", [&] {
        double worst = 0;
        for (int j = 0; j < m; ++j) {
            double s = 0;
            for (int i = 0; i < m; ++i) s += static_cast<double>(sub.incidence.at(i, j)) * sub.volume(i);
            worst = std::max(worst, std::abs(s - std::pow(sub.lambda, d) * sub.volume(j)));
        }
        return std::make_pair(worst <= 1e-9, "max abs err " + fmt_double(worst));
    }});

    checks.push_back({"biorthogonality", [&] {
        double worst = 0;
        for (int n = 0; n < m; ++n) {
            if (sd.left[n].empty()) continue;
            for (int k = 0; k < m; ++k) {
                if (sd.right[k].empty()) continue;
                double dot = 0;
                for (int i = 0; i < m; ++i) dot += sd.left[n][i] * sd.right[k][i];
                worst = std::max(worst, std::abs(dot - (n == k ? 1.0 : 0.0)));
            }
        }
        return std::make_pair(worst <= 1e-12, "max |l.r - delta| = " + fmt_double(worst));
    }});

    checks.push_back({"frequency normalization", [&] {
        double s = 0;
        bool pos = true;
        for (int t = 0; t < m; ++t) {
            pos = pos && model.freq[t] > 0;
            s += model.freq[t] * sub.volume(t);
        }
        return std::make_pair(pos && std::abs(s - 1.0) <= 1e-12,
                              "sum freq*vol = " + fmt_double(s));
    }});

    checks.push_back({"frequency invariance", [&] {
        double ratio = m >= 2 ? std::abs(sd.theta2) / sd.theta1 : 0.0;
        double C = 0;
        for (int n = 1; n <= 8; ++n) {
            IMat Sn = mat_pow(sub.incidence, n);
            for (int j = 0; j < m; ++j) {
                double inv_vol = 1.0 / (std::pow(sd.theta1, n) * sub.volume(j));
                double err = 0;
                for (int i = 0; i < m; ++i)
                    err = std::max(err, std::abs(static_cast<double>(Sn.at(i, j)) * inv_vol -
                                                 model.freq[i]));
                if (n == 1) C = std::max(C, ratio > 0 ? err / ratio : 0.0);
                double bound = ratio > 0 ? 1.5 * C * std::pow(ratio, n) + 1e-12 : 1e-12;
                if (err > bound)
                    return std::make_pair(false, "level " + std::to_string(n) + " err " +
                                                     fmt_double(err) + " > " + fmt_double(bound));
            }
        }
        return std::make_pair(true, std::string("decays like (theta2/theta1)^n"));
    }});

    checks.push_back({"self-similarity (exact)", [&] {
        Window w = make_window(model.sub, 0, 6);
        Rng rng(7);
        int tested = 0;
        for (int n = 0; n < m; ++n) {
            auto iv = try_integer_eigen(sd, n);
            if (!iv) continue;
            for (int trial = 0; trial < 25; ++trial) {
                int k = static_cast<int>(rng.uniform_int(5));
                SupertileDomain dom;
                for (int parts = 0; parts < 4; ++parts) {
                    Vec2 p{rng.uniform(0.0, w.extent()[0]),
                           d == 2 ? rng.uniform(0.0, w.extent()[1]) : 0.5};
                    dom.parts.push_back(w.supertile_at(p, k));
                }
                SelfSimilarityReport rep =
                    self_similarity_supertiles(sub, iv->first, iv->second, dom);
                if (rep.lhs != rep.rhs)
                    return std::make_pair(false, "mismatch at eigen #" + std::to_string(n + 1));
                ++tested;
            }
        }
        return std::make_pair(tested > 0, tested > 0 ? std::to_string(tested) + " unions exact"
                                                     : std::string("no integer eigenvector"));
    }});

    checks.push_back({"phi linearity", [&] {
        double need = std::pow(sub.lambda, 3) + pad;
        Window w = experiment_window(model, 0, need);
        Rng rng(11);
        std::vector<Vec2> anchors = sample_anchors(w, need, 4, rng);
        std::vector<double> va(m), vb(m);
        for (int i = 0; i < m; ++i) {
            va[i] = std::cos(1.0 + i);
            vb[i] = std::sin(2.0 + 2 * i);
        }
        std::vector<double> vc(m);
        for (int i = 0; i < m; ++i) vc[i] = 2.0 * va[i] - 3.0 * vb[i];
        double worst = 0;
        for (const Vec2& a : anchors) {
            Window wa = w.with_anchor(a);
            BallDecomposition dec = ball_decomposition(wa, std::pow(sub.lambda, 3));
            double fa = phi_plus_ball(phi_vector(sub, va, "a"), wa, dec);
            double fb = phi_plus_ball(phi_vector(sub, vb, "b"), wa, dec);
            double fc = phi_plus_ball(phi_vector(sub, vc, "c"), wa, dec);
            worst = std::max(worst, std::abs(fc - (2.0 * fa - 3.0 * fb)));
        }
        return std::make_pair(worst <= 1e-9, "max abs err " + fmt_double(worst));
    }});

    checks.push_back({"ball volume conservation", [&] {
        double need = 64 + pad;
        Window w = experiment_window(model, 0, need);
        Rng rng(13);
        std::vector<Vec2> anchors = sample_anchors(w, need, 20, rng);
        double worst = 0;
        for (const Vec2& a : anchors) {
            double R = rng.uniform(1.0, 64.0);
            Window wa = w.with_anchor(a);
            BallDecomposition dec = ball_decomposition(wa, R);
            double err = std::abs(dec.total_volume(sub) - ball_volume(d, R));
            double scale = std::max(1.0, std::pow(R, d - 1));
            worst = std::max(worst, err / scale);
        }
        return std::make_pair(worst <= 1e-9, "max scaled err " + fmt_double(worst));
    }});

    checks.push_back({"hierarchy vs flat expansion", [&] {
        int n = 3;
        Window w = make_window(model.sub, 0, n);
        Patch patch = materialize(sub, 0, n);
        for (const PlacedTile& t : patch) {
            Vec2 size = sub.tile_size(t.type);
            Vec2 mid{t.pos[0] + 0.5 * size[0], d == 2 ? t.pos[1] + 0.5 * size[1] : 0.5};
            Tile0 got = w.tile_at(mid);
            if (got.type != t.type || std::abs(got.anchor[0] - t.pos[0]) > 1e-9 ||
                (d == 2 && std::abs(got.anchor[1] - t.pos[1]) > 1e-9))
                return std::make_pair(false, "tile mismatch at x=" + fmt_double(mid[0]));
        }
        return std::make_pair(true, std::to_string(patch.size()) + " tiles agree");
    }});

    checks.push_back({"hierarchical vs flat ball integrals", [&] {
        CylindricalFunction f = default_function(sub, model.freq);
        double rho_max = 24;
        int n = levels_for(sub, 0, rho_max + pad);
        Window w = make_window(model.sub, 0, n);
        Patch patch = materialize(sub, 0, n);
        Rng rng(17);
        std::vector<Vec2> anchors = sample_anchors(w, rho_max + pad, 6, rng);
        double worst = 0;
        for (const Vec2& a : anchors) {
            double rho = rng.uniform(2.0, rho_max);
            Window wa = w.with_anchor(a);
            double hier = ergodic_integral(f, wa, rho);
            double flat = ergodic_integral_reference(sub, f, patch, a, rho);
            worst = std::max(worst, std::abs(hier - flat));
        }
        return std::make_pair(worst <= 1e-8, "max abs err " + fmt_double(worst));
    }});

    checks.push_back({"residual cancellation on supertile supports", [&] {
        // With every non-expanding eigenvalue at zero the expansion is
        // complete from order 1 on; with none it is complete everywhere.
        int kmin = 0;
        for (int n = 0; n < m; ++n) {
            double mod = std::abs(sd.eigenvalues[n]);
            if (mod > sd.cutoff + 1e-9 * sd.theta1) continue;
            if (mod > 1e-9)
                return std::make_pair(true, std::string("skipped: slow directions present"));
            kmin = 1;
        }
        CylindricalFunction f = default_function(sub, model.freq);
        double worst = 0;
        for (int k = kmin; k <= 5; ++k)
            for (int j = 0; j < m; ++j) {
                double r = deviation_residual_box(sub, sd, model.freq, f, k, j);
                worst = std::max(worst, std::abs(r));
            }
        return std::make_pair(worst <= 1e-9, "max abs residual " + fmt_double(worst));
    }});

    checks.push_back({"determinism of seeded experiments", [&] {
        Sampling s;
        s.anchors = 8;
        s.seed = 99;
        s.threads = 2;
        DeviationSeries a = deviation_series(model, default_function(sub, model.freq), 1, 3, s);
        s.threads = 1;
        DeviationSeries b = deviation_series(model, default_function(sub, model.freq), 1, 3, s);
        std::ostringstream ca, cb;
        write_series_csv(ca, a.sums);
        write_series_csv(cb, b.sums);
        write_series_csv(ca, a.residuals);
        write_series_csv(cb, b.residuals);
        return std::make_pair(ca.str() == cb.str(), std::string("threads=2 vs threads=1 bytes"));
    }});

    bool all = true;
    for (Check& c : checks) {
        auto [ok, detail] = c.fn();
        all = all && ok;
        os << (ok ? "[ok]  " : "[FAIL] ") << sub.name << ": " << c.name << " (" << detail << ")\n";
    }
    return all;
}

PeriodScanResult period_scan(const Model& model, long long bound) {
    const Substitution& sub = *model.sub;
    if (!sub.integral_lattice) throw Error("period scan requires an integral lattice");
    const int d = sub.dim;

    double need = 4.0 * static_cast<double>(bound) + 32.0;
    Window w = experiment_window(model, 0, need);
    auto raster = w.raster(true);

    // Central probe box, inset so every probe+period stays on the raster.
    long long bx0 = bound + 1, bx1 = std::min(raster->w - bound - 1, bx0 + 512);
    long long by0 = d == 2 ? bound + 1 : 0;
    long long by1 = d == 2 ? std::min(raster->h - bound - 1, by0 + 512) : 1;

    PeriodScanResult res;
    res.bound = bound;
    res.probe_cells = (bx1 - bx0) * (by1 - by0);

    auto matches = [&](long long tx, long long ty) {
        for (long long y = by0; y < by1; ++y)
            for (long long x = bx0; x < bx1; ++x) {
                if (raster->type_at(x, y) != raster->type_at(x + tx, y + ty)) return false;
                if (raster->suboff_at(x, y) != raster->suboff_at(x + tx, y + ty)) return false;
            }
        return true;
    };

    // Half-space of candidates ordered by sup norm.
    for (long long r = 1; r <= bound; ++r) {
        std::vector<std::array<long long, 2>> cands;
        if (d == 1) {
            cands.push_back({r, 0});
        } else {
            for (long long tx = -r; tx <= r; ++tx)
                for (long long ty = 0; ty <= r; ++ty) {
                    if (std::max(std::abs(tx), ty) != r) continue;
                    if (ty == 0 && tx <= 0) continue;
                    cands.push_back({tx, ty});
                }
        }
        for (auto& t : cands)
            if (matches(t[0], t[1])) {
                res.found = true;
                res.period = t;
                return res;
            }
    }
    return res;
}

}  // namespace subtile
