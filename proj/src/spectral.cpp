#include "subtile/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "subtile/errors.hpp"
#include "subtile/measures.hpp"
#include "subtile/parallel.hpp"

namespace subtile {

namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr long long kFastPathCellCap = 1LL << 28;

// Gaussian mass over [x0,x1] at spatial scale s, centered at a.
inline double gauss_mass(double x0, double x1, double a, double s) {
    return 0.5 * s * (std::erf(kSqrtPi * (x1 - a) / s) - std::erf(kSqrtPi * (x0 - a) / s));
}

// Separable raster accumulation for integral lattices with per-tile
// constant profiles: V = sum_cells value(cell) gx(cell_x) gy(cell_y) with
// the one-axis masses precomputed along an error-function chain.
double amplitude_raster(const CylindricalFunction& f, const Window& window, double s,
                        double tau) {
    const Substitution& sub = window.sub();
    auto raster = window.raster();
    Vec2 a = window.anchor();

    std::vector<double> lut(sub.num_types());
    for (int t = 0; t < sub.num_types(); ++t) lut[t] = f.value(t, Vec2{0.0, 0.0});

    long long xlo = std::max<long long>(0, static_cast<long long>(std::floor(a[0] - tau * s)));
    long long xhi = std::min<long long>(raster->w, static_cast<long long>(std::ceil(a[0] + tau * s)));
    if (xlo >= xhi) return 0.0;
    size_t nx = static_cast<size_t>(xhi - xlo);
    std::vector<double> gx(nx);
    {
        double prev = std::erf(kSqrtPi * (static_cast<double>(xlo) - a[0]) / s);
        for (size_t i = 0; i < nx; ++i) {
            double cur = std::erf(kSqrtPi * (static_cast<double>(xlo) + i + 1 - a[0]) / s);
            gx[i] = 0.5 * s * (cur - prev);
            prev = cur;
        }
    }

    if (sub.dim == 1) {
        double V = 0;
        const uint8_t* row = raster->type.data();
        for (size_t i = 0; i < nx; ++i) V += lut[row[xlo + i]] * gx[i];
        return V;
    }

    long long ylo = std::max<long long>(0, static_cast<long long>(std::floor(a[1] - tau * s)));
    long long yhi = std::min<long long>(raster->h, static_cast<long long>(std::ceil(a[1] + tau * s)));
    if (ylo >= yhi) return 0.0;
    size_t ny = static_cast<size_t>(yhi - ylo);
    std::vector<double> gy(ny);
    {
        double prev = std::erf(kSqrtPi * (static_cast<double>(ylo) - a[1]) / s);
        for (size_t i = 0; i < ny; ++i) {
            double cur = std::erf(kSqrtPi * (static_cast<double>(ylo) + i + 1 - a[1]) / s);
            gy[i] = 0.5 * s * (cur - prev);
            prev = cur;
        }
    }

    double V = 0;
    for (size_t j = 0; j < ny; ++j) {
        const uint8_t* row = raster->type.data() + (ylo + static_cast<long long>(j)) * raster->w;
        double acc = 0;
        for (size_t i = 0; i < nx; ++i) acc += lut[row[xlo + i]] * gx[i];
        V += gy[j] * acc;
    }
    return V;
}

bool fast_path_ok(const CylindricalFunction& f, const Window& window) {
    const Substitution& sub = window.sub();
    if (!sub.integral_lattice || f.refinement() != 1) return false;
    double cells = window.extent()[0] * (sub.dim == 2 ? window.extent()[1] : 1.0);
    return cells <= static_cast<double>(kFastPathCellCap);
}

struct HypCheck {
    bool ok = true;
    std::string note;
};

HypCheck check_scaling_hypotheses(const CylindricalFunction& f, const SpectralData& sd,
                                  const std::vector<double>& freq) {
    HypCheck h;
    if (!sd.hypothesis_ok) {
        h.ok = false;
        h.note += "theta2 at or below theta1^((d-1)/d); ";
    }
    double scale = 1.0;
    for (double p : f.integrals()) scale = std::max(scale, std::abs(p));
    if (std::abs(integral_mu(f, freq)) > 1e-9 * scale) {
        h.ok = false;
        h.note += "nonzero mean; ";
    }
    if (sd.hypothesis_ok) {
        double m2 = m_phi_minus(f, sd.right[1]);
        if (std::abs(m2) <= 1e-9 * scale) {
            h.ok = false;
            h.note += "pairing with the theta2 direction vanishes; ";
        }
    }
    return h;
}

}  // namespace

double smoothed_ball_amplitude(const CylindricalFunction& f, const Window& window, double R,
                               const KernelSpec& kernel) {
    const Substitution& sub = window.sub();
    double s = kernel.scale_mult * R;
    if (!(s > 0)) throw Error("kernel scale must be positive");
    double need = kernel.tau * s + sub.max_tile_side() + 1.0;
    window.require_margin(need);

    if (fast_path_ok(f, window)) return amplitude_raster(f, window, s, kernel.tau);

    Vec2 a = window.anchor();
    Box trunc;
    trunc.lo = {a[0] - kernel.tau * s, sub.dim == 2 ? a[1] - kernel.tau * s : 0.0};
    trunc.hi = {a[0] + kernel.tau * s, sub.dim == 2 ? a[1] + kernel.tau * s : 1.0};

    double V = 0;
    window.for_each_tile(trunc, [&](int type, Vec2 anchor) {
        f.for_each_subcell(type, [&](const Box& local, double val) {
            if (val == 0.0) return;
            double m = val * gauss_mass(anchor[0] + local.lo[0], anchor[0] + local.hi[0], a[0], s);
            if (sub.dim == 2)
                m *= gauss_mass(anchor[1] + local.lo[1], anchor[1] + local.hi[1], a[1], s);
            V += m;
        });
    });
    return V;
}

Estimate spectral_form(const CylindricalFunction& f, const Window& window, double R,
                       const KernelSpec& kernel, const std::vector<Vec2>& anchors, int threads) {
    if (anchors.size() < 16) throw InsufficientData("spectral_form needs at least 16 anchors");
    const int d = window.sub().dim;
    const double s = kernel.scale_mult * R;
    const size_t K = anchors.size();

    std::vector<double> sq(K);
    parallel_for(K, threads, [&](size_t i) {
        Window w = window.with_anchor(anchors[i]);
        double V = smoothed_ball_amplitude(f, w, R, kernel);
        sq[i] = V * V;
    });

    double norm = std::pow(s, -2.0 * d);
    double mean = pairwise_sum(sq) / static_cast<double>(K);
    std::vector<double> dev(K);
    for (size_t i = 0; i < K; ++i) dev[i] = (sq[i] - mean) * (sq[i] - mean);
    double var = K > 1 ? pairwise_sum(dev) / static_cast<double>(K - 1) : 0.0;
    Estimate e;
    e.value = norm * mean;
    e.stderr_ = norm * std::sqrt(var / static_cast<double>(K));
    e.anchors = static_cast<int>(K);
    return e;
}

ScalingProfile scaling_profile(const CylindricalFunction& f, const Window& window,
                               const KernelSpec& kernel, int Nmin, int Nmax,
                               const std::vector<Vec2>& anchors, const SpectralData& sd,
                               const std::vector<double>& freq, int threads) {
    if (Nmin > Nmax) throw Error("empty radius range");
    const Substitution& sub = window.sub();
    HypCheck hyp = check_scaling_hypotheses(f, sd, freq);

    ScalingProfile out;
    out.hypothesis_ok = hyp.ok;
    out.note = hyp.note;
    out.series.example = sub.name;
    out.series.quantity = "spectral_G";
    out.series.label = f.id;

    const int d = sub.dim;
    double expected = 2.0 * sd.alpha - 2.0 * d;
    out.expected_slope = hyp.ok ? expected : kNaN;

    std::vector<std::pair<double, double>> pts;
    for (int N = Nmin; N <= Nmax; ++N) {
        double R = std::pow(sub.lambda, N);
        Estimate e = spectral_form(f, window, R, kernel, anchors, threads);
        out.series.rows.push_back({N, R, e.value, e.value, e.stderr_, e.anchors});
        if (e.value > 0) pts.emplace_back(std::log(R), std::log(e.value));
        if (std::isfinite(expected)) out.normalized.push_back(e.value / std::pow(sub.lambda, N * expected));
    }
    if (pts.size() >= 4) out.fit = fit_loglog(pts);
    return out;
}

std::vector<EtaRow> eta_profile(const CylindricalFunction& f, const Window& window,
                                const KernelSpec& kernel, const std::vector<double>& a_grid,
                                const std::vector<int>& Ns, const std::vector<Vec2>& anchors,
                                const SpectralData& sd, const std::vector<double>& freq,
                                int threads) {
    HypCheck hyp = check_scaling_hypotheses(f, sd, freq);
    if (!hyp.ok) throw HypothesisViolated("eta profile: " + hyp.note);
    const Substitution& sub = window.sub();
    const int d = sub.dim;

    std::vector<EtaRow> rows;
    for (double a : a_grid) {
        if (!(a > 0)) throw Error("eta profile: a must be positive");
        for (int N : Ns) {
            KernelSpec k2 = kernel;
            k2.scale_mult = kernel.scale_mult / a;
            double R = std::pow(sub.lambda, N);
            Estimate e = spectral_form(f, window, R, k2, anchors, threads);
            double norm = std::pow(sub.lambda, N * (2.0 * d - 2.0 * sd.alpha));
            rows.push_back({a, N, e.value * norm, e.stderr_ * norm});
        }
    }
    return rows;
}

namespace {

// Exact integral over [a, a+W)^d of f(y + p) f(y + q) dy. The integrand is
// piecewise constant on the overlay of the two shifted subcell partitions;
// cutting the region at every subcell boundary of both shifted copies makes
// each grid rectangle single-valued.
double pair_integral(const CylindricalFunction& f, const Window& win, WindowCursor& cur, Vec2 a,
                     double W, Vec2 p, Vec2 q) {
    const Substitution& sub = win.sub();
    const int d = sub.dim;
    const int G = f.refinement();

    std::vector<double> cx{a[0], a[0] + W}, cy;
    if (d == 2) cy = {a[1], a[1] + W};

    for (const Vec2& shift : {p, q}) {
        Box region;
        region.lo = {a[0] + shift[0], d == 2 ? a[1] + shift[1] : 0.0};
        region.hi = {a[0] + W + shift[0], d == 2 ? a[1] + W + shift[1] : 1.0};
        win.for_each_tile(region, [&](int type, Vec2 anchor) {
            Vec2 size = sub.tile_size(type);
            double sx = size[0] / G;
            for (int i = 0; i <= G; ++i) {
                double v = anchor[0] + i * sx - shift[0];
                if (v > a[0] && v < a[0] + W) cx.push_back(v);
            }
            if (d == 2) {
                double sy = size[1] / G;
                for (int i = 0; i <= G; ++i) {
                    double v = anchor[1] + i * sy - shift[1];
                    if (v > a[1] && v < a[1] + W) cy.push_back(v);
                }
            }
        });
    }
    auto dedupe = [](std::vector<double>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end(),
                            [](double x, double y) { return std::abs(x - y) < 1e-12; }),
                v.end());
    };
    dedupe(cx);
    if (d == 2) dedupe(cy);

    auto field = [&](double x, double y, const Vec2& shift) {
        auto [type, local] = cur.type_at(Vec2{x + shift[0], d == 2 ? y + shift[1] : 0.5});
        return f.value(type, local);
    };

    double total = 0;
    for (size_t i = 0; i + 1 < cx.size(); ++i) {
        double xm = 0.5 * (cx[i] + cx[i + 1]);
        double dx = cx[i + 1] - cx[i];
        if (dx <= 0) continue;
        if (d == 1) {
            total += field(xm, 0, p) * field(xm, 0, q) * dx;
            continue;
        }
        for (size_t j = 0; j + 1 < cy.size(); ++j) {
            double ym = 0.5 * (cy[j] + cy[j + 1]);
            double dy = cy[j + 1] - cy[j];
            if (dy <= 0) continue;
            total += field(xm, ym, p) * field(xm, ym, q) * dx * dy;
        }
    }
    return total;
}

void require_correlation_margin(const Window& win, const Vec2& a, double W,
                                const std::vector<Vec2>& shifts) {
    const Substitution& sub = win.sub();
    for (const Vec2& s : shifts)
        for (int ax = 0; ax < sub.dim; ++ax) {
            if (a[ax] + std::min(0.0, s[ax]) < 0 ||
                a[ax] + W + std::max(0.0, s[ax]) > win.extent()[ax])
                throw MarginError("correlation region leaves the window");
        }
}

}  // namespace

std::vector<std::vector<Estimate>> correlation_gram(const CylindricalFunction& f,
                                                    const Window& window,
                                                    const std::vector<Vec2>& lags,
                                                    const std::vector<Vec2>& anchors,
                                                    double region) {
    if (anchors.empty()) throw InsufficientData("correlation needs anchors");
    const int L = static_cast<int>(lags.size());
    const size_t K = anchors.size();
    const double vol = region * (window.sub().dim == 2 ? region : 1.0);

    // samples[a] is the per-anchor Gram matrix; the average of Gram
    // matrices stays positive semidefinite.
    std::vector<std::vector<double>> samples(K, std::vector<double>(static_cast<size_t>(L) * L));
    for (size_t i = 0; i < K; ++i) {
        require_correlation_margin(window, anchors[i], region, lags);
        WindowCursor cur(window);
        for (int pi = 0; pi < L; ++pi)
            for (int qi = pi; qi < L; ++qi) {
                double v = pair_integral(f, window, cur, anchors[i], region, lags[pi], lags[qi]) / vol;
                samples[i][static_cast<size_t>(pi) * L + qi] = v;
                samples[i][static_cast<size_t>(qi) * L + pi] = v;
            }
    }

    std::vector<std::vector<Estimate>> M(L, std::vector<Estimate>(L));
    std::vector<double> buf(K), dev(K);
    for (int pi = 0; pi < L; ++pi)
        for (int qi = 0; qi < L; ++qi) {
            for (size_t i = 0; i < K; ++i) buf[i] = samples[i][static_cast<size_t>(pi) * L + qi];
            double mean = pairwise_sum(buf) / static_cast<double>(K);
            for (size_t i = 0; i < K; ++i) dev[i] = (buf[i] - mean) * (buf[i] - mean);
            double var = K > 1 ? pairwise_sum(dev) / static_cast<double>(K - 1) : 0.0;
            M[pi][qi] = {mean, std::sqrt(var / static_cast<double>(K)), static_cast<int>(K)};
        }
    return M;
}

Estimate correlation(const CylindricalFunction& f, const Window& window, Vec2 lag,
                     const std::vector<Vec2>& anchors, double region) {
    auto M = correlation_gram(f, window, {Vec2{0.0, 0.0}, lag}, anchors, region);
    return M[0][1];
}

}  // namespace subtile
