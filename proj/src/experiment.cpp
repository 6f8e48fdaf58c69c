#include "subtile/experiment.hpp"

#include <algorithm>
#include <cmath>

#include "subtile/errors.hpp"
#include "subtile/parallel.hpp"

namespace subtile {

namespace {

double clearance_pad(const Substitution& sub) { return sub.max_tile_side() + 2.0; }

struct RowStats {
    double mean, rms, se;
};

// Deterministic reduction of per-anchor values, in anchor order.
RowStats reduce(const std::vector<double>& vals) {
    size_t K = vals.size();
    std::vector<double> sq(K);
    for (size_t i = 0; i < K; ++i) sq[i] = vals[i] * vals[i];
    double mean = pairwise_sum(vals) / static_cast<double>(K);
    double msq = pairwise_sum(sq) / static_cast<double>(K);
    double rms = std::sqrt(std::max(0.0, msq));
    std::vector<double> dev(K);
    for (size_t i = 0; i < K; ++i) dev[i] = (sq[i] - msq) * (sq[i] - msq);
    double var_sq = K > 1 ? pairwise_sum(dev) / static_cast<double>(K - 1) : 0.0;
    // delta-method standard error of the rms
    double se = rms > 0 ? std::sqrt(var_sq / static_cast<double>(K)) / (2.0 * rms) : 0.0;
    return {mean, rms, se};
}

}  // namespace

Model make_model(Substitution sub) {
    Model m;
    m.sub = std::make_shared<const Substitution>(std::move(sub));
    m.sd = spectral_data(*m.sub);
    m.freq = tile_frequencies(m.sd, *m.sub);
    return m;
}

int levels_for(const Substitution& sub, int root_type, double need) {
    Vec2 size = sub.tile_size(root_type);
    double minext = sub.dim == 2 ? std::min(size[0], size[1]) : size[0];
    int n = 1;
    double span = sub.lambda * minext;
    while (span < 3.0 * need) {
        span *= sub.lambda;
        ++n;
        if (n > 64) throw Error("experiment window would be unreasonably deep");
    }
    return n;
}

Window experiment_window(const Model& model, int root_type, double need) {
    int n = levels_for(*model.sub, root_type, need);
    return make_window(model.sub, root_type, n);
}

std::vector<Vec2> sample_anchors(const Window& window, double need, int count, Rng& rng) {
    const Substitution& sub = window.sub();
    Vec2 ext = window.extent();
    std::vector<Vec2> anchors(count);
    for (int ax = 0; ax < sub.dim; ++ax)
        if (ext[ax] - 2.0 * need <= 0)
            throw MarginError("window too small for anchors with clearance " + std::to_string(need));
    for (int i = 0; i < count; ++i) {
        Vec2 a{0.0, 0.0};
        for (int ax = 0; ax < sub.dim; ++ax) a[ax] = rng.uniform(need, ext[ax] - need);
        anchors[i] = a;
    }
    return anchors;
}

ExperimentSeries phi_growth_series(const Model& model, const PhiVector& v, int Nmin, int Nmax,
                                   const Sampling& sampling) {
    const Substitution& sub = *model.sub;
    double Rmax = std::pow(sub.lambda, Nmax);
    double need = Rmax + clearance_pad(sub);
    Window window = experiment_window(model, 0, need);
    Rng rng(sampling.seed);
    std::vector<Vec2> anchors = sample_anchors(window, need, sampling.anchors, rng);

    int rows = Nmax - Nmin + 1;
    std::vector<std::vector<double>> vals(rows, std::vector<double>(anchors.size()));
    parallel_for(anchors.size(), sampling.threads, [&](size_t i) {
        Window w = window.with_anchor(anchors[i]);
        for (int N = Nmin; N <= Nmax; ++N) {
            double R = std::pow(sub.lambda, N);
            vals[N - Nmin][i] = phi_plus_ball(v, w, R);
        }
    });

    ExperimentSeries series;
    series.example = sub.name;
    series.quantity = "phi_growth";
    series.label = v.label;
    series.seed = sampling.seed;
    for (int N = Nmin; N <= Nmax; ++N) {
        RowStats st = reduce(vals[N - Nmin]);
        series.rows.push_back(
            {N, std::pow(sub.lambda, N), st.mean, st.rms, st.se, static_cast<int>(anchors.size())});
    }
    return series;
}

DeviationSeries deviation_series(const Model& model, const CylindricalFunction& f, int Nmin,
                                 int Nmax, const Sampling& sampling) {
    const Substitution& sub = *model.sub;
    double Rmax = std::pow(sub.lambda, Nmax);
    double need = Rmax + clearance_pad(sub);
    Window window = experiment_window(model, 0, need);
    Rng rng(sampling.seed);
    std::vector<Vec2> anchors = sample_anchors(window, need, sampling.anchors, rng);

    int rows = Nmax - Nmin + 1;
    std::vector<std::vector<double>> sums(rows, std::vector<double>(anchors.size()));
    std::vector<std::vector<double>> resid(rows, std::vector<double>(anchors.size()));
    parallel_for(anchors.size(), sampling.threads, [&](size_t i) {
        Window w = window.with_anchor(anchors[i]);
        for (int N = Nmin; N <= Nmax; ++N) {
            double R = std::pow(sub.lambda, N);
            BallDecomposition dec = ball_decomposition(w, R);
            sums[N - Nmin][i] = ergodic_integral(f, w, dec);
            resid[N - Nmin][i] = deviation_residual(f, w, dec, model.sd, model.freq);
        }
    });

    DeviationSeries out;
    out.sums.example = out.residuals.example = sub.name;
    out.sums.quantity = "ergodic_sum";
    out.residuals.quantity = "deviation_residual";
    out.sums.label = out.residuals.label = f.id;
    out.sums.seed = out.residuals.seed = sampling.seed;
    for (int N = Nmin; N <= Nmax; ++N) {
        double R = std::pow(sub.lambda, N);
        RowStats ss = reduce(sums[N - Nmin]);
        RowStats rs = reduce(resid[N - Nmin]);
        int K = static_cast<int>(anchors.size());
        out.sums.rows.push_back({N, R, ss.mean, ss.rms, ss.se, K});
        out.residuals.rows.push_back({N, R, rs.mean, rs.rms, rs.se, K});
    }
    return out;
}

ScalingProfile run_scaling(const Model& model, const CylindricalFunction& f,
                           const KernelSpec& kernel, int Nmin, int Nmax,
                           const Sampling& sampling) {
    const Substitution& sub = *model.sub;
    double smax = kernel.scale_mult * std::pow(sub.lambda, Nmax);
    double need = kernel.tau * smax + clearance_pad(sub);
    Window window = experiment_window(model, 0, need);
    Rng rng(sampling.seed);
    std::vector<Vec2> anchors = sample_anchors(window, need, sampling.anchors, rng);
    ScalingProfile p = scaling_profile(f, window, kernel, Nmin, Nmax, anchors, model.sd,
                                       model.freq, sampling.threads);
    p.series.seed = sampling.seed;
    return p;
}

std::vector<EtaRow> run_eta(const Model& model, const CylindricalFunction& f,
                            const KernelSpec& kernel, const std::vector<double>& a_grid,
                            const std::vector<int>& Ns, const Sampling& sampling) {
    const Substitution& sub = *model.sub;
    double a_min = *std::min_element(a_grid.begin(), a_grid.end());
    int Nmax = *std::max_element(Ns.begin(), Ns.end());
    double smax = kernel.scale_mult * std::pow(sub.lambda, Nmax) / a_min;
    double need = kernel.tau * smax + clearance_pad(sub);
    Window window = experiment_window(model, 0, need);
    Rng rng(sampling.seed);
    std::vector<Vec2> anchors = sample_anchors(window, need, sampling.anchors, rng);
    return eta_profile(f, window, kernel, a_grid, Ns, anchors, model.sd, model.freq,
                       sampling.threads);
}

}  // namespace subtile
