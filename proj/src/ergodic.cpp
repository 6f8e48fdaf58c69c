#include "subtile/ergodic.hpp"

#include <cmath>

#include "subtile/errors.hpp"

namespace subtile {

double integral_mu(const CylindricalFunction& f, const std::vector<double>& freq) {
    double s = 0;
    for (int i = 0; i < f.num_types(); ++i) s += freq[i] * f.integral(i);
    return s;
}

double supertile_integral(const Substitution& sub, const CylindricalFunction& f, int k,
                          int type) {
    if (k < 0) throw Error("supertile order must be >= 0");
    std::vector<double> psi = f.integrals();
    for (int i = 0; i < k; ++i) psi = mat_t_vec(sub.incidence, psi);
    return psi[type];
}

double ergodic_integral(const CylindricalFunction& f, const Window& window,
                        const BallDecomposition& dec) {
    const Substitution& sub = window.sub();
    std::vector<std::vector<double>> levels(window.levels() + 1);
    levels[0] = f.integrals();
    for (int k = 1; k <= window.levels(); ++k) levels[k] = mat_t_vec(sub.incidence, levels[k - 1]);

    double total = 0;
    for (const BallPiece& p : dec.pieces) total += levels[p.level][p.type];
    for (const BoundaryCell& b : dec.boundary) {
        if (!f.piecewise()) {
            total += f.value(b.type, Vec2{0.0, 0.0}) * b.clipped_volume;
            continue;
        }
        f.for_each_subcell(b.type, [&](const Box& local, double val) {
            Box cell{{b.anchor[0] + local.lo[0], b.anchor[1] + local.lo[1]},
                     {b.anchor[0] + local.hi[0], b.anchor[1] + local.hi[1]}};
            double clip = clipped_cell_volume(cell, sub.dim, dec.center, dec.radius);
            total += val * clip;
        });
    }
    return total;
}

double ergodic_integral(const CylindricalFunction& f, const Window& window, double rho) {
    if (rho <= 0) return 0.0;
    return ergodic_integral(f, window, ball_decomposition(window, rho));
}

double deviation_residual(const CylindricalFunction& f, const Window& window,
                          const BallDecomposition& dec, const SpectralData& sd,
                          const std::vector<double>& freq) {
    double s = ergodic_integral(f, window, dec);
    double mean_term = ball_volume(window.sub().dim, dec.radius) * integral_mu(f, freq);
    double phi_terms = 0;
    for (int n = 1; n < sd.expanding_dims; ++n) {
        PhiVector ln = phi_from_left(sd, n);
        phi_terms += phi_plus_ball(ln, window, dec) * m_phi_minus(f, sd.right[n]);
    }
    return s - mean_term - phi_terms;
}

double deviation_residual(const CylindricalFunction& f, const Window& window, double rho,
                          const SpectralData& sd, const std::vector<double>& freq) {
    return deviation_residual(f, window, ball_decomposition(window, rho), sd, freq);
}

double deviation_residual_box(const Substitution& sub, const SpectralData& sd,
                              const std::vector<double>& freq, const CylindricalFunction& f,
                              int k, int type) {
    double s = supertile_integral(sub, f, k, type);
    double vol = std::pow(sub.lambda, sub.dim * k) * sub.volume(type);
    double mean_term = vol * integral_mu(f, freq);
    double phi_terms = 0;
    for (int n = 1; n < sd.expanding_dims; ++n) {
        PhiVector ln = phi_from_left(sd, n);
        phi_terms += phi_plus_supertile(sub, ln, k, type) * m_phi_minus(f, sd.right[n]);
    }
    return s - mean_term - phi_terms;
}

FitResult fit_loglog(const std::vector<std::pair<double, double>>& points) {
    int n = static_cast<int>(points.size());
    if (n < 4) throw InsufficientData("need at least 4 points for an exponent fit");
    double sx = 0, sy = 0;
    for (auto& [x, y] : points) {
        sx += x;
        sy += y;
    }
    double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (auto& [x, y] : points) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx <= 0) throw InsufficientData("degenerate abscissa in exponent fit");
    FitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.points = n;
    double sse = 0;
    for (auto& [x, y] : points) {
        double e = y - (fit.intercept + fit.slope * x);
        sse += e * e;
    }
    fit.stderr_ = n > 2 ? std::sqrt(sse / (n - 2) / sxx) : 0.0;
    return fit;
}

FitResult fit_exponent(const ExperimentSeries& series, int drop_head) {
    std::vector<std::pair<double, double>> pts;
    for (size_t i = 0; i < series.rows.size(); ++i) {
        if (static_cast<int>(i) < drop_head) continue;
        const SeriesRow& r = series.rows[i];
        if (r.rms < 1e-12) continue;
        pts.emplace_back(std::log(r.R), std::log(r.rms));
    }
    return fit_loglog(pts);
}

}  // namespace subtile
