#include "subtile/reference.hpp"

#include <cmath>
#include <numbers>

namespace subtile {

namespace {
const double kSqrtPi = std::sqrt(std::numbers::pi);

double gauss_mass_1d(double x0, double x1, double a, double s) {
    return 0.5 * s * (std::erf(kSqrtPi * (x1 - a) / s) - std::erf(kSqrtPi * (x0 - a) / s));
}
}  // namespace

Patch materialize(const Substitution& sub, int root_type, int levels) {
    return expand(sub, Patch{{root_type, Vec2{0.0, 0.0}}}, levels);
}

double ergodic_integral_reference(const Substitution& sub, const CylindricalFunction& f,
                                  const Patch& patch, const Vec2& center, double rho) {
    double total = 0;
    for (const PlacedTile& t : patch) {
        f.for_each_subcell(t.type, [&](const Box& local, double val) {
            Box cell{{t.pos[0] + local.lo[0], t.pos[1] + local.lo[1]},
                     {t.pos[0] + local.hi[0], t.pos[1] + local.hi[1]}};
            total += val * clipped_cell_volume(cell, sub.dim, center, rho);
        });
    }
    return total;
}

double phi_ball_reference(const Substitution& sub, const std::vector<double>& v,
                          const Patch& patch, const Vec2& center, double R) {
    double total = 0;
    for (const PlacedTile& t : patch) {
        Vec2 size = sub.tile_size(t.type);
        Box cell{{t.pos[0], t.pos[1]}, {t.pos[0] + size[0], t.pos[1] + size[1]}};
        double clip = clipped_cell_volume(cell, sub.dim, center, R);
        total += v[t.type] * clip / sub.volume(t.type);
    }
    return total;
}

double smoothed_amplitude_reference(const Substitution& sub, const CylindricalFunction& f,
                                    const Patch& patch, const Vec2& center, double s, double tau,
                                    int refine) {
    double total = 0;
    double cut2 = tau * s * tau * s;
    for (const PlacedTile& t : patch) {
        f.for_each_subcell(t.type, [&](const Box& local, double val) {
            if (val == 0) return;
            double w = (local.hi[0] - local.lo[0]) / refine;
            double h = sub.dim == 2 ? (local.hi[1] - local.lo[1]) / refine : 1.0;
            for (int iy = 0; iy < (sub.dim == 2 ? refine : 1); ++iy)
                for (int ix = 0; ix < refine; ++ix) {
                    double x0 = t.pos[0] + local.lo[0] + ix * w;
                    double y0 = sub.dim == 2 ? t.pos[1] + local.lo[1] + iy * h : 0.0;
                    double cx = x0 + 0.5 * w - center[0];
                    double cy = sub.dim == 2 ? y0 + 0.5 * h - center[1] : 0.0;
                    if (cx * cx + cy * cy > cut2) continue;
                    double m = val * gauss_mass_1d(x0, x0 + w, center[0], s);
                    if (sub.dim == 2) m *= gauss_mass_1d(y0, y0 + h, center[1], s);
                    total += m;
                }
        });
    }
    return total;
}

}  // namespace subtile
