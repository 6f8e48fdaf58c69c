#include "subtile/geometry.hpp"

#include <algorithm>
#include <numbers>

namespace subtile {

namespace {

// Antiderivative of sqrt(R^2 - x^2).
double arc_integral(double x, double R) {
    double c = std::clamp(x / R, -1.0, 1.0);
    double y2 = std::max(0.0, R * R - x * x);
    return 0.5 * (x * std::sqrt(y2) + R * R * std::asin(c));
}

// Area of [x0,x1]x[y0,y1] intersected with the disk of radius R at the
// origin. Piecewise integration of the clamped arcs; breakpoints are where
// the horizontal box edges cross the circle.
double disk_box_area(double x0, double y0, double x1, double y1, double R) {
    double a = std::max(x0, -R);
    double b = std::min(x1, R);
    if (!(a < b) || R <= 0) return 0.0;

    std::array<double, 6> xs{a, b, 0, 0, 0, 0};
    int n = 2;
    auto add = [&](double v) {
        if (v > a && v < b) xs[n++] = v;
    };
    if (std::abs(y1) < R) {
        double t = std::sqrt(R * R - y1 * y1);
        add(-t);
        add(t);
    }
    if (std::abs(y0) < R) {
        double t = std::sqrt(R * R - y0 * y0);
        add(-t);
        add(t);
    }
    std::sort(xs.begin(), xs.begin() + n);

    double area = 0;
    for (int i = 0; i + 1 < n; ++i) {
        double lo = xs[i], hi = xs[i + 1];
        if (!(lo < hi)) continue;
        double mid = 0.5 * (lo + hi);
        double arc = std::sqrt(std::max(0.0, R * R - mid * mid));
        double top = std::min(y1, arc);
        double bot = std::max(y0, -arc);
        if (top <= bot) continue;
        // Within the segment each bound is either the box edge or the arc.
        if (y1 < arc) area += y1 * (hi - lo);
        else area += arc_integral(hi, R) - arc_integral(lo, R);
        if (y0 > -arc) area -= y0 * (hi - lo);
        else area += arc_integral(hi, R) - arc_integral(lo, R);
    }
    return area;
}

}  // namespace

double ball_volume(int dim, double R) {
    if (R <= 0) return 0.0;
    return dim == 1 ? 2.0 * R : std::numbers::pi * R * R;
}

double clipped_cell_volume(const Box& box, int dim, const Vec2& center, double R) {
    if (R <= 0) return 0.0;
    if (dim == 1) {
        double lo = std::max(box.lo[0], center[0] - R);
        double hi = std::min(box.hi[0], center[0] + R);
        return std::max(0.0, hi - lo);
    }
    return disk_box_area(box.lo[0] - center[0], box.lo[1] - center[1],
                         box.hi[0] - center[0], box.hi[1] - center[1], R);
}

}  // namespace subtile
