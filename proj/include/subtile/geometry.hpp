#pragma once

#include <array>
#include <cmath>

namespace subtile {

// Points and axis-aligned boxes in 1 or 2 dimensions. One-dimensional
// objects live on axis 0; axis 1 is carried along with unit thickness so
// the same code paths handle both dimensions.
using Vec2 = std::array<double, 2>;

struct Box {
    Vec2 lo{0.0, 0.0};
    Vec2 hi{0.0, 0.0};
};

inline double box_volume(const Box& b, int dim) {
    double v = b.hi[0] - b.lo[0];
    if (dim == 2) v *= b.hi[1] - b.lo[1];
    return v;
}

inline bool box_contains(const Box& b, const Vec2& p, int dim) {
    for (int ax = 0; ax < dim; ++ax)
        if (p[ax] < b.lo[ax] || p[ax] >= b.hi[ax]) return false;
    return true;
}

inline bool boxes_intersect(const Box& a, const Box& b, int dim) {
    for (int ax = 0; ax < dim; ++ax)
        if (a.hi[ax] <= b.lo[ax] || b.hi[ax] <= a.lo[ax]) return false;
    return true;
}

// Squared distance from c to the nearest point of the box.
inline double box_min_dist2(const Box& b, const Vec2& c, int dim) {
    double s = 0;
    for (int ax = 0; ax < dim; ++ax) {
        double d = 0;
        if (c[ax] < b.lo[ax]) d = b.lo[ax] - c[ax];
        else if (c[ax] > b.hi[ax]) d = c[ax] - b.hi[ax];
        s += d * d;
    }
    return s;
}

// Squared distance from c to the farthest point of the box.
inline double box_max_dist2(const Box& b, const Vec2& c, int dim) {
    double s = 0;
    for (int ax = 0; ax < dim; ++ax) {
        double d = std::max(std::abs(c[ax] - b.lo[ax]), std::abs(c[ax] - b.hi[ax]));
        s += d * d;
    }
    return s;
}

// Lebesgue volume of the ball B(0,R): 2R on the line, pi R^2 in the plane.
double ball_volume(int dim, double R);

// Exact Leb(box intersect B(center,R)). d=1 is interval overlap, d=2 is the
// closed-form circle/rectangle intersection area.
double clipped_cell_volume(const Box& box, int dim, const Vec2& center, double R);

}  // namespace subtile
