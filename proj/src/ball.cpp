#include "subtile/ball.hpp"

#include <cmath>

namespace subtile {

namespace {

struct Builder {
    const Window::Content& c;
    const Substitution& s;
    Vec2 center;
    double R, R2;
    BallDecomposition* out;

    void rec(int type, int level, Vec2 anchor) {
        Box b = Box{anchor, {anchor[0] + c.scales[level][0] * s.tile_size(type)[0],
                             anchor[1] + c.scales[level][1] * s.tile_size(type)[1]}};
        if (box_min_dist2(b, center, s.dim) >= R2) return;  // outside
        if (box_max_dist2(b, center, s.dim) <= R2) {        // inside the closed ball
            out->pieces.push_back({level, type, anchor});
            return;
        }
        if (level == 0) {
            double clip = clipped_cell_volume(b, s.dim, center, R);
            if (clip > 0)
                out->boundary.push_back({type, anchor, clip, clip / s.volume(type)});
            return;
        }
        const std::vector<Vec2>& offs = s.child_offsets[type];
        const std::vector<Child>& kids = s.rules[type].children;
        const Vec2& sc = c.scales[level - 1];
        for (size_t i = 0; i < kids.size(); ++i)
            rec(kids[i].type, level - 1,
                Vec2{anchor[0] + sc[0] * offs[i][0], anchor[1] + sc[1] * offs[i][1]});
    }
};

}  // namespace

double BallDecomposition::total_volume(const Substitution& sub) const {
    double v = 0;
    for (const BallPiece& p : pieces)
        v += std::pow(sub.lambda, sub.dim * p.level) * sub.volume(p.type);
    for (const BoundaryCell& b : boundary) v += b.clipped_volume;
    return v;
}

BallDecomposition ball_decomposition(const Window& window, double R) {
    window.require_margin(R);
    BallDecomposition dec;
    dec.radius = R;
    dec.center = window.anchor();
    if (R <= 0) return dec;
    Builder b{*window.content(), window.sub(), window.anchor(), R, R * R, &dec};
    b.rec(window.root_type(), window.levels(), Vec2{0.0, 0.0});
    return dec;
}

}  // namespace subtile
