#pragma once

#include <vector>

#include "subtile/window.hpp"

namespace subtile {

struct BallPiece {
    int level = 0;
    int type = 0;
    Vec2 anchor{0.0, 0.0};
};

struct BoundaryCell {
    int type = 0;
    Vec2 anchor{0.0, 0.0};
    double clipped_volume = 0.0;
    double fraction = 0.0;  // clipped_volume / tile volume, in (0,1]
};

// Decomposition of the ball around the window anchor into maximal supertiles
// contained in the closed ball plus the order-0 tiles that straddle the
// sphere. Pieces and boundary cells are pairwise interior-disjoint and
// together cover the ball exactly.
struct BallDecomposition {
    double radius = 0.0;
    Vec2 center{0.0, 0.0};
    std::vector<BallPiece> pieces;
    std::vector<BoundaryCell> boundary;

    double total_volume(const Substitution& sub) const;
};

BallDecomposition ball_decomposition(const Window& window, double R);

}  // namespace subtile
