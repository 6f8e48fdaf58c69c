#pragma once

#include <ostream>

#include "subtile/window.hpp"

namespace subtile {

// Renders the tiles of a window region as colored axis-aligned rectangles.
// `region` is in window coordinates; `cell_px` sets the pixel size of one
// lattice unit.
void write_patch_svg(std::ostream& os, const Window& window, const Box& region,
                     double cell_px = 8.0);

}  // namespace subtile
