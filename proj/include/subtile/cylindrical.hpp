#pragma once

#include <string>
#include <vector>

#include "subtile/geometry.hpp"
#include "subtile/substitution.hpp"

namespace subtile {

// A function on the tiling space that depends only on the tile containing
// the origin and the origin's position inside it: one profile Psi_i per
// prototile, piecewise constant on a G x G refinement of the prototile
// support (G = 1 means constant per tile). Profile integrals are cached.
class CylindricalFunction {
  public:
    static CylindricalFunction constants(const Substitution& sub, std::vector<double> values,
                                         std::string id = "const");
    static CylindricalFunction table(const Substitution& sub, int refinement,
                                     std::vector<std::vector<double>> tables,
                                     std::string id = "table");

    int refinement() const { return G_; }
    int num_types() const { return static_cast<int>(types_.size()); }

    double value(int type, const Vec2& local) const {
        const TypeProfile& t = types_[type];
        int ix = static_cast<int>(local[0] / t.sx);
        ix = ix < 0 ? 0 : (ix >= t.nx ? t.nx - 1 : ix);
        int iy = 0;
        if (t.ny > 1) {
            iy = static_cast<int>(local[1] / t.sy);
            iy = iy < 0 ? 0 : (iy >= t.ny ? t.ny - 1 : iy);
        }
        return t.vals[static_cast<size_t>(iy) * t.nx + ix];
    }

    double integral(int type) const { return types_[type].integral; }
    double integral_sq(int type) const { return types_[type].integral_sq; }
    const std::vector<double>& integrals() const { return integrals_; }
    bool piecewise() const { return G_ > 1; }

    // f(local subcell box, value); boxes partition the prototile support.
    template <class F>
    void for_each_subcell(int type, F&& f) const {
        const TypeProfile& t = types_[type];
        for (int iy = 0; iy < t.ny; ++iy)
            for (int ix = 0; ix < t.nx; ++ix) {
                Box b{{ix * t.sx, iy * t.sy}, {(ix + 1) * t.sx, (iy + 1) * t.sy}};
                f(b, t.vals[static_cast<size_t>(iy) * t.nx + ix]);
            }
    }

    std::string id;

  private:
    struct TypeProfile {
        int nx = 1, ny = 1;
        double sx = 1.0, sy = 1.0;
        std::vector<double> vals;
        double integral = 0.0;
        double integral_sq = 0.0;
    };

    int dim_ = 2;
    int G_ = 1;
    std::vector<TypeProfile> types_;
    std::vector<double> integrals_;
};

}  // namespace subtile
