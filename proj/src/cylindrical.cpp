#include "subtile/cylindrical.hpp"

#include "subtile/errors.hpp"

namespace subtile {

CylindricalFunction CylindricalFunction::constants(const Substitution& sub,
                                                   std::vector<double> values, std::string id) {
    std::vector<std::vector<double>> tables;
    tables.reserve(values.size());
    for (double v : values) tables.push_back({v});
    CylindricalFunction f = table(sub, 1, std::move(tables), std::move(id));
    return f;
}

CylindricalFunction CylindricalFunction::table(const Substitution& sub, int refinement,
                                               std::vector<std::vector<double>> tables,
                                               std::string id) {
    if (refinement < 1) throw Error("refinement must be >= 1");
    if (static_cast<int>(tables.size()) != sub.num_types())
        throw Error("need one profile table per prototile");
    CylindricalFunction f;
    f.dim_ = sub.dim;
    f.G_ = refinement;
    f.id = std::move(id);
    f.types_.resize(tables.size());
    f.integrals_.resize(tables.size());
    for (int t = 0; t < sub.num_types(); ++t) {
        TypeProfile& tp = f.types_[t];
        Vec2 size = sub.tile_size(t);
        tp.nx = refinement;
        tp.ny = sub.dim == 2 ? refinement : 1;
        tp.sx = size[0] / tp.nx;
        tp.sy = sub.dim == 2 ? size[1] / tp.ny : 1.0;
        size_t want = static_cast<size_t>(tp.nx) * tp.ny;
        if (tables[t].size() != want)
            throw Error("profile table for type " + std::to_string(t + 1) + " must have " +
                        std::to_string(want) + " entries");
        tp.vals = std::move(tables[t]);
        double cellvol = tp.sx * (sub.dim == 2 ? tp.sy : 1.0);
        for (double v : tp.vals) {
            tp.integral += v * cellvol;
            tp.integral_sq += v * v * cellvol;
        }
        f.integrals_[t] = tp.integral;
    }
    return f;
}

}  // namespace subtile
