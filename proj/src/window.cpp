#include "subtile/window.hpp"

#include <algorithm>
#include <cmath>

namespace subtile {

namespace {

constexpr long long kRasterCellCap = 1LL << 28;

// Child index of the supertile (type, level, anchor) whose support contains
// p; -1 if none (p on a seam is resolved by the half-open box convention).
int find_child(const Window::Content& c, int type, int level, const Vec2& anchor, const Vec2& p,
               Supertile* out) {
    const std::vector<Vec2>& offs = c.sub->child_offsets[type];
    const std::vector<Child>& kids = c.sub->rules[type].children;
    const Vec2& s = c.scales[level - 1];
    for (size_t i = 0; i < kids.size(); ++i) {
        Vec2 ca{anchor[0] + s[0] * offs[i][0], anchor[1] + s[1] * offs[i][1]};
        Vec2 size = c.sub->tile_size(kids[i].type);
        bool inside = true;
        for (int ax = 0; ax < c.sub->dim; ++ax) {
            double hi = ca[ax] + s[ax] * size[ax];
            if (p[ax] < ca[ax] || p[ax] >= hi) {
                inside = false;
                break;
            }
        }
        if (inside) {
            out->type = kids[i].type;
            out->level = level - 1;
            out->anchor = ca;
            return static_cast<int>(i);
        }
    }
    return -1;
}

Supertile descend(const Window::Content& c, Supertile from, const Vec2& p, int to_level,
                  std::vector<int>* digits) {
    while (from.level > to_level) {
        Supertile next;
        int idx = find_child(c, from.type, from.level, from.anchor, p, &next);
        if (idx < 0) throw Error("hierarchy descent failed (point on no child)");
        if (digits) digits->push_back(idx);
        from = next;
    }
    return from;
}

}  // namespace

double Window::margin() const {
    double m = std::numeric_limits<double>::max();
    for (int ax = 0; ax < sub().dim; ++ax) {
        m = std::min(m, anchor_[ax]);
        m = std::min(m, content_->extent[ax] - anchor_[ax]);
    }
    return m;
}

void Window::require_margin(double R) const {
    if (!margin_ok(R))
        throw MarginError("query radius " + std::to_string(R) + " exceeds window margin " +
                          std::to_string(margin()));
}

Window Window::with_anchor(Vec2 a) const {
    for (int ax = 0; ax < sub().dim; ++ax)
        if (a[ax] < 0 || a[ax] > content_->extent[ax])
            throw MarginError("anchor outside window support");
    if (sub().dim == 1) a[1] = 0.0;
    return Window(content_, a);
}

Tile0 Window::tile_at(Vec2 p) const {
    for (int ax = 0; ax < sub().dim; ++ax)
        if (p[ax] < 0 || p[ax] >= content_->extent[ax])
            throw MarginError("point outside window support");
    if (sub().dim == 1) p[1] = 0.5;
    Supertile root{content_->root_type, content_->levels, Vec2{0.0, 0.0}};
    Supertile t = descend(*content_, root, p, 0, nullptr);
    return {t.type, t.anchor};
}

std::pair<int, Vec2> Window::type_at(Vec2 p) const {
    Tile0 t = tile_at(p);
    return {t.type, Vec2{p[0] - t.anchor[0], sub().dim == 2 ? p[1] - t.anchor[1] : 0.0}};
}

Supertile Window::supertile_at(Vec2 p, int k) const {
    if (k < 0 || k > content_->levels) throw Error("supertile level out of range");
    for (int ax = 0; ax < sub().dim; ++ax)
        if (p[ax] < 0 || p[ax] >= content_->extent[ax])
            throw MarginError("point outside window support");
    if (sub().dim == 1) p[1] = 0.5;
    Supertile root{content_->root_type, content_->levels, Vec2{0.0, 0.0}};
    return descend(*content_, root, p, k, nullptr);
}

Address Window::address_at(Vec2 p, int down_to_level) const {
    for (int ax = 0; ax < sub().dim; ++ax)
        if (p[ax] < 0 || p[ax] >= content_->extent[ax])
            throw MarginError("point outside window support");
    if (down_to_level < 0 || down_to_level > content_->levels)
        throw Error("address level out of range");
    if (sub().dim == 1) p[1] = 0.5;
    Address addr;
    addr.root_type = content_->root_type;
    Supertile root{content_->root_type, content_->levels, Vec2{0.0, 0.0}};
    descend(*content_, root, p, down_to_level, &addr.digits);
    return addr;
}

std::pair<Supertile, Address> Window::supertile_with_address(Vec2 p, int k) const {
    return {supertile_at(p, k), address_at(p, k)};
}

std::shared_ptr<const Raster> Window::raster(bool with_offsets) const {
    const Substitution& s = sub();
    if (!s.integral_lattice)
        throw Error("raster requires an integral lattice substitution");
    std::lock_guard<std::mutex> lock(content_->raster_mutex);
    if (content_->raster_cache && (!with_offsets || content_->raster_has_offsets))
        return content_->raster_cache;

    auto r = std::make_shared<Raster>();
    r->w = std::llround(content_->extent[0]);
    r->h = s.dim == 2 ? std::llround(content_->extent[1]) : 1;
    if (r->w * r->h > kRasterCellCap) throw Error("window too large to rasterize");
    r->type.assign(static_cast<size_t>(r->w * r->h), 0);
    if (with_offsets) r->suboff.assign(static_cast<size_t>(r->w * r->h), 0);

    Box all{{0.0, 0.0}, content_->extent};
    if (s.dim == 1) all.hi[1] = 1.0;
    for_each_tile(all, [&](int type, Vec2 anchor) {
        long long ax = std::llround(anchor[0]);
        long long ay = s.dim == 2 ? std::llround(anchor[1]) : 0;
        long long w = s.dim == 2 ? s.prototiles[type].extent[0] : std::llround(s.lengths[type]);
        long long h = s.dim == 2 ? s.prototiles[type].extent[1] : 1;
        for (long long dy = 0; dy < h; ++dy) {
            size_t row = static_cast<size_t>((ay + dy) * r->w + ax);
            for (long long dx = 0; dx < w; ++dx) {
                r->type[row + dx] = static_cast<uint8_t>(type);
                if (with_offsets)
                    r->suboff[row + dx] = static_cast<uint16_t>(dy * w + dx);
            }
        }
    });
    content_->raster_cache = r;
    content_->raster_has_offsets = with_offsets;
    return r;
}

Window make_window(std::shared_ptr<const Substitution> sub, int root_type, int levels,
                   const AnchorMode& mode) {
    if (root_type < 0 || root_type >= sub->num_types()) throw Error("root type out of range");
    if (levels < 0) throw Error("levels must be >= 0");

    auto content = std::make_shared<Window::Content>();
    content->sub = std::move(sub);
    content->root_type = root_type;
    content->levels = levels;
    content->scales.resize(levels + 1);
    const Substitution& s = *content->sub;
    double sc = 1.0;
    for (int k = 0; k <= levels; ++k) {
        content->scales[k] = {sc, s.dim == 2 ? sc : 1.0};
        sc *= s.lambda;
    }
    Vec2 size = s.tile_size(root_type);
    content->extent = {content->scales[levels][0] * size[0],
                       content->scales[levels][1] * size[1]};
    if (s.dim == 1) content->extent[1] = 1.0;

    Vec2 anchor{0.0, 0.0};
    if (mode.kind == AnchorMode::Center) {
        anchor[0] = std::floor(content->extent[0] / 2);
        if (s.dim == 2) anchor[1] = std::floor(content->extent[1] / 2);
    } else {
        if (static_cast<int>(mode.digits.size()) > levels)
            throw Error("cell address longer than the hierarchy");
        Supertile cur{root_type, levels, Vec2{0.0, 0.0}};
        for (int d : mode.digits) {
            const std::vector<Child>& kids = s.rules[cur.type].children;
            if (d < 0 || d >= static_cast<int>(kids.size()))
                throw Error("cell address digit out of range");
            const Vec2& off = s.child_offsets[cur.type][d];
            const Vec2& scl = content->scales[cur.level - 1];
            cur = {kids[d].type, cur.level - 1,
                   Vec2{cur.anchor[0] + scl[0] * off[0], cur.anchor[1] + scl[1] * off[1]}};
        }
        anchor = cur.anchor;
    }
    return Window(content, anchor);
}

Window make_window(const Substitution& sub, int root_type, int levels, const AnchorMode& mode) {
    return make_window(std::make_shared<const Substitution>(sub), root_type, levels, mode);
}

WindowCursor::WindowCursor(const Window& w)
    : win_(w), hint_level_((w.levels() + 1) / 2), qscale_(w.scale(hint_level_)) {
    qcols_ = static_cast<long long>(w.extent()[0] / qscale_) + 2;
}

Tile0 WindowCursor::tile_at(Vec2 p) {
    const Window::Content& c = *win_.content();
    const Substitution& s = win_.sub();
    for (int ax = 0; ax < s.dim; ++ax)
        if (p[ax] < 0 || p[ax] >= c.extent[ax]) throw MarginError("point outside window support");
    if (s.dim == 1) p[1] = 0.5;

    long long kx = static_cast<long long>(p[0] / qscale_);
    long long ky = s.dim == 2 ? static_cast<long long>(p[1] / qscale_) : 0;
    long long key = ky * qcols_ + kx;

    Supertile start{c.root_type, c.levels, Vec2{0.0, 0.0}};
    auto it = memo_.find(key);
    bool hit = false;
    if (it != memo_.end()) {
        const Supertile& h = it->second;
        Box b = win_.tile_box(h.type, h.level, h.anchor);
        if (box_contains(b, p, s.dim)) {
            start = h;
            hit = true;
        }
    }
    if (!hit && c.levels > hint_level_) {
        // Record the mid-level supertile for this grid slot.
        Supertile root{c.root_type, c.levels, Vec2{0.0, 0.0}};
        Supertile mid = root;
        while (mid.level > hint_level_) {
            Supertile next;
            if (find_child(c, mid.type, mid.level, mid.anchor, p, &next) < 0)
                throw Error("hierarchy descent failed");
            mid = next;
        }
        memo_[key] = mid;
        start = mid;
    }
    while (start.level > 0) {
        Supertile next;
        if (find_child(c, start.type, start.level, start.anchor, p, &next) < 0)
            throw Error("hierarchy descent failed");
        start = next;
    }
    return {start.type, start.anchor};
}

std::pair<int, Vec2> WindowCursor::type_at(Vec2 p) {
    Tile0 t = tile_at(p);
    return {t.type,
            Vec2{p[0] - t.anchor[0], win_.sub().dim == 2 ? p[1] - t.anchor[1] : 0.0}};
}

}  // namespace subtile
