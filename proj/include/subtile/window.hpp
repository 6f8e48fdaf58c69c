#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "subtile/errors.hpp"
#include "subtile/geometry.hpp"
#include "subtile/substitution.hpp"

namespace subtile {

// Path through the subdivision hierarchy: child indices from the root down,
// deepest level last.
struct Address {
    int root_type = 0;
    std::vector<int> digits;
};

struct Supertile {
    int type = 0;
    int level = 0;
    Vec2 anchor{0.0, 0.0};  // lattice corner, window coordinates
};

struct Tile0 {
    int type = 0;
    Vec2 anchor{0.0, 0.0};
};

// Cell-level raster of a window: per unit cell the covering tile's type and
// the cell's index inside that tile. One-dimensional windows use h == 1.
struct Raster {
    long long w = 0, h = 1;
    std::vector<uint8_t> type;
    std::vector<uint16_t> suboff;  // filled only when requested

    uint8_t type_at(long long x, long long y) const {
        return type[static_cast<size_t>(y) * w + x];
    }
    uint16_t suboff_at(long long x, long long y) const {
        return suboff[static_cast<size_t>(y) * w + x];
    }
};

// A generated patch zeta^n(T_root) together with its full supertile
// hierarchy and a distinguished anchor point that plays the role of the
// origin. Content is immutable and shared between re-anchored copies; all
// queries are pure and safe to issue concurrently.
class Window {
  public:
    struct Content {
        std::shared_ptr<const Substitution> sub;
        int root_type = 0;
        int levels = 0;
        Vec2 extent{0.0, 0.0};
        std::vector<Vec2> scales;  // scales[k] = per-axis factor at level k

        mutable std::mutex raster_mutex;
        mutable std::shared_ptr<const Raster> raster_cache;
        mutable bool raster_has_offsets = false;
    };

    Window(std::shared_ptr<const Content> content, Vec2 anchor)
        : content_(std::move(content)), anchor_(anchor) {}

    const Substitution& sub() const { return *content_->sub; }
    std::shared_ptr<const Substitution> sub_ptr() const { return content_->sub; }
    int root_type() const { return content_->root_type; }
    int levels() const { return content_->levels; }
    Vec2 extent() const { return content_->extent; }
    const Vec2& anchor() const { return anchor_; }
    double scale(int level) const { return content_->scales[level][0]; }

    double margin() const;
    bool margin_ok(double R) const { return R <= margin() + 1e-9; }
    void require_margin(double R) const;

    Window with_anchor(Vec2 a) const;

    // Point queries (window coordinates). Throw MarginError outside the
    // window support.
    Tile0 tile_at(Vec2 p) const;
    std::pair<int, Vec2> type_at(Vec2 p) const;  // (type, offset inside tile)
    Supertile supertile_at(Vec2 p, int k) const;
    // Digits of the descent from the root down to the given level (so the
    // full address of the order-0 tile by default).
    Address address_at(Vec2 p, int down_to_level = 0) const;
    std::pair<Supertile, Address> supertile_with_address(Vec2 p, int k) const;

    // Enumerates every order-0 tile whose support meets `query`.
    template <class F>
    void for_each_tile(const Box& query, F&& f) const {
        visit_tiles(*content_, content_->root_type, content_->levels, Vec2{0.0, 0.0}, query,
                    f);
    }

    Box tile_box(int type, int level, Vec2 anchor) const {
        return make_box(*content_, type, level, anchor);
    }

    // Cell raster of the whole window (integral lattices only; built lazily
    // and cached on the shared content).
    std::shared_ptr<const Raster> raster(bool with_offsets = false) const;

    std::shared_ptr<const Content> content() const { return content_; }

  private:
    static Box make_box(const Content& c, int type, int level, Vec2 anchor) {
        Vec2 size = c.sub->tile_size(type);
        Box b;
        b.lo = anchor;
        b.hi = {anchor[0] + c.scales[level][0] * size[0],
                anchor[1] + c.scales[level][1] * size[1]};
        return b;
    }

    template <class F>
    static void visit_tiles(const Content& c, int type, int level, Vec2 anchor, const Box& query,
                            F& f) {
        Box b = make_box(c, type, level, anchor);
        if (!boxes_intersect(b, query, c.sub->dim)) return;
        if (level == 0) {
            f(type, anchor);
            return;
        }
        const std::vector<Vec2>& offs = c.sub->child_offsets[type];
        const std::vector<Child>& kids = c.sub->rules[type].children;
        const Vec2& s = c.scales[level - 1];
        for (size_t i = 0; i < kids.size(); ++i) {
            Vec2 ca{anchor[0] + s[0] * offs[i][0], anchor[1] + s[1] * offs[i][1]};
            visit_tiles(c, kids[i].type, level - 1, ca, query, f);
        }
    }

    std::shared_ptr<const Content> content_;
    Vec2 anchor_;
};

struct AnchorMode {
    enum Kind { Center, CellAddress } kind = Center;
    std::vector<int> digits;

    static AnchorMode center() { return {}; }
    static AnchorMode cell(std::vector<int> d) { return {CellAddress, std::move(d)}; }
};

Window make_window(std::shared_ptr<const Substitution> sub, int root_type, int levels,
                   const AnchorMode& mode = AnchorMode::center());
Window make_window(const Substitution& sub, int root_type, int levels,
                   const AnchorMode& mode = AnchorMode::center());

// Memoized point queries for one worker thread. Caches the supertile at the
// mid hierarchy level, keyed by a coarse grid, and verifies containment
// before reusing an entry, so results match Window::tile_at exactly.
class WindowCursor {
  public:
    explicit WindowCursor(const Window& w);
    Tile0 tile_at(Vec2 p);
    std::pair<int, Vec2> type_at(Vec2 p);

  private:
    const Window win_;
    int hint_level_;
    double qscale_;
    long long qcols_;
    std::unordered_map<long long, Supertile> memo_;
};

}  // namespace subtile
