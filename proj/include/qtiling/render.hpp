#ifndef QTILING_RENDER_HPP
#define QTILING_RENDER_HPP

#include <array>
#include <sstream>
#include <stdexcept>
#include <string>

#include "qtiling/dad.hpp"
#include "qtiling/greedy.hpp"
#include "qtiling/lattice.hpp"
#include "qtiling/system.hpp"

// Visual inspection aids for d <= 2: the tiles c + box_D of C(x), the
// r-gaps between them, the cube box_E at the origin, and the first cover
// Omega_i containing each lattice cell's translate. Output is a pure
// function of (spec, point, params, window) — byte-identical across runs.

namespace qtiling {

inline const std::array<const char*, 9>& cover_palette() {
    static const std::array<const char*, 9> palette = {
        "#4e79a7", "#f28e2b", "#e15759", "#76b7b4", "#59a14f",
        "#edc948", "#b07aa1", "#ff9da7", "#9c755f"};
    return palette;
}

namespace detail {

struct RenderScene {
    SeparatedPartition partition;
    PointSet centers;               // representatives within box_{W + D}
    std::vector<int> cell_cover;    // first cover per cell of box_W, lex order; -1 uncovered
    Coord W = 0;
};

inline RenderScene build_scene(const OdometerSpec& spec, const SystemPoint& x,
                               const GreedyParams& params, Coord W) {
    if (spec.d > 2) throw std::invalid_argument("render: only d <= 2 supported");
    if (W < 1) throw std::invalid_argument("render: window radius must be positive");
    GreedyClassCache cache;
    RenderScene scene;
    scene.W = W;
    scene.partition = cache.partition(spec, params);
    GreedyRun run = greedy_run(spec, x, params);
    scene.centers = materialize_classes(run.classes(), scene.partition.modulus, W + params.D());
    const int covers = shift_count(spec.d);
    for (const auto& n : cube_points(W, spec.d)) {
        int first = -1;
        const SystemPoint xn = act(x, n, spec);
        for (int i = 0; i < covers; ++i)
            if (cover_membership(spec, xn, CoverId{i}, params, &cache)) {
                first = i;
                break;
            }
        scene.cell_cover.push_back(first);
    }
    return scene;
}

inline std::string render_header(const OdometerSpec& spec, const SystemPoint& x,
                                 const GreedyParams& params, const RenderScene& scene) {
    std::ostringstream out;
    out << "report: render\n";
    out << "d: " << spec.d << "\n";
    out << "N: " << params.N << "\n";
    out << "r: " << params.r << "\n";
    out << "L: " << params.L << "\n";
    out << "D: " << params.D() << "\n";
    out << "E: " << params.E() << "\n";
    out << "moduli: ";
    for (std::size_t i = 0; i < spec.moduli.size(); ++i) out << (i ? "," : "") << spec.moduli[i];
    out << "\n";
    out << "window: " << scene.W << "\n";
    out << "point: " << x.residues.back().str() << "\n";
    out << "partition_modulus: " << scene.partition.modulus << "\n";
    return out.str();
}

inline bool in_some_tile(const PointSet& centers, const LatticeVector& n, Coord D, bool& is_center) {
    is_center = set_contains(centers, n);
    if (is_center) return true;
    for (const auto& c : centers)
        if ((n - c).chebyshev() <= D) return true;
    return false;
}

}  // namespace detail

/// ASCII view. d=1: one character column per cell of [-W, W], three rows
/// (cover digit, tile shape, origin E-cube). d=2: the same as two stacked
/// (2W+1)-line grids, rows by the first coordinate, columns by the second.
inline std::string render_text(const OdometerSpec& spec, const SystemPoint& x,
                               const GreedyParams& params, Coord W) {
    spec.validate();
    validate_greedy_params(params, spec.d);
    detail::RenderScene scene = detail::build_scene(spec, x, params, W);
    std::ostringstream out;
    out << detail::render_header(spec, x, params, scene) << "\n";

    const Coord side = 2 * W + 1;
    auto cover_char = [&](std::size_t cell) {
        int i = scene.cell_cover[cell];
        return i < 0 ? '.' : static_cast<char>('0' + i);
    };
    auto tile_char = [&](const LatticeVector& n) {
        bool is_center = false;
        if (detail::in_some_tile(scene.centers, n, params.D(), is_center))
            return is_center ? '^' : '=';
        return '.';
    };

    if (spec.d == 1) {
        out << "cover: ";
        for (Coord n = -W; n <= W; ++n) out << cover_char(static_cast<std::size_t>(n + W));
        out << "\n" << "tiles: ";
        for (Coord n = -W; n <= W; ++n) {
            LatticeVector v = LatticeVector::zero(1);
            v[0] = n;
            out << tile_char(v);
        }
        out << "\n" << "ecube: ";
        for (Coord n = -W; n <= W; ++n)
            out << (n == 0 ? '0' : (n >= -params.E() && n <= params.E() ? '~' : '.'));
        out << "\n";
        return out.str();
    }

    out << "cover:\n";
    for (Coord a = -W; a <= W; ++a) {
        for (Coord b = -W; b <= W; ++b)
            out << cover_char(static_cast<std::size_t>((a + W) * side + (b + W)));
        out << "\n";
    }
    out << "\n" << "tiles:\n";
    for (Coord a = -W; a <= W; ++a) {
        for (Coord b = -W; b <= W; ++b) {
            LatticeVector v = LatticeVector::zero(2);
            v[0] = a;
            v[1] = b;
            out << tile_char(v);
        }
        out << "\n";
    }
    return out.str();
}

/// SVG 1.1 view, d <= 2: cover-colored cells, solid tile outlines with a
/// dot at each center, the dashed cube box_E at the origin, and a legend of
/// the 3^d cover colors. Integer pixel coordinates throughout.
inline std::string render_svg(const OdometerSpec& spec, const SystemPoint& x,
                              const GreedyParams& params, Coord W) {
    spec.validate();
    validate_greedy_params(params, spec.d);
    detail::RenderScene scene = detail::build_scene(spec, x, params, W);

    const Coord cell = 16;
    const Coord side = 2 * W + 1;
    const Coord grid_w = side * cell;
    const Coord grid_h = (spec.d == 1 ? 1 : side) * cell;
    const int covers = shift_count(spec.d);
    const Coord legend_w = 120;
    const Coord width = grid_w + legend_w + 24;
    const Coord height = std::max<Coord>(grid_h, static_cast<Coord>(covers) * 20 + 12) + 16;

    // cell (a, b) -> pixel; d=1 uses a single row at a = 0
    auto px = [&](Coord b) { return (b + W) * cell; };
    auto py = [&](Coord a) { return spec.d == 1 ? Coord{0} : (a + W) * cell; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<title>";
    out << "d=" << spec.d << " N=" << params.N << " r=" << params.r << " L=" << params.L
        << " m=" << scene.partition.modulus << " W=" << W << " point=" << x.residues.back().str();
    out << "</title>\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
        << "\" fill=\"#ffffff\"/>\n";

    std::size_t idx = 0;
    for (const auto& n : cube_points(W, spec.d)) {
        const int i = scene.cell_cover[idx++];
        const char* fill = i < 0 ? "#dddddd" : cover_palette()[static_cast<std::size_t>(i)];
        const Coord a = spec.d == 1 ? 0 : n[0];
        const Coord b = spec.d == 1 ? n[0] : n[1];
        out << "<rect x=\"" << px(b) << "\" y=\"" << py(a) << "\" width=\"" << cell
            << "\" height=\"" << cell << "\" fill=\"" << fill << "\"/>\n";
    }

    const Coord D = params.D();
    for (const auto& c : scene.centers) {
        const Coord a = spec.d == 1 ? 0 : c[0];
        const Coord b = spec.d == 1 ? c[0] : c[1];
        out << "<rect x=\"" << px(b - D) << "\" y=\"" << py(spec.d == 1 ? 0 : a - D) << "\" width=\""
            << (2 * D + 1) * cell << "\" height=\"" << (spec.d == 1 ? cell : (2 * D + 1) * cell)
            << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"2\"/>\n";
        out << "<circle cx=\"" << px(b) + cell / 2 << "\" cy=\"" << py(a) + cell / 2
            << "\" r=\"3\" fill=\"#000000\"/>\n";
    }

    const Coord E = params.E();
    out << "<rect x=\"" << px(-E) << "\" y=\"" << py(spec.d == 1 ? 0 : -E) << "\" width=\""
        << (2 * E + 1) * cell << "\" height=\"" << (spec.d == 1 ? cell : (2 * E + 1) * cell)
        << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"2\" stroke-dasharray=\"4,4\"/>\n";

    const Coord lx = grid_w + 16;
    for (int i = 0; i < covers; ++i) {
        const Coord ly = 8 + static_cast<Coord>(i) * 20;
        out << "<rect x=\"" << lx << "\" y=\"" << ly << "\" width=\"14\" height=\"14\" fill=\""
            << cover_palette()[static_cast<std::size_t>(i)] << "\"/>\n";
        out << "<text x=\"" << lx + 20 << "\" y=\"" << ly + 12
            << "\" font-family=\"monospace\" font-size=\"12\" fill=\"#000000\">omega_" << i
            << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace qtiling

#endif  // QTILING_RENDER_HPP
