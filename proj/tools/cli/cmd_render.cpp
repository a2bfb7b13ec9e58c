#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "cli/app.hpp"
#include "cli/commands.hpp"
#include "cli/manifest.hpp"
#include "vring/config_io.hpp"
#include "vring/errors.hpp"

namespace vring::cli {

namespace {

constexpr const char* kGridHeader = "t,s,x,y,z,zsx,zsy,zsz,zx,zy,zz,corr,feasible";

struct GridRow {
    double t;
    double s;
    double x;
    double y;
    double z;
};

double parse_field(const std::string& text, std::size_t line_no)
{
    if (text == "nan") return std::nan("");
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw ConfigError("grid line " + std::to_string(line_no) + ": bad number '" + text + "'");
    }
    return v;
}

std::vector<GridRow> read_grid(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read grid file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("grid file is empty: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kGridHeader) throw ConfigError("grid file has an unexpected header: " + path);

    std::vector<GridRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        if (fields.size() != 13) {
            throw ConfigError("grid line " + std::to_string(line_no) + ": expected 13 fields");
        }
        GridRow r{parse_field(fields[0], line_no), parse_field(fields[1], line_no),
                  parse_field(fields[2], line_no), parse_field(fields[3], line_no),
                  parse_field(fields[4], line_no)};
        if (!std::isfinite(r.t) || !std::isfinite(r.x) || !std::isfinite(r.y) || !std::isfinite(r.z)) {
            throw ConfigError("grid line " + std::to_string(line_no) + ": non-finite position");
        }
        rows.push_back(r);
    }
    if (rows.empty()) throw ConfigError("grid file has no data rows: " + path);
    return rows;
}

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

struct Point2 {
    double x;
    double y;
};

// Orthographic view from azimuth 35 deg, elevation 30 deg.
Point2 project_oblique(double x, double y, double z)
{
    constexpr double az = 35.0 * 3.14159265358979323846 / 180.0;
    constexpr double el = 30.0 * 3.14159265358979323846 / 180.0;
    const double u = x * std::cos(az) - y * std::sin(az);
    const double w = (x * std::sin(az) + y * std::cos(az)) * std::sin(el) + z * std::cos(el);
    return {u, w};
}

std::string polyline(const std::vector<Point2>& pts, double cx, double cy, double scale)
{
    std::ostringstream out;
    out << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.6\" points=\"";
    for (std::size_t i = 0; i <= pts.size(); ++i) {
        const Point2& p = pts[i % pts.size()];
        out << num(cx + scale * p.x) << ',' << num(cy - scale * p.y) << (i < pts.size() ? " " : "");
    }
    out << "\"/>\n";
    return out.str();
}

std::string svg_snapshot(const std::vector<GridRow>& ring, double extent, double t, const std::string& label)
{
    constexpr double panel = 420.0;
    constexpr double half = panel / 2.0;
    const double scale = 0.8 * half / extent;
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 2 * panel << "\" height=\"" << panel + 40
        << "\" viewBox=\"0 0 " << 2 * panel << ' ' << panel + 40 << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << panel << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"16\">" << label << " (t = " << num(t * 1000.0) << "e-3)</text>\n";

    // Left panel: oblique orthographic projection with x, y, z axes.
    {
        const double cx = half;
        const double cy = 40 + half;
        svg << "<text x=\"" << cx << "\" y=\"" << panel + 30
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">3D view</text>\n";
        const char* names[3] = {"x", "y", "z"};
        const double axes[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
        for (int a = 0; a < 3; ++a) {
            const Point2 tip = project_oblique(axes[a][0] * extent, axes[a][1] * extent, axes[a][2] * extent);
            svg << "<line x1=\"" << num(cx) << "\" y1=\"" << num(cy) << "\" x2=\"" << num(cx + scale * tip.x)
                << "\" y2=\"" << num(cy - scale * tip.y) << "\" stroke=\"#888\" stroke-width=\"1\"/>\n";
            svg << "<text x=\"" << num(cx + scale * tip.x * 1.06) << "\" y=\"" << num(cy - scale * tip.y * 1.06)
                << "\" font-family=\"sans-serif\" font-size=\"12\">" << names[a] << "</text>\n";
        }
        std::vector<Point2> pts;
        for (const auto& r : ring) pts.push_back(project_oblique(r.x, r.y, r.z));
        svg << polyline(pts, cx, cy, scale);
    }

    // Right panel: top (xy) view with ticks at +-extent/2 and +-extent.
    {
        const double cx = panel + half;
        const double cy = 40 + half;
        svg << "<text x=\"" << cx << "\" y=\"" << panel + 30
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">top view (x-y)</text>\n";
        svg << "<line x1=\"" << num(cx - scale * extent) << "\" y1=\"" << num(cy) << "\" x2=\""
            << num(cx + scale * extent) << "\" y2=\"" << num(cy) << "\" stroke=\"#888\" stroke-width=\"1\"/>\n";
        svg << "<line x1=\"" << num(cx) << "\" y1=\"" << num(cy - scale * extent) << "\" x2=\"" << num(cx)
            << "\" y2=\"" << num(cy + scale * extent) << "\" stroke=\"#888\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << num(cx + scale * extent + 4) << "\" y=\"" << num(cy + 4)
            << "\" font-family=\"sans-serif\" font-size=\"12\">x</text>\n";
        svg << "<text x=\"" << num(cx - 4) << "\" y=\"" << num(cy - scale * extent - 6)
            << "\" font-family=\"sans-serif\" font-size=\"12\">y</text>\n";
        for (double f : {-1.0, -0.5, 0.5, 1.0}) {
            const double v = f * extent;
            svg << "<line x1=\"" << num(cx + scale * v) << "\" y1=\"" << num(cy - 3) << "\" x2=\""
                << num(cx + scale * v) << "\" y2=\"" << num(cy + 3) << "\" stroke=\"#888\"/>\n";
            svg << "<text x=\"" << num(cx + scale * v) << "\" y=\"" << num(cy + 16)
                << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << num(v)
                << "</text>\n";
            svg << "<line x1=\"" << num(cx - 3) << "\" y1=\"" << num(cy - scale * v) << "\" x2=\""
                << num(cx + 3) << "\" y2=\"" << num(cy - scale * v) << "\" stroke=\"#888\"/>\n";
            svg << "<text x=\"" << num(cx - 6) << "\" y=\"" << num(cy - scale * v + 3)
                << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << num(v)
                << "</text>\n";
        }
        std::vector<Point2> pts;
        for (const auto& r : ring) pts.push_back({r.x, r.y});
        svg << polyline(pts, cx, cy, scale);
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace

int cmd_render(const RenderOptions& opt, const std::vector<std::string>& argv, std::ostream& out,
               std::ostream&)
{
    const std::string started = utc_timestamp();
    if (opt.format != "svg") throw ConfigError("--format supports only svg");
    const std::vector<GridRow> rows = read_grid(opt.grid);

    std::map<double, std::vector<GridRow>> by_time;
    double extent = 0.0;
    for (const auto& r : rows) {
        by_time[r.t].push_back(r);
        extent = std::max({extent, std::abs(r.x), std::abs(r.y), std::abs(r.z)});
    }
    if (extent == 0.0) extent = 1.0;
    for (auto& [t, ring] : by_time) {
        std::sort(ring.begin(), ring.end(), [](const GridRow& a, const GridRow& b) { return a.s < b.s; });
    }

    const std::filesystem::path dir(opt.out);
    std::filesystem::create_directories(dir);
    std::vector<std::string> files;
    std::stringstream names(opt.times);
    std::string which;
    while (std::getline(names, which, ',')) {
        double t = 0.0;
        const std::vector<GridRow>* ring = nullptr;
        if (which == "initial") {
            t = by_time.begin()->first;
            ring = &by_time.begin()->second;
        } else if (which == "terminal") {
            t = by_time.rbegin()->first;
            ring = &by_time.rbegin()->second;
        } else {
            throw ConfigError("--times entries must be initial or terminal, got '" + which + "'");
        }
        const std::string label = which == "initial" ? "Initial ring" : "Terminal ring";
        const std::string file = "ring_" + which + ".svg";
        write_text_file(dir / file, svg_snapshot(*ring, extent, t, label));
        files.push_back(file);
        out << "wrote " << (dir / file).string() << '\n';
    }
    nlohmann::ordered_json echo;
    echo["grid"] = opt.grid;
    echo["times"] = opt.times;
    echo["format"] = opt.format;
    write_manifest(dir, argv, echo, 0, started, files);
    return kOk;
}

} // namespace vring::cli
