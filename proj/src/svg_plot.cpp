#include "fockopa/svg_plot.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fockopa {

namespace {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

std::string decay_svg(const DecayTable& t) {
    const double width = 640, height = 480;
    const double ml = 70, mr = 24, mt = 28, mb = 52;

    double xmin = 0, xmax = 1, ymin = -1, ymax = 0;
    bool have = false;
    for (const auto& r : t.rows) {
        if (r.n < 1 || r.c_n <= 0) continue;
        double x = std::log10(double(r.n)), y = std::log10(r.c_n);
        if (!have) {
            xmin = xmax = x;
            ymin = ymax = y;
            have = true;
        }
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    if (xmax - xmin < 0.2) xmax = xmin + 0.2;
    if (ymax - ymin < 0.2) ymax = ymin + 0.2;
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr); };
    auto py = [&](double y) { return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    os << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << width - ml - mr << "\" height=\""
       << height - mt - mb << "\" fill=\"none\" stroke=\"black\"/>\n";

    // decade ticks
    for (int e = int(std::floor(xmin)); e <= int(std::ceil(xmax)); ++e) {
        if (e < xmin - 1e-9 || e > xmax + 1e-9) continue;
        double x = px(double(e));
        os << "<line x1=\"" << fmt(x) << "\" y1=\"" << height - mb << "\" x2=\"" << fmt(x) << "\" y2=\""
           << height - mb + 6 << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << fmt(x) << "\" y=\"" << height - mb + 22
           << "\" text-anchor=\"middle\" font-size=\"12\">1e" << e << "</text>\n";
    }
    for (int e = int(std::floor(ymin)); e <= int(std::ceil(ymax)); ++e) {
        if (e < ymin - 1e-9 || e > ymax + 1e-9) continue;
        double y = py(double(e));
        os << "<line x1=\"" << ml - 6 << "\" y1=\"" << fmt(y) << "\" x2=\"" << ml << "\" y2=\"" << fmt(y)
           << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << ml - 10 << "\" y=\"" << fmt(y + 4)
           << "\" text-anchor=\"end\" font-size=\"12\">1e" << e << "</text>\n";
    }
    os << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 10
       << "\" text-anchor=\"middle\" font-size=\"13\">n</text>\n";
    os << "<text x=\"16\" y=\"" << (mt + height - mb) / 2
       << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 " << (mt + height - mb) / 2
       << ")\">c_n</text>\n";

    os << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (const auto& r : t.rows) {
        if (r.n < 1 || r.c_n <= 0) continue;
        os << fmt(px(std::log10(double(r.n)))) << "," << fmt(py(std::log10(r.c_n))) << " ";
    }
    os << "\"/>\n";
    for (const auto& r : t.rows) {
        if (r.n < 1 || r.c_n <= 0) continue;
        os << "<circle cx=\"" << fmt(px(std::log10(double(r.n)))) << "\" cy=\""
           << fmt(py(std::log10(r.c_n))) << "\" r=\"2.5\" fill=\"#1f77b4\"/>\n";
    }

    // fitted line over the window
    {
        double x1 = std::log10(double(std::max(t.window.first, 1)));
        double x2 = std::log10(double(std::max(t.window.second, 1)));
        double yc = 0;
        int cnt = 0;
        for (const auto& r : t.rows)
            if (r.n >= t.window.first && r.n <= t.window.second && r.c_n > 0 && r.n >= 1) {
                yc += std::log10(r.c_n) - t.slope * std::log10(double(r.n));
                ++cnt;
            }
        if (cnt > 0) {
            yc /= cnt;
            os << "<line x1=\"" << fmt(px(x1)) << "\" y1=\"" << fmt(py(t.slope * x1 + yc)) << "\" x2=\""
               << fmt(px(x2)) << "\" y2=\"" << fmt(py(t.slope * x2 + yc))
               << "\" stroke=\"#d62728\" stroke-dasharray=\"5,4\"/>\n";
        }
    }
    os << "<text x=\"" << width - mr - 8 << "\" y=\"" << mt + 18
       << "\" text-anchor=\"end\" font-size=\"13\">slope " << fmt(t.slope) << " (window " << t.window.first
       << ".." << t.window.second << ")</text>\n";
    os << "</svg>\n";
    return os.str();
}

void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        os << content;
        if (!os) throw std::runtime_error("cannot write " + tmp.string());
    }
    fs::rename(tmp, target);
}

}  // namespace fockopa
