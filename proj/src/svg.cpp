#include "cudg/svg.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace cudg {

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

}  // namespace

std::string render_register_svg(const Graph& g, const Embedding& emb, const DomainParams& params) {
    if (emb.n != g.n()) throw std::invalid_argument("render_register_svg: embedding/graph size mismatch");

    const double L = params.L;
    const double pad = 0.12 * L;
    const double view = L + pad;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\""
        << num(-view) << " " << num(-view) << " " << num(2 * view) << " " << num(2 * view) << "\">\n";
    out << "  <style>\n"
           "    .register { fill: none; stroke: #888; stroke-width: 0.4; stroke-dasharray: 2 1.5; }\n"
           "    .blockade { fill: #4a90d9; fill-opacity: 0.12; stroke: #4a90d9; stroke-width: 0.25; }\n"
           "    .edge { stroke: #333; stroke-width: 0.35; }\n"
           "    .edge.mismatch { stroke: #d0342c; stroke-dasharray: 1.2 1.2; }\n"
           "    .conflict { stroke: #e8a23c; stroke-width: 0.25; stroke-dasharray: 0.6 0.9; }\n"
           "    .vertex { fill: #1b3a5c; }\n"
           "    .label { font-family: sans-serif; font-size: 3px; fill: #1b3a5c; }\n"
           "  </style>\n";
    out << "  <circle class=\"register\" cx=\"0\" cy=\"0\" r=\"" << num(L) << "\"/>\n";

    // SVG y grows downward; flip so the drawing matches the usual orientation.
    auto px = [&](int v) { return emb.at(v, 0); };
    auto py = [&](int v) { return -emb.at(v, 1); };

    for (int v = 0; v < g.n(); ++v)
        out << "  <circle class=\"blockade\" cx=\"" << num(px(v)) << "\" cy=\"" << num(py(v))
            << "\" r=\"" << num(params.d_adj / 2.0) << "\"/>\n";

    const double adj_sq = params.d_adj * params.d_adj;
    for (int i = 0; i < g.n(); ++i) {
        for (int j = i + 1; j < g.n(); ++j) {
            double sq = 0.0;
            for (int a = 0; a < emb.dim; ++a) {
                double d = emb.at(i, a) - emb.at(j, a);
                sq += d * d;
            }
            bool within = sq <= adj_sq;
            if (g.adjacent(i, j)) {
                out << "  <line class=\"edge" << (within ? "" : " mismatch") << "\" x1=\"" << num(px(i))
                    << "\" y1=\"" << num(py(i)) << "\" x2=\"" << num(px(j)) << "\" y2=\"" << num(py(j))
                    << "\"/>\n";
            } else if (within) {
                out << "  <line class=\"conflict\" x1=\"" << num(px(i)) << "\" y1=\"" << num(py(i))
                    << "\" x2=\"" << num(px(j)) << "\" y2=\"" << num(py(j)) << "\"/>\n";
            }
        }
    }

    for (int v = 0; v < g.n(); ++v) {
        out << "  <circle class=\"vertex\" cx=\"" << num(px(v)) << "\" cy=\"" << num(py(v))
            << "\" r=\"0.8\"/>\n";
        out << "  <text class=\"label\" x=\"" << num(px(v) + 1.1) << "\" y=\"" << num(py(v) - 1.1)
            << "\">" << v << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace cudg
