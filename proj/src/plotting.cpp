#include "mvkit/plotting.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <vector>

#include "mvkit/errors.hpp"

namespace mvkit {

namespace {

constexpr double kPanel = 200.0;
constexpr double kGap = 12.0;
constexpr double kMargin = 24.0;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

}  // namespace

std::string scatter_svg(const Eigen::MatrixXd& embedding,
                        const std::optional<Eigen::VectorXi>& labels) {
    if (embedding.cols() < 2)
        throw RankError("scatter_svg: need at least 2 embedding dimensions, got " +
                        std::to_string(embedding.cols()));
    if (labels && labels->size() != embedding.rows())
        throw LengthMismatch("scatter_svg: labels length mismatch");

    const Eigen::Index dims = std::min<Eigen::Index>(4, embedding.cols());
    const Eigen::Index n = embedding.rows();
    const double size = 2 * kMargin + dims * kPanel + (dims - 1) * kGap;

    // stable label -> palette mapping by ascending label value
    std::map<int, std::size_t> color_of;
    if (labels)
        for (Eigen::Index i = 0; i < n; ++i) color_of.emplace((*labels)(i), 0);
    std::size_t next = 0;
    for (auto& [value, slot] : color_of) slot = next++ % 10;

    // per-dimension ranges with 5% padding
    std::vector<double> lo(dims), hi(dims);
    for (Eigen::Index d = 0; d < dims; ++d) {
        lo[d] = embedding.col(d).minCoeff();
        hi[d] = embedding.col(d).maxCoeff();
        const double pad = (hi[d] - lo[d]) > 0 ? 0.05 * (hi[d] - lo[d]) : 0.5;
        lo[d] -= pad;
        hi[d] += pad;
    }

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(size) + "\" height=\"" +
           fmt(size) + "\" viewBox=\"0 0 " + fmt(size) + " " + fmt(size) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (Eigen::Index row = 0; row < dims; ++row) {
        for (Eigen::Index col = 0; col < dims; ++col) {
            const double x0 = kMargin + col * (kPanel + kGap);
            const double y0 = kMargin + row * (kPanel + kGap);
            svg += "<rect x=\"" + fmt(x0) + "\" y=\"" + fmt(y0) + "\" width=\"" + fmt(kPanel) +
                   "\" height=\"" + fmt(kPanel) +
                   "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1\"/>\n";
            svg += "<text x=\"" + fmt(x0 + 4) + "\" y=\"" + fmt(y0 + 12) +
                   "\" font-family=\"monospace\" font-size=\"10\" fill=\"#555555\">dim" +
                   std::to_string(col) + " / dim" + std::to_string(row) + "</text>\n";
            for (Eigen::Index i = 0; i < n; ++i) {
                const double fx = (embedding(i, col) - lo[col]) / (hi[col] - lo[col]);
                const double fy = (embedding(i, row) - lo[row]) / (hi[row] - lo[row]);
                const char* color =
                    labels ? kPalette[color_of.at((*labels)(i))] : kPalette[0];
                svg += "<circle cx=\"" + fmt(x0 + fx * kPanel) + "\" cy=\"" +
                       fmt(y0 + (1.0 - fy) * kPanel) + "\" r=\"2\" fill=\"" + color +
                       "\" fill-opacity=\"0.8\"/>\n";
            }
        }
    }
    svg += "</svg>\n";
    return svg;
}

void emit_scatter_svg(const Eigen::MatrixXd& embedding,
                      const std::optional<Eigen::VectorXi>& labels,
                      const std::filesystem::path& out) {
    const std::string svg = scatter_svg(embedding, labels);
    std::ofstream file(out, std::ios::binary);
    if (!file) throw IoError("cannot open " + out.string() + " for writing");
    file << svg;
    if (!file) throw IoError("write failed for " + out.string());
}

}  // namespace mvkit
