#include <doctest.h>

#include "mvkit/plotting.hpp"
#include "mvkit/errors.hpp"
#include "oracles.hpp"

using namespace mvkit;

namespace {

std::size_t count_occurrences(const std::string& haystack, const std::string& needle) {
    std::size_t count = 0, at = 0;
    while ((at = haystack.find(needle, at)) != std::string::npos) {
        ++count;
        at += needle.size();
    }
    return count;
}

}  // namespace

TEST_SUITE_BEGIN("plotting");

TEST_CASE("identical input produces byte-identical svg") {
    const Eigen::MatrixXd embedding = oracles::gaussian_matrix(25, 3, 1);
    Eigen::VectorXi labels(25);
    for (int i = 0; i < 25; ++i) labels(i) = i % 4;
    CHECK(scatter_svg(embedding, labels) == scatter_svg(embedding, labels));
    CHECK(scatter_svg(embedding) == scatter_svg(embedding));
}

TEST_CASE("one-dimensional embeddings are rejected") {
    CHECK_THROWS_AS(scatter_svg(oracles::gaussian_matrix(10, 1, 2)), RankError);
}

TEST_CASE("every panel draws one circle per sample") {
    const Eigen::MatrixXd embedding = oracles::gaussian_matrix(3, 2, 3);
    const std::string svg = scatter_svg(embedding);
    CHECK(count_occurrences(svg, "<circle") == 3u * 2u * 2u);  // 2x2 panels, 3 points
    const Eigen::MatrixXd wide = oracles::gaussian_matrix(3, 6, 4);
    CHECK(count_occurrences(scatter_svg(wide), "<circle") == 3u * 4u * 4u);  // capped at 4 dims
}

TEST_CASE("svg writes whole file") {
    const auto path = std::filesystem::temp_directory_path() / "mvkit_plot_test.svg";
    std::filesystem::remove(path);
    emit_scatter_svg(oracles::gaussian_matrix(5, 2, 5), std::nullopt, path);
    CHECK(std::filesystem::file_size(path) > 100);
    std::filesystem::remove(path);
}

TEST_SUITE_END();
