#include "mvkit/datasets.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "mvkit/random.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace mvkit {

namespace {

// K points in R^dim with all pairwise distances equal to `separation`
// (regular simplex, needs dim >= K-1). Deterministic.
Eigen::MatrixXd simplex_centers(Eigen::Index k, Eigen::Index dim, double separation) {
    Eigen::MatrixXd e = Eigen::MatrixXd::Identity(k, k) * (separation / std::numbers::sqrt2);
    Eigen::RowVectorXd centroid = e.colwise().mean();
    e.rowwise() -= centroid;  // now rank k-1, pairwise distances = separation
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(e, Eigen::ComputeThinU);
    Eigen::MatrixXd coords = svd.matrixU() * svd.singularValues().asDiagonal();
    Eigen::MatrixXd centers = Eigen::MatrixXd::Zero(k, dim);
    centers.leftCols(std::min(dim, coords.cols())) = coords.leftCols(std::min(dim, coords.cols()));
    return centers;
}

}  // namespace

SyntheticData make_latent_views(const SyntheticSpec& spec) {
    if (spec.n_samples < 1) throw BadSpec("make_latent_views: n_samples must be >= 1");
    if (spec.latent_dim < 1) throw BadSpec("make_latent_views: latent_dim must be >= 1");
    if (spec.view_dims.empty()) throw BadSpec("make_latent_views: need at least one view");
    if (spec.noise_sigma < 0) throw BadSpec("make_latent_views: noise_sigma must be >= 0");
    for (Eigen::Index d : spec.view_dims)
        if (d < spec.latent_dim)
            throw BadSpec("make_latent_views: latent_dim exceeds view width " + std::to_string(d));
    if (spec.n_clusters > 0) {
        if (spec.separation <= 0) throw BadSpec("make_latent_views: separation must be > 0");
        if (spec.latent_dim < spec.n_clusters - 1)
            throw BadSpec("make_latent_views: latent_dim must be >= n_clusters - 1 to place centers");
    }

    const Eigen::Index n = spec.n_samples;
    Rng latent_rng = Rng::keyed(spec.seed, 0);

    Eigen::MatrixXd z = latent_rng.gaussian(n, spec.latent_dim);
    std::optional<Eigen::VectorXi> labels;
    if (spec.n_clusters > 0) {
        Eigen::MatrixXd centers = simplex_centers(spec.n_clusters, spec.latent_dim, spec.separation);
        Eigen::VectorXi lab(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            lab(i) = static_cast<int>(latent_rng.below(static_cast<std::uint64_t>(spec.n_clusters)));
            z.row(i) += centers.row(lab(i));
        }
        labels = std::move(lab);
    }

    std::vector<ViewMatrix> views;
    views.reserve(spec.view_dims.size());
    for (std::size_t v = 0; v < spec.view_dims.size(); ++v) {
        const Eigen::Index d = spec.view_dims[v];
        Rng view_rng = Rng::keyed(spec.seed, 1 + v);
        // orthonormal columns via thin QR of a seeded Gaussian matrix
        Eigen::MatrixXd g = view_rng.gaussian(d, spec.latent_dim);
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
        Eigen::MatrixXd a = qr.householderQ() * Eigen::MatrixXd::Identity(d, spec.latent_dim);
        Eigen::MatrixXd x = z * a.transpose();
        if (spec.noise_sigma > 0) x += view_rng.gaussian(n, d) * spec.noise_sigma;
        views.emplace_back(std::move(x));
    }

    std::optional<Eigen::VectorXd> y;
    if (labels) y = labels->cast<double>();
    return SyntheticData{MultiviewDataset(std::move(views), std::move(y)), std::move(z),
                         std::move(labels)};
}

// ---------------------------------------------------------------------------
// CSV + manifest I/O
// ---------------------------------------------------------------------------

namespace {

constexpr const char* kManifestName = "manifest.json";

void write_csv(const fs::path& file, const Eigen::MatrixXd& m,
               const std::vector<std::string>& names) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw IoError("cannot open " + file.string() + " for writing");
    if (!names.empty()) {
        for (std::size_t j = 0; j < names.size(); ++j) {
            if (j) out << ',';
            out << names[j];
        }
        out << '\n';
    }
    char buf[64];
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
            out << buf;
        }
        out << '\n';
    }
    if (!out) throw IoError("write failed for " + file.string());
}

struct CsvContent {
    Eigen::MatrixXd data;
    std::vector<std::string> names;
};

CsvContent read_csv(const fs::path& file, bool header) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IoError("cannot open " + file.string());
    std::vector<std::vector<double>> rows;
    std::vector<std::string> names;
    std::string line;
    std::size_t lineno = 0;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (header && lineno == 1) {
            std::stringstream ss(line);
            std::string field;
            while (std::getline(ss, field, ',')) names.push_back(field);
            continue;
        }
        std::vector<double> row;
        const char* p = line.data();
        const char* end = p + line.size();
        std::size_t col = 1;
        while (true) {
            const char* field_end = p;
            while (field_end != end && *field_end != ',') ++field_end;
            double value = 0.0;
            auto [ptr, ec] = std::from_chars(p, field_end, value);
            if (ec != std::errc() || ptr != field_end)
                throw ParseError(file.string() + ":" + std::to_string(lineno) + ": column " +
                                 std::to_string(col) + ": cannot parse '" +
                                 std::string(p, field_end) + "' as a number");
            row.push_back(value);
            if (field_end == end) break;
            p = field_end + 1;
            ++col;
        }
        if (width == 0) width = row.size();
        if (row.size() != width)
            throw ParseError(file.string() + ":" + std::to_string(lineno) + ": expected " +
                             std::to_string(width) + " columns, found " +
                             std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError(file.string() + ": no data rows");
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < width; ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    if (!names.empty() && names.size() != width)
        throw ParseError(file.string() + ": header has " + std::to_string(names.size()) +
                         " names for " + std::to_string(width) + " columns");
    return CsvContent{std::move(m), std::move(names)};
}

DatasetManifest read_manifest(const fs::path& dir) {
    DatasetManifest mf;
    const fs::path file = dir / kManifestName;
    if (fs::exists(file)) {
        std::ifstream in(file);
        if (!in) throw IoError("cannot open " + file.string());
        json j;
        try {
            j = json::parse(in);
        } catch (const json::parse_error& e) {
            throw ParseError(file.string() + ": " + e.what());
        }
        for (const auto& v : j.at("views")) mf.view_files.push_back(v.get<std::string>());
        if (j.contains("labels") && !j["labels"].is_null())
            mf.labels_file = j["labels"].get<std::string>();
        mf.n_samples = j.value("n_samples", 0);
        mf.header = j.value("header", false);
        if (mf.view_files.empty()) throw ParseError(file.string() + ": manifest lists no views");
        return mf;
    }
    // convention: view_*.csv in lexicographic order, optional labels.csv
    std::vector<std::string> found;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("view_", 0) == 0 && name.size() > 4 &&
            name.compare(name.size() - 4, 4, ".csv") == 0)
            found.push_back(name);
    }
    std::sort(found.begin(), found.end());
    if (found.empty())
        throw IoError(dir.string() + ": no manifest.json and no view_*.csv files");
    mf.view_files = std::move(found);
    if (fs::exists(dir / "labels.csv")) mf.labels_file = "labels.csv";
    return mf;
}

}  // namespace

MultiviewDataset load_multiview_dir(const fs::path& dir) {
    if (!fs::exists(dir) || !fs::is_directory(dir))
        throw IoError(dir.string() + " is not a directory");
    const DatasetManifest mf = read_manifest(dir);

    std::vector<ViewMatrix> views;
    views.reserve(mf.view_files.size());
    Eigen::Index rows = -1;
    std::string first_file;
    for (const auto& name : mf.view_files) {
        const fs::path file = dir / name;
        if (!fs::exists(file)) throw IoError("view file missing: " + file.string());
        CsvContent c = read_csv(file, mf.header);
        if (rows < 0) {
            rows = c.data.rows();
            first_file = name;
        } else if (c.data.rows() != rows) {
            throw ShapeMismatch(name + " has " + std::to_string(c.data.rows()) + " rows but " +
                                first_file + " has " + std::to_string(rows));
        }
        views.emplace_back(std::move(c.data), std::move(c.names));
    }

    std::optional<Eigen::VectorXd> labels;
    if (mf.labels_file) {
        const fs::path file = dir / *mf.labels_file;
        if (!fs::exists(file)) throw IoError("labels file missing: " + file.string());
        CsvContent c = read_csv(file, false);
        if (c.data.cols() != 1)
            throw ParseError(file.string() + ": expected a single column of labels");
        if (c.data.rows() != rows)
            throw ShapeMismatch(*mf.labels_file + " has " + std::to_string(c.data.rows()) +
                                " rows but " + first_file + " has " + std::to_string(rows));
        labels = c.data.col(0);
    }
    return MultiviewDataset(std::move(views), std::move(labels));
}

DatasetManifest save_multiview_dir(const MultiviewDataset& ds, const fs::path& dir, bool force) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

    DatasetManifest mf;
    mf.n_samples = ds.n_samples();
    bool any_names = false;
    for (std::size_t v = 0; v < ds.n_views(); ++v)
        any_names = any_names || !ds.view_matrix(v).feature_names.empty();
    mf.header = any_names;
    for (std::size_t v = 0; v < ds.n_views(); ++v)
        mf.view_files.push_back("view_" + std::to_string(v) + ".csv");
    if (ds.has_labels()) mf.labels_file = "labels.csv";

    if (!force) {
        std::vector<std::string> targets = mf.view_files;
        targets.push_back(kManifestName);
        if (mf.labels_file) targets.push_back(*mf.labels_file);
        for (const auto& t : targets)
            if (fs::exists(dir / t))
                throw IoError(dir.string() + "/" + t + " exists; pass force to overwrite");
    }

    for (std::size_t v = 0; v < ds.n_views(); ++v) {
        std::vector<std::string> names = ds.view_matrix(v).feature_names;
        if (mf.header && names.empty()) {
            // every view needs a header row when any view is named
            for (Eigen::Index j = 0; j < ds.view(v).cols(); ++j)
                names.push_back("f" + std::to_string(j));
        }
        write_csv(dir / mf.view_files[v], ds.view(v), names);
    }
    if (ds.has_labels()) write_csv(dir / *mf.labels_file, *ds.labels(), {});

    json j;
    j["views"] = mf.view_files;
    j["labels"] = mf.labels_file ? json(*mf.labels_file) : json(nullptr);
    j["n_samples"] = mf.n_samples;
    j["header"] = mf.header;
    std::ofstream out(dir / kManifestName, std::ios::binary);
    if (!out) throw IoError("cannot open " + (dir / kManifestName).string() + " for writing");
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed for " + (dir / kManifestName).string());
    return mf;
}

}  // namespace mvkit
