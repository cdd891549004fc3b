// mvkit command line: compose -> embed / cluster / semisup / decompose
// pipelines over on-disk datasets.
//
// Grammar:
//   mvkit <synth|compose|embed|cluster|semisup|decompose>
//         --in DIR --out DIR --algo NAME [--seed N] [--plot] [--force]
//         [key=value ...]
//
// Exit codes: 0 success, 2 usage error, 3 data validation error,
// 4 numerical failure or non-convergence.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mvkit/mvkit.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitNumerical = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string command;
    fs::path in;
    fs::path out;
    std::string algo;
    std::uint64_t seed = 0;
    bool plot = false;
    bool force = false;
    std::map<std::string, std::string> params;
};

// ---------------------------------------------------------------------------
// key=value parameters (also accepted as --key value / --key=value)
// ---------------------------------------------------------------------------

std::map<std::string, std::string> parse_extras(const std::vector<std::string>& args) {
    std::map<std::string, std::string> out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::string tok = args[i];
        if (tok.rfind("--", 0) == 0) tok = tok.substr(2);
        const auto eq = tok.find('=');
        if (eq != std::string::npos) {
            out[tok.substr(0, eq)] = tok.substr(eq + 1);
            continue;
        }
        if (i + 1 >= args.size())
            throw UsageError("parameter '" + tok + "' is missing a value");
        out[tok] = args[++i];
    }
    return out;
}

class Params {
public:
    Params(std::map<std::string, std::string> values, std::set<std::string> allowed,
           const std::string& context)
        : values_(std::move(values)) {
        for (const auto& [key, value] : values_) {
            if (!allowed.count(key)) {
                std::string known;
                for (const auto& k : allowed) known += (known.empty() ? "" : ", ") + k;
                throw UsageError("unknown parameter '" + key + "' for " + context +
                                 " (known: " + (known.empty() ? "none" : known) + ")");
            }
        }
    }

    double number(const std::string& key, double fallback) const {
        const auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        return parse_number(key, it->second);
    }

    Eigen::Index count(const std::string& key, Eigen::Index fallback) const {
        return static_cast<Eigen::Index>(number(key, static_cast<double>(fallback)));
    }

    Eigen::Index required_count(const std::string& key) const {
        const auto it = values_.find(key);
        if (it == values_.end()) throw UsageError("missing required parameter '" + key + "'");
        return static_cast<Eigen::Index>(parse_number(key, it->second));
    }

    std::string text(const std::string& key, const std::string& fallback) const {
        const auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::vector<Eigen::Index> count_list(const std::string& key) const {
        const auto it = values_.find(key);
        if (it == values_.end()) throw UsageError("missing required parameter '" + key + "'");
        std::vector<Eigen::Index> out;
        std::stringstream ss(it->second);
        std::string field;
        while (std::getline(ss, field, ','))
            out.push_back(static_cast<Eigen::Index>(parse_number(key, field)));
        if (out.empty()) throw UsageError("parameter '" + key + "' is an empty list");
        return out;
    }

    const std::map<std::string, std::string>& raw() const { return values_; }

private:
    static double parse_number(const std::string& key, const std::string& value) {
        try {
            std::size_t used = 0;
            const double parsed = std::stod(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
            return parsed;
        } catch (const std::exception&) {
            throw UsageError("parameter '" + key + "' has a non-numeric value '" + value + "'");
        }
    }

    std::map<std::string, std::string> values_;
};

// ---------------------------------------------------------------------------
// output helpers
// ---------------------------------------------------------------------------

void write_matrix_csv(const fs::path& file, const Eigen::MatrixXd& m) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw mvkit::IoError("cannot open " + file.string() + " for writing");
    char buf[64];
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
            out << buf;
        }
        out << '\n';
    }
    if (!out) throw mvkit::IoError("write failed for " + file.string());
}

void write_json(const fs::path& file, const json& j) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw mvkit::IoError("cannot open " + file.string() + " for writing");
    out << j.dump(2) << '\n';
    if (!out) throw mvkit::IoError("write failed for " + file.string());
}

void write_run_manifest(const Options& opt) {
    json j;
    j["command"] = opt.command;
    j["algorithm"] = opt.algo.empty() ? json(nullptr) : json(opt.algo);
    j["input"] = opt.in.empty() ? json(nullptr) : json(opt.in.string());
    j["output"] = opt.out.string();
    j["seed"] = opt.seed;
    j["plot"] = opt.plot;
    j["parameters"] = opt.params;  // std::map: keys sorted, bytes reproducible
    j["version"] = mvkit::kVersion;
    write_json(opt.out / "run_manifest.json", j);
}

std::optional<Eigen::VectorXi> integer_labels(const mvkit::MultiviewDataset& ds) {
    if (!ds.has_labels()) return std::nullopt;
    const Eigen::VectorXd& y = *ds.labels();
    Eigen::VectorXi out(y.size());
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (mvkit::is_unlabeled(y(i))) return std::nullopt;  // partial labels: no ARI
        out(i) = static_cast<int>(std::lround(y(i)));
    }
    return out;
}

void plot_embedding(const Options& opt, const Eigen::MatrixXd& embedding,
                    const std::optional<Eigen::VectorXi>& labels) {
    if (!opt.plot) return;
    mvkit::emit_scatter_svg(embedding, labels, opt.out / "scatter.svg");
}

// PCA to a handful of dimensions, used only to render cluster/semisup plots
Eigen::MatrixXd pca_plot_coords(const Eigen::MatrixXd& x) {
    const Eigen::MatrixXd centered =
        x.rowwise() - Eigen::RowVectorXd(x.colwise().mean());
    Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinU);
    const Eigen::Index dims = std::min<Eigen::Index>(4, svd.matrixU().cols());
    return svd.matrixU().leftCols(dims) *
           svd.singularValues().head(dims).asDiagonal();
}

mvkit::MultiviewDataset load_input(const Options& opt) {
    if (opt.in.empty()) throw UsageError("--in DIR is required for " + opt.command);
    return mvkit::load_multiview_dir(opt.in);
}

void require_algo(const Options& opt, const std::vector<std::string>& registered) {
    for (const auto& name : registered)
        if (opt.algo == name) return;
    std::string known;
    for (const auto& name : registered) known += (known.empty() ? "" : ", ") + name;
    throw UsageError(opt.algo.empty()
                         ? "--algo NAME is required for " + opt.command + " (one of: " + known + ")"
                         : "unknown algorithm '" + opt.algo + "' for " + opt.command +
                               " (registered: " + known + ")");
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

int run_synth(const Options& opt) {
    Params p(opt.params, {"samples", "latent", "dims", "noise", "clusters", "sep"}, "synth");
    mvkit::SyntheticSpec spec;
    spec.n_samples = p.count("samples", 150);
    spec.latent_dim = p.count("latent", 2);
    spec.noise_sigma = p.number("noise", 0.5);
    spec.n_clusters = p.count("clusters", 0);
    spec.separation = p.number("sep", 1.0);
    spec.seed = opt.seed;
    spec.view_dims.clear();
    {
        std::stringstream ss(p.text("dims", "20,20"));
        std::string field;
        while (std::getline(ss, field, ','))
            spec.view_dims.push_back(static_cast<Eigen::Index>(std::stol(field)));
    }

    auto data = mvkit::make_latent_views(spec);
    mvkit::save_multiview_dir(data.data, opt.out, opt.force);
    write_run_manifest(opt);
    if (opt.plot && data.latent.cols() >= 2)
        mvkit::emit_scatter_svg(data.latent, data.labels, opt.out / "scatter.svg");
    std::cout << "synth: wrote " << spec.view_dims.size() << " views, n=" << spec.n_samples
              << (data.labels ? ", labeled" : "") << " -> " << opt.out.string() << "\n";
    return kExitOk;
}

int run_compose(const Options& opt) {
    require_algo(opt, {"random-subspace", "gaussian-projection", "concat", "split"});
    auto ds = load_input(opt);
    json summary;

    if (opt.algo == "random-subspace" || opt.algo == "gaussian-projection") {
        if (ds.n_views() != 1)
            throw mvkit::ViewCountError(opt.algo + " expects a single-view input dataset, got " +
                                        std::to_string(ds.n_views()) + " views");
    }

    if (opt.algo == "random-subspace") {
        Params p(opt.params, {"views", "subset"}, opt.algo);
        mvkit::SubspaceSpec spec{static_cast<std::size_t>(p.count("views", 2)),
                                 p.required_count("subset"), opt.seed};
        auto result = mvkit::random_subspace(ds.view_matrix(0), spec);
        mvkit::MultiviewDataset derived =
            ds.has_labels() ? result.data.with_labels(*ds.labels()) : result.data;
        mvkit::save_multiview_dir(derived, opt.out, opt.force);
        json indices = json::array();
        for (const auto& cols : result.column_indices) indices.push_back(cols);
        write_json(opt.out / "subspace_indices.json", indices);
        summary["n_views"] = spec.n_views;
        summary["subset_size"] = spec.subset_size;
    } else if (opt.algo == "gaussian-projection") {
        Params p(opt.params, {"views", "components"}, opt.algo);
        mvkit::ProjectionSpec spec{static_cast<std::size_t>(p.count("views", 2)),
                                   p.required_count("components"), opt.seed};
        auto result = mvkit::random_gaussian_projection(ds.view_matrix(0), spec);
        if (ds.has_labels()) result = result.with_labels(*ds.labels());
        mvkit::save_multiview_dir(result, opt.out, opt.force);
        summary["n_views"] = spec.n_views;
        summary["n_components"] = spec.n_components;
    } else if (opt.algo == "concat") {
        Params p(opt.params, {}, opt.algo);
        auto joined = mvkit::concat_views(ds);
        mvkit::MultiviewDataset out({joined}, ds.labels());
        mvkit::save_multiview_dir(out, opt.out, opt.force);
        summary["n_views"] = 1;
        summary["width"] = joined.data.cols();
    } else {  // split
        Params p(opt.params, {"boundaries"}, opt.algo);
        if (ds.n_views() != 1)
            throw mvkit::ViewCountError("split expects a single-view input dataset");
        auto parts = mvkit::split_features(ds.view_matrix(0), p.count_list("boundaries"));
        if (ds.has_labels()) parts = parts.with_labels(*ds.labels());
        mvkit::save_multiview_dir(parts, opt.out, opt.force);
        summary["n_views"] = parts.n_views();
    }

    write_json(opt.out / "summary.json", summary);
    write_run_manifest(opt);
    std::cout << "compose/" << opt.algo << " -> " << opt.out.string() << "\n";
    return kExitOk;
}

int run_embed(const Options& opt) {
    require_algo(opt, {"cca", "mcca", "kmcca", "gcca", "mvmds", "omnibus"});
    auto ds = load_input(opt);
    fs::create_directories(opt.out);
    json summary;
    Eigen::MatrixXd plot_source;
    bool converged = true;
    std::string stage = opt.algo;

    if (opt.algo == "cca") {
        Params p(opt.params, {"components", "reg"}, opt.algo);
        auto model = mvkit::cca_fit(ds, p.count("components", 2), p.number("reg", 0.0));
        auto scores = mvkit::cca_transform(model, ds);
        for (std::size_t v = 0; v < scores.size(); ++v)
            write_matrix_csv(opt.out / ("embedding_" + std::to_string(v) + ".csv"), scores[v]);
        for (Eigen::Index j = 0; j < model.correlations.size(); ++j)
            summary["rho_" + std::to_string(j + 1)] = model.correlations(j);
        plot_source = scores[0];
    } else if (opt.algo == "mcca") {
        Params p(opt.params, {"components", "reg", "tol", "iters"}, opt.algo);
        auto model = mvkit::mcca_fit(ds, p.count("components", 2), {p.number("reg", 0.0)},
                                     p.number("tol", 1e-6), static_cast<int>(p.count("iters", 500)));
        converged = model.converged;
        auto scores = mvkit::cca_transform(model, ds);
        for (std::size_t v = 0; v < scores.size(); ++v)
            write_matrix_csv(opt.out / ("embedding_" + std::to_string(v) + ".csv"), scores[v]);
        for (Eigen::Index j = 0; j < model.correlations.size(); ++j)
            summary["rho_" + std::to_string(j + 1)] = model.correlations(j);
        summary["converged"] = model.converged ? 1 : 0;
        plot_source = scores[0];
    } else if (opt.algo == "kmcca") {
        Params p(opt.params, {"components", "kernel", "gamma", "degree", "coef0", "reg"},
                 opt.algo);
        mvkit::KernelSpec kernel;
        const std::string kind = p.text("kernel", "linear");
        if (kind == "linear")
            kernel.kind = mvkit::KernelSpec::Kind::linear;
        else if (kind == "polynomial")
            kernel.kind = mvkit::KernelSpec::Kind::polynomial;
        else if (kind == "rbf")
            kernel.kind = mvkit::KernelSpec::Kind::rbf;
        else
            throw UsageError("unknown kernel '" + kind + "' (linear, polynomial, rbf)");
        kernel.gamma = p.number("gamma", 1.0);
        kernel.degree = static_cast<int>(p.count("degree", 3));
        kernel.coef0 = p.number("coef0", 1.0);
        kernel.regularization = p.number("reg", 0.1);
        auto model = mvkit::kmcca_fit(ds, p.count("components", 2), kernel);
        auto scores = mvkit::kmcca_transform(model, ds);
        for (std::size_t v = 0; v < scores.size(); ++v)
            write_matrix_csv(opt.out / ("embedding_" + std::to_string(v) + ".csv"), scores[v]);
        for (Eigen::Index j = 0; j < model.correlations.size(); ++j)
            summary["rho_" + std::to_string(j + 1)] = model.correlations(j);
        plot_source = scores[0];
    } else if (opt.algo == "gcca") {
        Params p(opt.params, {"components", "fraction", "ranks"}, opt.algo);
        std::vector<Eigen::Index> ranks;
        if (p.has("ranks")) ranks = p.count_list("ranks");
        auto model = mvkit::gcca_fit(ds, p.count("components", 2), p.number("fraction", 0.999),
                                     ranks);
        write_matrix_csv(opt.out / "embedding.csv", model.joint);
        auto per_view = mvkit::gcca_transform(model, ds);
        for (std::size_t v = 0; v < per_view.size(); ++v)
            write_matrix_csv(opt.out / ("embedding_" + std::to_string(v) + ".csv"), per_view[v]);
        for (std::size_t v = 0; v < model.view_ranks.size(); ++v)
            summary["rank_" + std::to_string(v)] = model.view_ranks[v];
        plot_source = model.joint;
    } else if (opt.algo == "mvmds") {
        Params p(opt.params, {"components"}, opt.algo);
        const Eigen::MatrixXd common = mvkit::mvmds_fit_transform(ds, p.count("components", 2));
        write_matrix_csv(opt.out / "embedding.csv", common);
        summary["n_components"] = common.cols();
        plot_source = common;
    } else {  // omnibus
        Params p(opt.params, {"components"}, opt.algo);
        auto result = mvkit::omnibus_fit_transform(ds, p.count("components", 2));
        for (std::size_t v = 0; v < result.embeddings.size(); ++v)
            write_matrix_csv(opt.out / ("embedding_" + std::to_string(v) + ".csv"),
                             result.embeddings[v]);
        for (Eigen::Index j = 0; j < result.eigenvalues.size(); ++j)
            summary["eigenvalue_" + std::to_string(j + 1)] = result.eigenvalues(j);
        plot_source = result.embeddings[0];
    }

    write_json(opt.out / "summary.json", summary);
    write_run_manifest(opt);
    if (plot_source.cols() >= 2) plot_embedding(opt, plot_source, integer_labels(ds));
    std::cout << "embed/" << opt.algo << " -> " << opt.out.string() << "\n";
    if (!converged) {
        std::cerr << "mvkit: " << stage << " did not converge within the iteration budget\n";
        return kExitNumerical;
    }
    return kExitOk;
}

int run_cluster(const Options& opt) {
    require_algo(opt, {"mv-kmeans", "mv-spherical-kmeans", "mv-spectral", "coreg-spectral"});
    auto ds = load_input(opt);
    fs::create_directories(opt.out);

    Params p(opt.params,
             {"clusters", "iters", "restarts", "tol", "affinity", "gamma", "neighbors",
              "info_iter", "lambda"},
             opt.algo);
    mvkit::ClusterParams params;
    params.n_clusters = p.required_count("clusters");
    params.max_iter = static_cast<int>(p.count("iters", 100));
    params.n_init = static_cast<int>(p.count("restarts", 5));
    params.tol = p.number("tol", 1e-6);
    params.seed = opt.seed;

    mvkit::AffinityParams affinity;
    const std::string kind = p.text("affinity", "rbf");
    if (kind == "rbf")
        affinity.kind = mvkit::AffinityParams::Kind::rbf;
    else if (kind == "knn")
        affinity.kind = mvkit::AffinityParams::Kind::knn;
    else
        throw UsageError("unknown affinity '" + kind + "' (rbf, knn)");
    if (p.has("gamma")) affinity.gamma = p.number("gamma", 1.0);
    affinity.n_neighbors = p.count("neighbors", 10);
    affinity.info_iter = static_cast<int>(p.count("info_iter", 10));
    affinity.coupling = p.number("lambda", 1.0);

    mvkit::ClusterResult result;
    if (opt.algo == "mv-kmeans")
        result = mvkit::mv_kmeans_fit_predict(ds, params);
    else if (opt.algo == "mv-spherical-kmeans")
        result = mvkit::mv_spherical_kmeans_fit_predict(ds, params);
    else if (opt.algo == "mv-spectral")
        result = mvkit::mv_spectral_fit_predict(ds, params, affinity);
    else
        result = mvkit::coreg_spectral_fit_predict(ds, params, affinity);

    write_matrix_csv(opt.out / "labels.csv", result.labels.cast<double>());
    json metrics;
    metrics["n_iter"] = result.n_iter;
    metrics["objective"] = result.objective;
    metrics["converged"] = result.converged ? 1 : 0;
    if (auto truth = integer_labels(ds))
        metrics["ari"] = mvkit::adjusted_rand_index(result.labels, *truth);
    write_json(opt.out / "metrics.json", metrics);
    write_run_manifest(opt);
    if (opt.plot)
        mvkit::emit_scatter_svg(pca_plot_coords(mvkit::concat_views(ds).data), result.labels,
                                opt.out / "scatter.svg");
    std::cout << "cluster/" << opt.algo << ": n_iter=" << result.n_iter
              << " objective=" << result.objective << " -> " << opt.out.string() << "\n";
    return kExitOk;
}

int run_semisup(const Options& opt) {
    require_algo(opt, {"cotrain-classifier", "cotrain-regressor"});
    auto ds = load_input(opt);
    if (!ds.has_labels())
        throw mvkit::NoLabeled("semisup needs a labels.csv with the training labels (NaN marks "
                               "unlabeled samples)");
    fs::create_directories(opt.out);
    const Eigen::VectorXd& y = *ds.labels();

    Eigen::VectorXd predictions;
    json metrics;
    if (opt.algo == "cotrain-classifier") {
        Params p(opt.params, {"p", "n", "pool", "rounds"}, opt.algo);
        mvkit::CoTrainParams params;
        params.p = p.count("p", 1);
        params.n = p.count("n", 3);
        params.pool_size = p.count("pool", 75);
        params.max_rounds = static_cast<int>(p.count("rounds", 30));
        params.seed = opt.seed;
        auto model = mvkit::cotrain_classifier_fit(ds, y, params);
        predictions = mvkit::cotrain_classifier_predict(model, ds);
        write_matrix_csv(opt.out / "probabilities.csv",
                         mvkit::cotrain_classifier_predict_proba(model, ds));
        metrics["rounds"] = model.trace.size();
        metrics["n_labeled_final"] = model.labeled_indices.size();
        Eigen::Index hits = 0, seen = 0;
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            if (mvkit::is_unlabeled(y(i))) continue;
            ++seen;
            if (predictions(i) == y(i)) ++hits;
        }
        if (seen > 0) metrics["accuracy"] = static_cast<double>(hits) / seen;
    } else {
        Params p(opt.params, {"k1", "k2", "order1", "order2", "rounds", "pool"}, opt.algo);
        mvkit::CoregParams params;
        params.k1 = p.count("k1", 3);
        params.k2 = p.count("k2", 3);
        params.order1 = p.number("order1", 2.0);
        params.order2 = p.number("order2", 5.0);
        params.max_rounds = static_cast<int>(p.count("rounds", 100));
        params.pool_size = p.count("pool", 100);
        params.seed = opt.seed;
        auto model = mvkit::cotrain_regressor_fit(ds, y, params);
        predictions = mvkit::cotrain_regressor_predict(model, ds);
        metrics["rounds"] = model.trace.size();
        double err = 0.0;
        Eigen::Index seen = 0;
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            if (mvkit::is_unlabeled(y(i))) continue;
            err += (predictions(i) - y(i)) * (predictions(i) - y(i));
            ++seen;
        }
        if (seen > 0) metrics["rmse"] = std::sqrt(err / seen);
    }

    write_matrix_csv(opt.out / "predictions.csv", predictions);
    write_json(opt.out / "metrics.json", metrics);
    write_run_manifest(opt);
    if (opt.plot) {
        Eigen::VectorXi colors(predictions.size());
        for (Eigen::Index i = 0; i < predictions.size(); ++i)
            colors(i) = static_cast<int>(std::lround(predictions(i)));
        mvkit::emit_scatter_svg(pca_plot_coords(mvkit::concat_views(ds).data), colors,
                                opt.out / "scatter.svg");
    }
    std::cout << "semisup/" << opt.algo << " -> " << opt.out.string() << "\n";
    return kExitOk;
}

int run_decompose(const Options& opt) {
    require_algo(opt, {"ajive", "group-pca", "group-ica"});
    auto ds = load_input(opt);
    fs::create_directories(opt.out);
    json summary;
    bool converged = true;

    if (opt.algo == "ajive") {
        Params p(opt.params, {"ranks", "resamples", "quantile"}, opt.algo);
        mvkit::AjiveParams params;
        params.initial_ranks = p.count_list("ranks");
        params.n_resamples = static_cast<int>(p.count("resamples", 500));
        params.quantile = p.number("quantile", 0.95);
        params.seed = opt.seed;
        auto result = mvkit::ajive_fit(ds, params);
        write_matrix_csv(opt.out / "common_scores.csv", result.common_scores);
        for (std::size_t v = 0; v < ds.n_views(); ++v) {
            write_matrix_csv(opt.out / ("joint_" + std::to_string(v) + ".csv"), result.joint[v]);
            write_matrix_csv(opt.out / ("individual_" + std::to_string(v) + ".csv"),
                             result.individual[v]);
            write_matrix_csv(opt.out / ("noise_" + std::to_string(v) + ".csv"), result.noise[v]);
            summary["individual_rank_" + std::to_string(v)] = result.individual_ranks[v];
        }
        summary["joint_rank"] = result.joint_rank;
        summary["wedin_threshold"] = result.wedin_threshold;
        summary["random_threshold"] = result.random_threshold;
        if (opt.plot && result.joint_rank >= 2)
            plot_embedding(opt, result.common_scores, integer_labels(ds));
    } else if (opt.algo == "group-pca") {
        Params p(opt.params, {"ranks", "components"}, opt.algo);
        auto result =
            mvkit::group_pca_fit_transform(ds, p.count_list("ranks"), p.required_count("components"));
        write_matrix_csv(opt.out / "scores.csv", result.scores);
        for (std::size_t v = 0; v < ds.n_views(); ++v)
            write_matrix_csv(opt.out / ("loadings_" + std::to_string(v) + ".csv"),
                             result.loadings[v]);
        for (Eigen::Index j = 0; j < result.explained_variance.size(); ++j)
            summary["explained_variance_" + std::to_string(j + 1)] = result.explained_variance(j);
        if (opt.plot && result.scores.cols() >= 2)
            plot_embedding(opt, result.scores, integer_labels(ds));
    } else {  // group-ica
        Params p(opt.params, {"ranks", "components", "tol", "iters"}, opt.algo);
        mvkit::IcaParams params;
        params.individual_ranks = p.count_list("ranks");
        params.n_components = p.required_count("components");
        params.tol = p.number("tol", 1e-4);
        params.max_iter = static_cast<int>(p.count("iters", 200));
        params.seed = opt.seed;
        auto result = mvkit::group_ica_fit(ds, params);
        converged = result.converged;
        write_matrix_csv(opt.out / "sources.csv", result.sources);
        for (std::size_t v = 0; v < ds.n_views(); ++v)
            write_matrix_csv(opt.out / ("mixing_" + std::to_string(v) + ".csv"),
                             result.mixing[v]);
        summary["converged"] = result.converged ? 1 : 0;
        summary["n_iter"] = result.n_iter;
        if (opt.plot && result.sources.cols() >= 2)
            plot_embedding(opt, result.sources, integer_labels(ds));
    }

    write_json(opt.out / "summary.json", summary);
    write_run_manifest(opt);
    std::cout << "decompose/" << opt.algo << " -> " << opt.out.string() << "\n";
    if (!converged) {
        std::cerr << "mvkit: " << opt.algo << " did not converge within the iteration budget\n";
        return kExitNumerical;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mvkit: multiview learning pipelines over on-disk datasets"};
    app.require_subcommand(1);

    Options opt;
    std::vector<CLI::App*> subs;
    for (const char* name : {"synth", "compose", "embed", "cluster", "semisup", "decompose"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->allow_extras();
        if (std::string(name) != "synth") {
            sub->add_option("--in", opt.in, "input dataset directory");
            sub->add_option("--algo", opt.algo, "algorithm name");
        }
        sub->add_option("--out", opt.out, "output directory")->required();
        sub->add_option("--seed", opt.seed, "random seed (default 0)");
        sub->add_flag("--plot", opt.plot, "write a scatter.svg of the main embedding");
        sub->add_flag("--force", opt.force, "overwrite existing dataset files");
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "mvkit: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        CLI::App* active = app.get_subcommands().at(0);
        opt.command = active->get_name();
        opt.params = parse_extras(active->remaining());

        if (opt.command == "synth") return run_synth(opt);
        if (opt.command == "compose") return run_compose(opt);
        if (opt.command == "embed") return run_embed(opt);
        if (opt.command == "cluster") return run_cluster(opt);
        if (opt.command == "semisup") return run_semisup(opt);
        return run_decompose(opt);
    } catch (const UsageError& e) {
        std::cerr << "mvkit: " << e.what() << "\n";
        return kExitUsage;
    } catch (const mvkit::NumericalFailure& e) {
        std::cerr << "mvkit: numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const mvkit::Error& e) {
        std::cerr << "mvkit: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "mvkit: unexpected error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
