// python bindings: the main mvkit operations on lists of numpy arrays

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "mvkit/mvkit.hpp"

namespace py = pybind11;
using namespace mvkit;

namespace {

MultiviewDataset as_dataset(const std::vector<Eigen::MatrixXd>& views,
                            const std::optional<Eigen::VectorXd>& labels = std::nullopt) {
    std::vector<ViewMatrix> wrapped(views.begin(), views.end());
    return MultiviewDataset(std::move(wrapped), labels);
}

KernelSpec make_kernel(const std::string& kind, double gamma, int degree, double coef0,
                       double regularization) {
    KernelSpec spec;
    if (kind == "linear")
        spec.kind = KernelSpec::Kind::linear;
    else if (kind == "polynomial")
        spec.kind = KernelSpec::Kind::polynomial;
    else if (kind == "rbf")
        spec.kind = KernelSpec::Kind::rbf;
    else
        throw KernelError("unknown kernel '" + kind + "' (linear, polynomial, rbf)");
    spec.gamma = gamma;
    spec.degree = degree;
    spec.coef0 = coef0;
    spec.regularization = regularization;
    return spec;
}

py::dict cluster_dict(const ClusterResult& result) {
    py::dict out;
    out["labels"] = result.labels;
    out["n_iter"] = result.n_iter;
    out["objective"] = result.objective;
    out["converged"] = result.converged;
    if (!result.objective_trace.empty()) out["objective_trace"] = result.objective_trace;
    return out;
}

}  // namespace

PYBIND11_MODULE(_mvkit, m) {
    m.doc() = "multiview learning: embeddings, clustering, co-training, decomposition";
    m.attr("__version__") = kVersion;

    py::register_exception<Error>(m, "MvkitError", PyExc_RuntimeError);

    m.def("unlabeled", &unlabeled, "Sentinel marking an unlabeled sample in a label vector.");

    m.def(
        "validate_views",
        [](const std::vector<Eigen::MatrixXd>& views) {
            const auto ds = as_dataset(views);
            return py::make_tuple(ds.n_views(), ds.n_samples());
        },
        py::arg("views"), "Validate matched-sample views; returns (n_views, n_samples).");

    m.def(
        "adjusted_rand_index",
        [](const Eigen::VectorXi& a, const Eigen::VectorXi& b) {
            return adjusted_rand_index(a, b);
        },
        py::arg("a"), py::arg("b"));

    // ------------------------------------------------------------------ data
    m.def(
        "make_latent_views",
        [](Eigen::Index n_samples, Eigen::Index latent_dim, std::vector<Eigen::Index> view_dims,
           double noise_sigma, Eigen::Index n_clusters, double separation, std::uint64_t seed) {
            SyntheticSpec spec{n_samples, latent_dim, std::move(view_dims), noise_sigma,
                               n_clusters, separation, seed};
            auto data = make_latent_views(spec);
            std::vector<Eigen::MatrixXd> views;
            for (std::size_t v = 0; v < data.data.n_views(); ++v)
                views.push_back(data.data.view(v));
            py::object labels = py::none();
            if (data.labels) labels = py::cast(*data.labels);
            return py::make_tuple(views, data.latent, labels);
        },
        py::arg("n_samples"), py::arg("latent_dim"), py::arg("view_dims"),
        py::arg("noise_sigma") = 0.0, py::arg("n_clusters") = 0, py::arg("separation") = 1.0,
        py::arg("seed") = 0,
        "Seeded synthetic multiview data; returns (views, latent, labels_or_None).");

    m.def(
        "save_multiview_dir",
        [](const std::vector<Eigen::MatrixXd>& views, const std::filesystem::path& dir,
           std::optional<Eigen::VectorXd> labels, bool force) {
            save_multiview_dir(as_dataset(views, std::move(labels)), dir, force);
        },
        py::arg("views"), py::arg("dir"), py::arg("labels") = py::none(),
        py::arg("force") = false);

    m.def(
        "load_multiview_dir",
        [](const std::filesystem::path& dir) {
            auto ds = load_multiview_dir(dir);
            std::vector<Eigen::MatrixXd> views;
            for (std::size_t v = 0; v < ds.n_views(); ++v) views.push_back(ds.view(v));
            py::object labels = py::none();
            if (ds.has_labels()) labels = py::cast(*ds.labels());
            return py::make_tuple(views, labels);
        },
        py::arg("dir"));

    // --------------------------------------------------------------- compose
    m.def(
        "random_subspace",
        [](const Eigen::MatrixXd& x, std::size_t n_views, Eigen::Index subset_size,
           std::uint64_t seed) {
            auto result = random_subspace(ViewMatrix(x), {n_views, subset_size, seed});
            std::vector<Eigen::MatrixXd> views;
            for (std::size_t v = 0; v < result.data.n_views(); ++v)
                views.push_back(result.data.view(v));
            return py::make_tuple(views, result.column_indices);
        },
        py::arg("x"), py::arg("n_views"), py::arg("subset_size"), py::arg("seed") = 0);

    m.def(
        "gaussian_projection",
        [](const Eigen::MatrixXd& x, std::size_t n_views, Eigen::Index n_components,
           std::uint64_t seed) {
            auto result = random_gaussian_projection(ViewMatrix(x), {n_views, n_components, seed});
            std::vector<Eigen::MatrixXd> views;
            for (std::size_t v = 0; v < result.n_views(); ++v) views.push_back(result.view(v));
            return views;
        },
        py::arg("x"), py::arg("n_views"), py::arg("n_components"), py::arg("seed") = 0);

    m.def(
        "concat_views",
        [](const std::vector<Eigen::MatrixXd>& views) {
            return concat_views(as_dataset(views)).data;
        },
        py::arg("views"));

    m.def(
        "split_features",
        [](const Eigen::MatrixXd& x, const std::vector<Eigen::Index>& boundaries) {
            auto parts = split_features(ViewMatrix(x), boundaries);
            std::vector<Eigen::MatrixXd> views;
            for (std::size_t v = 0; v < parts.n_views(); ++v) views.push_back(parts.view(v));
            return views;
        },
        py::arg("x"), py::arg("boundaries"));

    // ----------------------------------------------------------------- embed
    m.def(
        "cca",
        [](const std::vector<Eigen::MatrixXd>& views, Eigen::Index n_components,
           double regularization) {
            auto ds = as_dataset(views);
            auto model = cca_fit(ds, n_components, regularization);
            py::dict out;
            out["scores"] = cca_transform(model, ds);
            out["correlations"] = model.correlations;
            out["weights"] = model.weights;
            return out;
        },
        py::arg("views"), py::arg("n_components"), py::arg("regularization") = 0.0);

    m.def(
        "mcca",
        [](const std::vector<Eigen::MatrixXd>& views, Eigen::Index n_components,
           std::vector<double> regularization, double tol, int max_iter) {
            auto ds = as_dataset(views);
            auto model = mcca_fit(ds, n_components, std::move(regularization), tol, max_iter);
            py::dict out;
            out["scores"] = cca_transform(model, ds);
            out["correlations"] = model.correlations;
            out["converged"] = model.converged;
            return out;
        },
        py::arg("views"), py::arg("n_components"),
        py::arg("regularization") = std::vector<double>{}, py::arg("tol") = 1e-6,
        py::arg("max_iter") = 500);

    m.def(
        "kmcca",
        [](const std::vector<Eigen::MatrixXd>& views, Eigen::Index n_components,
           const std::string& kernel, double gamma, int degree, double coef0,
           double regularization) {
            auto ds = as_dataset(views);
            auto model =
                kmcca_fit(ds, n_components, make_kernel(kernel, gamma, degree, coef0, regularization));
            py::dict out;
            out["scores"] = kmcca_transform(model, ds);
            out["correlations"] = model.correlations;
            out["eigenvalues"] = model.eigenvalues;
            return out;
        },
        py::arg("views"), py::arg("n_components"), py::arg("kernel") = "linear",
        py::arg("gamma") = 1.0, py::arg("degree") = 3, py::arg("coef0") = 1.0,
        py::arg("regularization") = 0.1);

    m.def(
        "gcca",
        [](const std::vector<Eigen::MatrixXd>& views, Eigen::Index n_components,
           double rank_tolerance, const std::vector<Eigen::Index>& ranks) {
            auto ds = as_dataset(views);
            auto model = gcca_fit(ds, n_components, rank_tolerance, ranks);
            py::dict out;
            out["joint"] = model.joint;
            out["view_estimates"] = gcca_transform(model, ds);
            out["ranks"] = model.view_ranks;
            return out;
        },
        py::arg("views"), py::arg("n_components"), py::arg("rank_tolerance") = 0.999,
        py::arg("ranks") = std::vector<Eigen::Index>{});

    m.def(
        "mvmds",
        [](const std::vector<Eigen::MatrixXd>& views, Eigen::Index n_components) {
            return mvmds_fit_transform(as_dataset(views), n_components);
        },
        py::arg("views"), py::arg("n_components"));

    m.def(
        "omnibus",
        [](const std::vector<Eigen::MatrixXd>& views, Eigen::Index n_components) {
            auto result = omnibus_fit_transform(as_dataset(views), n_components);
            py::dict out;
            out["embeddings"] = result.embeddings;
            out["eigenvalues"] = result.eigenvalues;
            return out;
        },
        py::arg("views"), py::arg("n_components"));

    // --------------------------------------------------------------- cluster
    m.def(
        "mv_kmeans",
        [](const std::vector<Eigen::MatrixXd>& views, Eigen::Index n_clusters, int max_iter,
           int n_init, std::uint64_t seed) {
            return cluster_dict(mv_kmeans_fit_predict(
                as_dataset(views), {n_clusters, max_iter, 1e-6, n_init, seed}));
        },
        py::arg("views"), py::arg("n_clusters"), py::arg("max_iter") = 100,
        py::arg("n_init") = 5, py::arg("seed") = 0);

    m.def(
        "mv_spherical_kmeans",
        [](const std::vector<Eigen::MatrixXd>& views, Eigen::Index n_clusters, int max_iter,
           int n_init, std::uint64_t seed) {
            return cluster_dict(mv_spherical_kmeans_fit_predict(
                as_dataset(views), {n_clusters, max_iter, 1e-6, n_init, seed}));
        },
        py::arg("views"), py::arg("n_clusters"), py::arg("max_iter") = 100,
        py::arg("n_init") = 5, py::arg("seed") = 0);

    m.def(
        "mv_spectral",
        [](const std::vector<Eigen::MatrixXd>& views, Eigen::Index n_clusters, int info_iter,
           std::optional<double> gamma, int n_init, std::uint64_t seed) {
            AffinityParams affinity;
            affinity.gamma = gamma;
            affinity.info_iter = info_iter;
            return cluster_dict(mv_spectral_fit_predict(
                as_dataset(views), {n_clusters, 100, 1e-6, n_init, seed}, affinity));
        },
        py::arg("views"), py::arg("n_clusters"), py::arg("info_iter") = 10,
        py::arg("gamma") = py::none(), py::arg("n_init") = 5, py::arg("seed") = 0);

    m.def(
        "coreg_spectral",
        [](const std::vector<Eigen::MatrixXd>& views, Eigen::Index n_clusters, double coupling,
           std::optional<double> gamma, int n_init, std::uint64_t seed) {
            AffinityParams affinity;
            affinity.gamma = gamma;
            affinity.coupling = coupling;
            return cluster_dict(coreg_spectral_fit_predict(
                as_dataset(views), {n_clusters, 100, 1e-6, n_init, seed}, affinity));
        },
        py::arg("views"), py::arg("n_clusters"), py::arg("coupling") = 1.0,
        py::arg("gamma") = py::none(), py::arg("n_init") = 5, py::arg("seed") = 0);

    // --------------------------------------------------------------- semisup
    m.def(
        "cotrain_classifier",
        [](const std::vector<Eigen::MatrixXd>& views, const Eigen::VectorXd& y, Eigen::Index p,
           Eigen::Index n, Eigen::Index pool_size, int max_rounds, std::uint64_t seed) {
            auto ds = as_dataset(views);
            auto model = cotrain_classifier_fit(ds, y, {p, n, pool_size, max_rounds, seed});
            py::dict out;
            out["predictions"] = cotrain_classifier_predict(model, ds);
            out["probabilities"] = cotrain_classifier_predict_proba(model, ds);
            out["rounds"] = model.trace.size();
            out["n_labeled_final"] = model.labeled_indices.size();
            return out;
        },
        py::arg("views"), py::arg("y"), py::arg("p") = 1, py::arg("n") = 3,
        py::arg("pool_size") = 75, py::arg("max_rounds") = 30, py::arg("seed") = 0);

    m.def(
        "cotrain_regressor",
        [](const std::vector<Eigen::MatrixXd>& views, const Eigen::VectorXd& y, Eigen::Index k1,
           Eigen::Index k2, double order1, double order2, int max_rounds, Eigen::Index pool_size,
           std::uint64_t seed) {
            auto ds = as_dataset(views);
            auto model =
                cotrain_regressor_fit(ds, y, {k1, k2, order1, order2, max_rounds, pool_size, seed});
            py::dict out;
            out["predictions"] = cotrain_regressor_predict(model, ds);
            out["rounds"] = model.trace.size();
            return out;
        },
        py::arg("views"), py::arg("y"), py::arg("k1") = 3, py::arg("k2") = 3,
        py::arg("order1") = 2.0, py::arg("order2") = 5.0, py::arg("max_rounds") = 100,
        py::arg("pool_size") = 100, py::arg("seed") = 0);

    // ------------------------------------------------------------- decompose
    m.def(
        "ajive",
        [](const std::vector<Eigen::MatrixXd>& views, std::vector<Eigen::Index> initial_ranks,
           int n_resamples, double quantile, std::uint64_t seed) {
            auto result = ajive_fit(as_dataset(views),
                                    {std::move(initial_ranks), n_resamples, quantile, seed});
            py::dict out;
            out["joint_rank"] = result.joint_rank;
            out["common_scores"] = result.common_scores;
            out["joint"] = result.joint;
            out["individual"] = result.individual;
            out["noise"] = result.noise;
            out["individual_ranks"] = result.individual_ranks;
            out["wedin_threshold"] = result.wedin_threshold;
            out["random_threshold"] = result.random_threshold;
            return out;
        },
        py::arg("views"), py::arg("initial_ranks"), py::arg("n_resamples") = 500,
        py::arg("quantile") = 0.95, py::arg("seed") = 0);

    m.def(
        "group_pca",
        [](const std::vector<Eigen::MatrixXd>& views,
           const std::vector<Eigen::Index>& individual_ranks, Eigen::Index n_components) {
            auto result = group_pca_fit_transform(as_dataset(views), individual_ranks, n_components);
            py::dict out;
            out["scores"] = result.scores;
            out["loadings"] = result.loadings;
            out["explained_variance"] = result.explained_variance;
            return out;
        },
        py::arg("views"), py::arg("individual_ranks"), py::arg("n_components"));

    m.def(
        "group_ica",
        [](const std::vector<Eigen::MatrixXd>& views,
           const std::vector<Eigen::Index>& individual_ranks, Eigen::Index n_components,
           double tol, int max_iter, std::uint64_t seed) {
            IcaParams params{individual_ranks, n_components, tol, max_iter, seed};
            auto result = group_ica_fit(as_dataset(views), params);
            py::dict out;
            out["sources"] = result.sources;
            out["mixing"] = result.mixing;
            out["converged"] = result.converged;
            out["n_iter"] = result.n_iter;
            return out;
        },
        py::arg("views"), py::arg("individual_ranks"), py::arg("n_components"),
        py::arg("tol") = 1e-4, py::arg("max_iter") = 200, py::arg("seed") = 0);

    // ------------------------------------------------------------------ plot
    m.def(
        "scatter_svg",
        [](const Eigen::MatrixXd& embedding, std::optional<Eigen::VectorXi> labels) {
            return scatter_svg(embedding, labels);
        },
        py::arg("embedding"), py::arg("labels") = py::none());
}
