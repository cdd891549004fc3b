#include <doctest.h>

#include <numbers>

#include "mvkit/metrics.hpp"
#include "mvkit/semisup.hpp"
#include "oracles.hpp"

using namespace mvkit;

namespace {

// conditionally independent two-view binary task; each view is sufficient
struct BinaryTask {
    MultiviewDataset train;
    MultiviewDataset test;
    Eigen::VectorXd y_semi;    // train labels with the sentinel
    Eigen::VectorXd y_train;   // full train labels
    Eigen::VectorXd y_test;
};

BinaryTask binary_task(unsigned seed, int n = 1000, int n_test = 500, int n_labeled = 50) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> nd;
    std::bernoulli_distribution coin(0.5);
    Eigen::MatrixXd v1(n + n_test, 2), v2(n + n_test, 2);
    Eigen::VectorXd truth(n + n_test);
    for (int i = 0; i < n + n_test; ++i) {
        const int c = coin(gen) ? 1 : 0;
        truth(i) = c;
        const double mu = c ? 1.5 : -1.5;
        v1.row(i) << mu + nd(gen), 0.5 * nd(gen);
        v2.row(i) << mu + nd(gen), 0.5 * nd(gen);
    }
    Eigen::VectorXd semi = Eigen::VectorXd::Constant(n, unlabeled());
    for (int i = 0; i < n_labeled; ++i) semi(i) = truth(i);
    return BinaryTask{
        MultiviewDataset({v1.topRows(n).eval(), v2.topRows(n).eval()}),
        MultiviewDataset({v1.bottomRows(n_test).eval(), v2.bottomRows(n_test).eval()}),
        semi, truth.head(n), truth.tail(n_test)};
}

// fixed-output classifier for contract-level tests
class FixedClassifier final : public Classifier {
public:
    explicit FixedClassifier(double p1) : p1_(p1) {}
    void train(const Eigen::MatrixXd&, const Eigen::VectorXi&) override {}
    Eigen::MatrixXd predict_proba(const Eigen::MatrixXd& x) const override {
        Eigen::MatrixXd out(x.rows(), 2);
        out.col(0).setConstant(1.0 - p1_);
        out.col(1).setConstant(p1_);
        return out;
    }
    std::unique_ptr<Classifier> clone() const override {
        return std::make_unique<FixedClassifier>(*this);
    }

private:
    double p1_;
};

}  // namespace

TEST_SUITE_BEGIN("semisup");

TEST_CASE("fully labeled co-training equals one supervised pass, bit for bit") {
    auto task = binary_task(1, 200, 50, 200);  // every training sample labeled
    CoTrainParams params{.p = 1, .n = 1, .pool_size = 75, .max_rounds = 30, .seed = 1};
    auto model = cotrain_classifier_fit(task.train, task.y_train, params);
    CHECK(model.trace.empty());

    LogisticClassifier l1, l2;
    l1.train(task.train.view(0), task.y_train.cast<int>());
    l2.train(task.train.view(1), task.y_train.cast<int>());
    const Eigen::MatrixXd expected =
        (l1.predict_proba(task.test.view(0)) + l2.predict_proba(task.test.view(1))) / 2.0;
    const Eigen::MatrixXd got = cotrain_classifier_predict_proba(model, task.test);
    CHECK(got == expected);  // exact, same deterministic training path
}

TEST_CASE("co-training reaches high accuracy from 5 percent labels") {
    std::vector<double> accs;
    for (unsigned seed = 0; seed < 10; ++seed) {
        auto task = binary_task(seed);
        CoTrainParams params{.p = 1, .n = 1, .pool_size = 75, .max_rounds = 30, .seed = seed};
        auto model = cotrain_classifier_fit(task.train, task.y_semi, params);
        accs.push_back(accuracy_score(task.y_test, cotrain_classifier_predict(model, task.test)));
    }
    CHECK(oracles::median(accs) >= 0.9);
}

TEST_CASE("three observed classes raise NotBinary") {
    auto task = binary_task(2, 60, 10, 60);
    Eigen::VectorXd y = task.y_train;
    y(0) = 7.0;
    CHECK_THROWS_AS(cotrain_classifier_fit(task.train, y, {}), NotBinary);
}

TEST_CASE("a class without labeled examples raises NoLabeled") {
    auto task = binary_task(3, 100, 10, 100);
    // only class 0 carries labels
    Eigen::VectorXd labels = Eigen::VectorXd::Constant(100, unlabeled());
    labels(0) = 0.0;
    labels(1) = 0.0;
    CHECK_THROWS_AS(cotrain_classifier_fit(task.train, labels, {}), NoLabeled);
    CHECK_THROWS_AS(
        cotrain_classifier_fit(task.train, Eigen::VectorXd::Constant(100, unlabeled()), {}),
        NoLabeled);
    // one labeled example per class is enough
    Eigen::VectorXd both = Eigen::VectorXd::Constant(100, unlabeled());
    both(0) = 0.0;
    both(1) = 1.0;
    CHECK_NOTHROW(cotrain_classifier_fit(task.train, both, {}));
}

TEST_CASE("labeled set grows monotonically and stays within bounds") {
    auto task = binary_task(4, 300, 10, 30);
    CoTrainParams params{.p = 2, .n = 2, .pool_size = 40, .max_rounds = 10, .seed = 4};
    auto model = cotrain_classifier_fit(task.train, task.y_semi, params);
    // initial labeled indices are 0..29 and must all be present
    for (Eigen::Index i = 0; i < 30; ++i)
        CHECK(std::find(model.labeled_indices.begin(), model.labeled_indices.end(), i) !=
              model.labeled_indices.end());
    CHECK(model.labeled_indices.size() <= 300);
    Eigen::Index added = 0;
    for (const auto& round : model.trace) {
        CHECK(round.added_positive >= 0);
        CHECK(round.added_negative >= 0);
        CHECK(round.added_positive <= 2 * params.p);
        CHECK(round.added_negative <= 2 * params.n);
        added += round.added_positive + round.added_negative;
    }
    CHECK(model.labeled_indices.size() == static_cast<std::size_t>(30 + added));
}

TEST_CASE("prediction combines probabilities by arithmetic mean with ties to class 0") {
    auto task = binary_task(5, 20, 5, 20);
    CoTrainParams params;
    FixedClassifier a(0.4), b(0.6);  // combined (0.5, 0.5) everywhere
    auto model = cotrain_classifier_fit(task.train, task.y_train, a, b, params);
    const Eigen::MatrixXd proba = cotrain_classifier_predict_proba(model, task.test);
    for (Eigen::Index i = 0; i < proba.rows(); ++i) {
        CHECK(proba(i, 0) == doctest::Approx(0.5));
        CHECK(proba(i, 1) == doctest::Approx(0.5));
    }
    const Eigen::VectorXd pred = cotrain_classifier_predict(model, task.test);
    CHECK((pred.array() == 0.0).all());  // tie goes to the lower class

    FixedClassifier sure(1.0);
    auto certain = cotrain_classifier_fit(task.train, task.y_train, sure, sure, params);
    const Eigen::MatrixXd p2 = cotrain_classifier_predict_proba(certain, task.test);
    CHECK((p2.col(1).array() == 1.0).all());
}

TEST_CASE("combined probability rows sum to one") {
    auto task = binary_task(6, 400, 100, 40);
    CoTrainParams params{.p = 1, .n = 2, .pool_size = 60, .max_rounds = 8, .seed = 6};
    auto model = cotrain_classifier_fit(task.train, task.y_semi, params);
    const Eigen::MatrixXd proba = cotrain_classifier_predict_proba(model, task.test);
    CHECK((proba.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-8);
    CHECK(proba.minCoeff() >= 0.0);
}

// ---------------------------------------------------------------------------
// COREG
// ---------------------------------------------------------------------------

namespace {

struct SineTask {
    MultiviewDataset train;      // labeled + unlabeled
    MultiviewDataset labeled;    // labeled subset only
    MultiviewDataset test;
    Eigen::VectorXd y_semi;
    Eigen::VectorXd y_labeled;
    Eigen::VectorXd y_test;
};

SineTask sine_task(unsigned seed, int n_labeled = 10, int n_unlabeled = 200, int n_test = 200) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> ux(0, 2 * std::numbers::pi);
    std::normal_distribution<double> nd;
    const int total = n_labeled + n_unlabeled + n_test;
    Eigen::MatrixXd x(total, 1);
    Eigen::VectorXd truth(total);
    for (int i = 0; i < total; ++i) {
        x(i, 0) = ux(gen);
        truth(i) = std::sin(x(i, 0)) + 0.05 * nd(gen);
    }
    const int n_train = n_labeled + n_unlabeled;
    Eigen::VectorXd semi = Eigen::VectorXd::Constant(n_train, unlabeled());
    for (int i = 0; i < n_labeled; ++i) semi(i) = truth(i);
    return SineTask{MultiviewDataset({x.topRows(n_train).eval(), x.topRows(n_train).eval()}),
                    MultiviewDataset({x.topRows(n_labeled).eval(), x.topRows(n_labeled).eval()}),
                    MultiviewDataset({x.bottomRows(n_test).eval(), x.bottomRows(n_test).eval()}),
                    semi, truth.head(n_labeled), truth.tail(n_test)};
}

}  // namespace

TEST_CASE("fully labeled coreg equals two independent knn fits averaged") {
    auto task = sine_task(7, 30, 0, 50);
    CoregParams params;
    auto model = cotrain_regressor_fit(task.labeled, task.y_labeled, params);
    CHECK(model.trace.empty());
    CHECK(model.train_x[0].rows() == 30);
    auto baseline = cotrain_regressor_fit(task.labeled, task.y_labeled, params);
    CHECK(cotrain_regressor_predict(model, task.test) ==
          cotrain_regressor_predict(baseline, task.test));
}

TEST_CASE("coreg beats the labeled-only baseline on the sine task") {
    std::vector<double> cotrained, baseline;
    for (unsigned seed = 0; seed < 10; ++seed) {
        auto task = sine_task(100 + seed);
        CoregParams params{.k1 = 3, .k2 = 3, .order1 = 2.0, .order2 = 5.0,
                           .max_rounds = 100, .pool_size = 100, .seed = seed};
        auto model = cotrain_regressor_fit(task.train, task.y_semi, params);
        cotrained.push_back(
            rmse(task.y_test, cotrain_regressor_predict(model, task.test)));
        auto base = cotrain_regressor_fit(task.labeled, task.y_labeled, params);
        baseline.push_back(rmse(task.y_test, cotrain_regressor_predict(base, task.test)));
    }
    CHECK(oracles::median(cotrained) <= oracles::median(baseline));
}

TEST_CASE("coreg stops immediately when no candidate helps") {
    // constant targets: every neighborhood error is already zero, so no
    // candidate has a positive delta at round 1
    Eigen::MatrixXd x(8, 1);
    x << 0, 1, 2, 3, 0.5, 1.5, 2.5, 3.5;
    Eigen::VectorXd y(8);
    y << 2, 2, 2, 2, unlabeled(), unlabeled(), unlabeled(), unlabeled();
    MultiviewDataset ds({x, x});
    CoregParams params{.k1 = 2, .k2 = 2, .order1 = 2.0, .order2 = 5.0,
                       .max_rounds = 50, .pool_size = 10, .seed = 3};
    auto model = cotrain_regressor_fit(ds, y, params);
    CHECK(model.trace.empty());
    CHECK(model.train_x[0].rows() == 4);
    // identical to the baseline trained on the labeled subset alone
    CoregParams base_params = params;
    MultiviewDataset labeled_only({x.topRows(4).eval(), x.topRows(4).eval()});
    auto baseline = cotrain_regressor_fit(labeled_only, y.head(4), base_params);
    MultiviewDataset probe({x.bottomRows(4).eval(), x.bottomRows(4).eval()});
    CHECK(cotrain_regressor_predict(model, probe) ==
          cotrain_regressor_predict(baseline, probe));
}

TEST_CASE("coreg prediction is the mean of the two regressors") {
    CoregModel model;
    model.params = CoregParams{.k1 = 1, .k2 = 1, .order1 = 2.0, .order2 = 2.0,
                               .max_rounds = 0, .pool_size = 1, .seed = 0};
    model.train_x = {Eigen::MatrixXd::Zero(1, 1), Eigen::MatrixXd::Zero(1, 1)};
    model.train_y = {Eigen::VectorXd::Constant(1, 1.0), Eigen::VectorXd::Constant(1, 3.0)};
    model.state.fitted = true;
    Eigen::MatrixXd queries = oracles::gaussian_matrix(5, 1, 8);
    MultiviewDataset ds({queries, queries});
    const Eigen::VectorXd pred = cotrain_regressor_predict(model, ds);
    CHECK((pred.array() == 2.0).all());
}

TEST_CASE("coreg prediction is permutation equivariant") {
    auto task = sine_task(9, 20, 0, 40);
    CoregParams params;
    auto model = cotrain_regressor_fit(task.labeled, task.y_labeled, params);
    const Eigen::VectorXd pred = cotrain_regressor_predict(model, task.test);
    // reverse the rows
    Eigen::MatrixXd rev = task.test.view(0).colwise().reverse();
    const Eigen::VectorXd pred_rev =
        cotrain_regressor_predict(model, MultiviewDataset({rev, rev}));
    CHECK(pred_rev == pred.reverse().eval());
}

TEST_CASE("coreg input validation") {
    auto task = sine_task(10, 5, 10, 5);
    CHECK_THROWS_AS(
        cotrain_regressor_fit(MultiviewDataset({task.train.view(0)}), task.y_semi, {}),
        ViewCountError);
    Eigen::VectorXd all_unlabeled = Eigen::VectorXd::Constant(15, unlabeled());
    all_unlabeled(0) = 1.0;
    CHECK_THROWS_AS(cotrain_regressor_fit(task.train, all_unlabeled, {}), NoLabeled);
}

TEST_SUITE_END();
