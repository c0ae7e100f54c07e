#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "hetlda/error.hpp"
#include "hetlda/methods.hpp"
#include "hetlda/multiclass.hpp"
#include "hetlda/random.hpp"

using namespace hetlda;

namespace {

template <class Fn>
void expect_kind(ErrorKind kind, Fn&& fn) {
    try {
        fn();
        FAIL("no exception thrown");
    } catch (const Error& e) {
        CHECK(e.kind() == kind);
    }
}

// K blobs with identity covariance at the vertices of a regular polygon of
// circumradius `radius`, `per_class` samples each.
LabeledDataset blobs(std::uint64_t seed, int k, int per_class, double radius) {
    Rng rng(seed);
    Matrix x(k * per_class, 2);
    std::vector<int> labels;
    for (int c = 0; c < k; ++c) {
        const double angle = 2.0 * 3.141592653589793 * c / k;
        for (int i = 0; i < per_class; ++i) {
            const Eigen::Index r = c * per_class + i;
            x(r, 0) = radius * std::cos(angle) + rng.normal();
            x(r, 1) = radius * std::sin(angle) + rng.normal();
            labels.push_back(c);
        }
    }
    return LabeledDataset(x, labels);
}

// A pair classifier on a 1-D input that always votes for `winner` at x = 0.
PairModel fixed_vote(int a, int b, int winner, double pe) {
    Vector w(1);
    w << 1.0;
    return {a, b, {w, winner == a ? -1.0 : 1.0}, pe};
}

Vector origin() { return Vector::Zero(1); }

BinaryTrainer gld_trainer() { return make_trainer(Method::gld, {}); }

}  // namespace

TEST_CASE("weighted vote examples") {
    OvoModel m;
    m.num_classes = 3;
    m.class_names = {"A", "B", "C"};
    // Votes A, A, B with p_e 0.1, 0.1, 0.0.
    m.pairs = {fixed_vote(0, 1, 0, 0.1), fixed_vote(0, 2, 0, 0.1), fixed_vote(1, 2, 1, 0.0)};
    const auto s = ovo_scores(m, origin());
    CHECK(s[0] == doctest::Approx(1.8));
    CHECK(s[1] == doctest::Approx(1.0));
    CHECK(s[2] == 0.0);
    CHECK(predict_ovo(m, origin()) == 0);

    // One vote each: A (p_e 0.3), B (p_e 0.1), C (p_e 0.2) resolves to B.
    m.pairs = {fixed_vote(0, 1, 1, 0.1), fixed_vote(0, 2, 0, 0.3), fixed_vote(1, 2, 2, 0.2)};
    CHECK(predict_ovo(m, origin()) == 1);
    const auto t = ovo_scores(m, origin());
    CHECK(t[0] == doctest::Approx(0.7));
    CHECK(t[1] == doctest::Approx(0.9));
    CHECK(t[2] == doctest::Approx(0.8));

    // Exactly equal weighted scores go to the lowest index.
    m.pairs = {fixed_vote(0, 1, 1, 0.2), fixed_vote(0, 2, 0, 0.2), fixed_vote(1, 2, 2, 0.2)};
    CHECK(predict_ovo(m, origin()) == 0);

    expect_kind(ErrorKind::DimensionMismatch, [&] { predict_ovo(m, Vector::Zero(2)); });
}

TEST_CASE("score bounds and agreement with plain majority") {
    Rng rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        const int k = 2 + static_cast<int>(rng.below(5));
        OvoModel m;
        m.num_classes = k;
        const bool equal_pe = trial % 2 == 0;
        const double shared = rng.uniform01();
        std::vector<int> votes(static_cast<std::size_t>(k), 0);
        for (int a = 0; a < k; ++a) {
            for (int b = a + 1; b < k; ++b) {
                const int winner = rng.below(2) == 0 ? a : b;
                ++votes[static_cast<std::size_t>(winner)];
                m.pairs.push_back(fixed_vote(a, b, winner, equal_pe ? shared : rng.uniform01()));
            }
        }
        const auto s = ovo_scores(m, origin());
        for (double v : s) {
            CHECK(v >= 0.0);
            CHECK(v <= k - 1);
        }
        if (equal_pe && shared < 1.0) {
            const int top = *std::max_element(votes.begin(), votes.end());
            if (std::count(votes.begin(), votes.end(), top) == 1) {
                const auto it = std::find(votes.begin(), votes.end(), top);
                CHECK(predict_ovo(m, origin()) == static_cast<int>(it - votes.begin()));
            }
        }
    }
}

TEST_CASE("train_ovo structure") {
    for (int k : {2, 3, 4}) {
        const LabeledDataset data = blobs(10 + static_cast<std::uint64_t>(k), k, 30, 6.0);
        const OvoModel m = train_ovo(data, gld_trainer());
        CHECK(m.num_classes == k);
        CHECK(m.pairs.size() == static_cast<std::size_t>(k * (k - 1) / 2));
        std::size_t idx = 0;
        for (int a = 0; a < k; ++a) {
            for (int b = a + 1; b < k; ++b) {
                CHECK(m.pairs[idx].class_a == a);
                CHECK(m.pairs[idx].class_b == b);
                CHECK(m.pairs[idx].bayes_error >= 0.0);
                CHECK(m.pairs[idx].bayes_error <= 1.0);
                ++idx;
            }
        }
        CHECK(m.dimension() == 2);
    }
}

TEST_CASE("two classes reduce to the binary classifier") {
    const LabeledDataset data = blobs(5, 2, 50, 1.0);
    const OvoModel m = train_ovo(data, gld_trainer());
    Rng rng(1);
    for (int i = 0; i < 200; ++i) {
        Vector x(2);
        x << 3 * rng.normal(), 3 * rng.normal();
        const int expected = classify(m.pairs[0].disc, x) == Side::a ? 0 : 1;
        CHECK(predict_ovo(m, x) == expected);
    }
}

TEST_CASE("separated triangle blobs") {
    const LabeledDataset train = blobs(7, 3, 100, 6.0 / std::sqrt(3.0) * 1.5);
    const OvoModel m = train_ovo(train, gld_trainer());
    for (const auto& p : m.pairs) CHECK(p.bayes_error < 0.01);
    const LabeledDataset test = blobs(8, 3, 100, 6.0 / std::sqrt(3.0) * 1.5);
    int correct = 0;
    for (Eigen::Index i = 0; i < test.features().rows(); ++i)
        correct += predict_ovo(m, test.features().row(i).transpose()) ==
                   test.labels()[static_cast<std::size_t>(i)];
    CHECK(correct >= 290);
}

TEST_CASE("relabelling permutes predictions") {
    const LabeledDataset data = blobs(21, 3, 60, 2.5);
    const std::vector<int> perm{2, 0, 1};
    std::vector<int> relabelled;
    for (int l : data.labels()) relabelled.push_back(perm[static_cast<std::size_t>(l)]);
    const LabeledDataset other(data.features(), relabelled);
    const OvoModel m1 = train_ovo(data, gld_trainer());
    const OvoModel m2 = train_ovo(other, gld_trainer());
    Rng rng(4);
    int checked = 0;
    for (int i = 0; i < 500; ++i) {
        Vector x(2);
        x << 3 * rng.normal(), 3 * rng.normal();
        // Exact score ties resolve by index, which is not permutation-equivariant.
        const auto s = ovo_scores(m1, x);
        std::vector<double> sorted = s;
        std::sort(sorted.begin(), sorted.end());
        if (sorted[2] - sorted[1] < 1e-9) continue;
        ++checked;
        CHECK(predict_ovo(m2, x) == perm[static_cast<std::size_t>(predict_ovo(m1, x))]);
    }
    CHECK(checked > 400);
}

TEST_CASE("train_ovo errors carry the pair") {
    Matrix x(5, 1);
    x << 0, 1, 2, 3, 4;
    const LabeledDataset data(x, {0, 0, 1, 1, 2}, {"a", "b", "c"});
    try {
        train_ovo(data, gld_trainer());
        FAIL("expected EmptyClass");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::EmptyClass);
        CHECK(std::string(e.what()).find("(a, c)") != std::string::npos);
    }
    const LabeledDataset one(x, {0, 0, 0, 0, 0});
    expect_kind(ErrorKind::InvalidArgument, [&] { train_ovo(one, gld_trainer()); });
}

TEST_CASE("every method trains an OvO model") {
    const LabeledDataset data = blobs(30, 3, 40, 3.0);
    TrainerConfig cfg;
    cfg.sweep.step = 0.05;
    cfg.sweep.trials = 50;
    cfg.lns.max_iters = 20;
    cfg.lns.early_stop = 5;
    for (Method method : {Method::lda, Method::chld, Method::rhld1, Method::rhld2, Method::gld,
                          Method::gld_lns}) {
        const OvoModel m = train_ovo(data, make_trainer(method, cfg));
        int correct = 0;
        for (Eigen::Index i = 0; i < data.features().rows(); ++i)
            correct += predict_ovo(m, data.features().row(i).transpose()) ==
                       data.labels()[static_cast<std::size_t>(i)];
        CHECK_MESSAGE(correct >= 100, to_string(method));
    }
}

TEST_CASE("gld-lns reports the training error rate") {
    const LabeledDataset data = blobs(31, 2, 50, 0.8);
    TrainerConfig cfg;
    cfg.lns.max_iters = 30;
    cfg.lns.early_stop = 5;
    const OvoModel m = train_ovo(data, make_trainer(Method::gld_lns, cfg));
    const double rate = static_cast<double>(training_error_count(m.pairs[0].disc, data, 0, 1)) / 100.0;
    CHECK(m.pairs[0].bayes_error == rate);
}

TEST_CASE("method names") {
    CHECK(parse_method("gld-lns") == Method::gld_lns);
    CHECK(to_string(Method::rhld2) == "rhld2");
    for (Method m : {Method::lda, Method::chld, Method::rhld1, Method::rhld2, Method::gld, Method::gld_lns})
        CHECK(parse_method(to_string(m)) == m);
    CHECK(parse_method_list("lda,gld") == std::vector<Method>{Method::lda, Method::gld});
    expect_kind(ErrorKind::InvalidArgument, [] { parse_method("svm"); });
    expect_kind(ErrorKind::InvalidArgument, [] { parse_method_list("lda,,gld"); });
    expect_kind(ErrorKind::InvalidArgument, [] { parse_method_list(""); });
}
