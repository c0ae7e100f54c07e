#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "hetlda/benchmark.hpp"
#include "hetlda/data.hpp"
#include "hetlda/error.hpp"

using namespace hetlda;
namespace fs = std::filesystem;

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

fs::path write_file(const std::string& name, const std::string& content) {
    const fs::path dir = fs::path(HETLDA_TEST_TMPDIR) / "data_files";
    fs::create_directories(dir);
    const fs::path p = dir / name;
    std::ofstream(p, std::ios::binary) << content;
    return p;
}

}  // namespace

TEST_CASE("load_csv basics") {
    const auto p = write_file("basic.csv", "1.0,2.0,A\n3.0,4.0,B\n");
    const LabeledDataset d = load_csv(p, false, 2);
    CHECK(d.size() == 2);
    CHECK(d.dimension() == 2);
    CHECK(d.labels() == std::vector<int>{0, 1});
    CHECK(d.class_names() == std::vector<std::string>{"A", "B"});
    CHECK(d.features()(1, 0) == 3.0);

    // Same via -1, label first, header, CRLF, blank lines and padding.
    CHECK(load_csv(p, false, -1).labels() == std::vector<int>{0, 1});
    const auto q = write_file("header.csv", "label, x, y\r\n\r\n B , 5, 6\r\nA,7,8\r\nB,1e-3,-2\r\n");
    const LabeledDataset e = load_csv(q, true, 0);
    CHECK(e.size() == 3);
    CHECK(e.class_names() == std::vector<std::string>{"B", "A"});
    CHECK(e.labels() == std::vector<int>{0, 1, 0});
    CHECK(e.features()(2, 0) == 1e-3);
}

TEST_CASE("integer labels are ordered numerically") {
    const auto p = write_file("ints.csv", "0.5,3\n0.1,1\n0.2,10\n0.3,1\n");
    const LabeledDataset d = load_csv(p, false, -1);
    CHECK(d.class_names() == std::vector<std::string>{"1", "3", "10"});
    CHECK(d.labels() == std::vector<int>{1, 0, 2, 0});
}

TEST_CASE("load_csv errors") {
    expect_kind(ErrorKind::ParseError, [] { load_csv(write_file("empty.csv", ""), false, -1); });
    expect_kind(ErrorKind::ParseError, [] { load_csv(write_file("hdr_only.csv", "a,b\n"), true, -1); });
    expect_kind(ErrorKind::IoError, [] { load_csv("/nonexistent/x.csv", false, -1); });
    expect_kind(ErrorKind::InconsistentWidth,
                [] { load_csv(write_file("ragged.csv", "1,2,A\n3,B\n"), false, -1); });
    expect_kind(ErrorKind::InvalidArgument,
                [] { load_csv(write_file("col.csv", "1,2,A\n"), false, 5); });
    expect_kind(ErrorKind::ParseError, [] { load_csv(write_file("one_col.csv", "1\n2\n"), false, -1); });

    try {
        load_csv(write_file("nan.csv", "1,2,A\n3,NaN,B\n"), false, -1);
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ParseError);
        CHECK(std::string(e.what()).find("line 2, column 2") != std::string::npos);
    }
    try {
        load_csv(write_file("word.csv", "1,2,A\n\n3,x4,B\n"), false, -1);
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ParseError);
        CHECK(std::string(e.what()).find("line 3, column 2") != std::string::npos);
    }
    expect_kind(ErrorKind::ParseError, [] { load_csv(write_file("inf.csv", "inf,2,A\n"), false, -1); });
    expect_kind(ErrorKind::ParseError, [] { load_csv(write_file("blank.csv", "1,,A\n"), false, -1); });
    expect_kind(ErrorKind::ParseError, [] { load_csv(write_file("nolabel.csv", "1,2,\n"), false, -1); });
}

TEST_CASE("save_csv round trip is exact") {
    const LabeledDataset d = generate_d2(3);
    const auto p = fs::path(HETLDA_TEST_TMPDIR) / "data_files" / "d2.csv";
    fs::create_directories(p.parent_path());
    save_csv(d, p);
    const LabeledDataset back = load_csv(p, false, -1);
    CHECK(back.features() == d.features());
    CHECK(back.labels() == d.labels());
    CHECK(back.class_names() == d.class_names());
}

TEST_CASE("generators") {
    const LabeledDataset d1 = generate_d1(1);
    CHECK(d1.size() == 3000);
    CHECK(d1.dimension() == 8);
    CHECK(d1.class_counts() == std::vector<std::size_t>{1000, 2000});
    const LabeledDataset d2 = generate_d2(1);
    CHECK(d2.size() == 6000);
    CHECK(d2.dimension() == 4);
    CHECK(d2.class_counts() == std::vector<std::size_t>{2000, 4000});

    CHECK(generate_d1(9).features() == generate_d1(9).features());
    CHECK(generate_d2(9).features() == generate_d2(9).features());
    CHECK(generate_d1(9).features() != generate_d1(10).features());

    // Class 1 sample mean within the CLT band of the generating mean.
    const BinaryStats pop1 = d1_population();
    const Vector m1 = d1.rows_of_class(0).colwise().mean().transpose();
    for (int j = 0; j < 8; ++j) CHECK(std::abs(m1[j] - pop1.first.mean[j]) <= 3.0 / std::sqrt(1000.0));
    const double expected_c1[] = {3.56, 2.80, 0.54, 0.54, 1.34, 0.78, -0.04, -0.29};
    for (int j = 0; j < 8; ++j) CHECK(pop1.first.mean[j] == doctest::Approx(expected_c1[j]));

    // Class 2 of D2: sample variances within 10% of the generating diagonal.
    const Matrix c2 = d2.rows_of_class(1);
    const Vector mean = c2.colwise().mean().transpose();
    const double diag[] = {0.25, 0.75, 1.25, 1.75};
    for (int j = 0; j < 4; ++j) {
        const double var = (c2.col(j).array() - mean[j]).square().mean();
        CHECK(std::abs(var - diag[j]) <= 0.1 * diag[j]);
    }
    CHECK(d2_population().priors.tau == 2.0);
}

TEST_CASE("kfold partition properties") {
    const LabeledDataset d = generate_d1(2);
    CvPlan plan;
    plan.trials = 3;
    const auto splits = kfold_split(d, plan);
    REQUIRE(splits.size() == 3);
    for (const auto& trial : splits) {
        REQUIRE(trial.size() == 10);
        std::vector<int> seen(d.size(), 0);
        for (const Fold& f : trial) {
            CHECK(std::is_sorted(f.test.begin(), f.test.end()));
            CHECK(std::is_sorted(f.train.begin(), f.train.end()));
            CHECK(f.test.size() + f.train.size() == d.size());
            CHECK(f.test.size() == 300);
            std::set<std::size_t> test(f.test.begin(), f.test.end());
            for (std::size_t i : f.train) CHECK(test.count(i) == 0);
            for (std::size_t i : f.test) ++seen[i];
        }
        for (int c : seen) CHECK(c == 1);
    }
    CHECK(splits[0][0].test != splits[1][0].test);
    CHECK(kfold_split(d, plan)[2][4].test == splits[2][4].test);
}

TEST_CASE("kfold examples") {
    std::vector<int> labels(10, 0);
    CvPlan plan;
    plan.trials = 1;
    plan.stratified = false;
    const auto s = kfold_split(labels, 1, plan);
    for (const Fold& f : s[0]) CHECK(f.test.size() == 1);

    // 30/70 mix: every test fold holds exactly 3 and 7.
    std::vector<int> mix(100, 1);
    for (int i = 0; i < 30; ++i) mix[static_cast<std::size_t>(i * 3)] = 0;
    plan.stratified = true;
    plan.trials = 4;
    for (const auto& trial : kfold_split(mix, 2, plan)) {
        for (const Fold& f : trial) {
            int zeros = 0;
            for (std::size_t i : f.test) zeros += mix[i] == 0;
            CHECK(zeros == 3);
            CHECK(f.test.size() == 10);
        }
    }

    // 23 of class 0 and 41 of class 1 over 10 folds: per-class counts differ by
    // at most one across folds.
    std::vector<int> odd(64, 1);
    for (int i = 0; i < 23; ++i) odd[static_cast<std::size_t>(i)] = 0;
    for (const auto& trial : kfold_split(odd, 2, plan)) {
        for (const Fold& f : trial) {
            int zeros = 0;
            for (std::size_t i : f.test) zeros += odd[i] == 0;
            CHECK(zeros >= 2);
            CHECK(zeros <= 3);
            CHECK(static_cast<int>(f.test.size()) - zeros >= 4);
            CHECK(static_cast<int>(f.test.size()) - zeros <= 5);
        }
    }
}

TEST_CASE("kfold errors") {
    CvPlan plan;
    expect_kind(ErrorKind::InvalidArgument, [&] { kfold_split(std::vector<int>(9, 0), 1, plan); });
    std::vector<int> labels(50, 0);
    for (int i = 0; i < 5; ++i) labels[static_cast<std::size_t>(i)] = 1;
    expect_kind(ErrorKind::InfeasibleStratification, [&] { kfold_split(labels, 2, plan); });
    plan.stratified = false;
    CHECK_NOTHROW(kfold_split(labels, 2, plan));
    plan.folds = 1;
    expect_kind(ErrorKind::InvalidArgument, [&] { kfold_split(labels, 2, plan); });
}

TEST_CASE("standardizer") {
    Matrix x(4, 2);
    x << 1, 5, 3, 5, 5, 5, 7, 5;
    const Standardizer s = Standardizer::fit(x);
    const Matrix y = s.apply(x);
    CHECK(y.col(0).mean() == doctest::Approx(0.0));
    CHECK(std::sqrt(y.col(0).squaredNorm() / 4) == doctest::Approx(1.0));
    CHECK(y.col(1).isZero());
}

TEST_CASE("file_fingerprint") {
    // FNV-1a 64 of the empty string and of "a".
    CHECK(file_fingerprint(write_file("fp0.txt", "")) == "cbf29ce484222325");
    CHECK(file_fingerprint(write_file("fp1.txt", "a")) == "af63dc4c8601ec8c");
}

TEST_CASE("benchmark shape and hand-counted accuracy") {
    const LabeledDataset d1 = generate_d1(5);
    BenchmarkOptions opt;
    opt.methods = {Method::lda};
    opt.plan.trials = 1;
    opt.threads = 1;
    const BenchmarkReport r = run_benchmark(d1, opt, "d1");
    REQUIRE(r.methods.size() == 1);
    CHECK(r.methods[0].folds.size() == 10);
    for (const auto& f : r.methods[0].folds) {
        CHECK(f.ok);
        CHECK(f.total == 300);
        CHECK(f.accuracy == static_cast<double>(f.correct) / 300.0);
        CHECK(f.mean_bayes_error >= 0);
        CHECK(f.mean_bayes_error <= 1);
    }

    // Six points, two folds, LDA: class 0 at x in {0, 1, 2}, class 1 at {10, 11, 12},
    // except one class-0 point placed among class 1 so it is always misclassified.
    Matrix x(6, 1);
    x << 0, 1, 11.5, 10, 11, 12;
    const LabeledDataset toy(x, {0, 0, 0, 1, 1, 1});
    BenchmarkOptions t;
    t.methods = {Method::lda};
    t.plan.folds = 2;
    t.plan.trials = 1;
    t.plan.stratified = false;
    t.threads = 1;
    const BenchmarkReport tr = run_benchmark(toy, t);
    std::size_t correct = 0, total = 0;
    for (const auto& f : tr.methods[0].folds) {
        if (!f.ok) continue;
        correct += f.correct;
        total += f.total;
    }
    // Hand count per fold is recomputed from the splits below.
    const auto splits = kfold_split(toy, t.plan);
    std::size_t expected = 0, expected_total = 0;
    for (std::size_t f = 0; f < 2; ++f) {
        if (!tr.methods[0].folds[f].ok) continue;
        // Training splits with both classes give a threshold between the class-0
        // cluster and the class-1 cluster; 11.5 is then on the class-1 side.
        for (std::size_t i : splits[0][f].test) {
            ++expected_total;
            if (i != 2) ++expected;
        }
    }
    CHECK(total == expected_total);
    CHECK(correct == expected);
}

TEST_CASE("benchmark determinism across thread counts") {
    const LabeledDataset d2 = generate_d2(6);
    BenchmarkOptions opt;
    opt.methods = {Method::lda, Method::gld};
    opt.plan.trials = 2;
    opt.plan.folds = 5;
    opt.threads = 1;
    const std::string one = deterministic_fingerprint(run_benchmark(d2, opt, "d2"));
    opt.threads = 4;
    const std::string four = deterministic_fingerprint(run_benchmark(d2, opt, "d2"));
    CHECK(one == four);
    opt.plan.seed = 1;
    CHECK(deterministic_fingerprint(run_benchmark(d2, opt, "d2")) != one);
}

TEST_CASE("benchmark orders GLD below LDA in Bayes error on D1") {
    const LabeledDataset d1 = generate_d1(7);
    BenchmarkOptions opt;
    opt.methods = {Method::lda, Method::gld};
    opt.plan.trials = 1;
    const BenchmarkReport r = run_benchmark(d1, opt);
    CHECK(r.methods[1].bayes_error_mean <= r.methods[0].bayes_error_mean);
    const std::string csv = render_csv(r);
    CHECK(csv.rfind("method,bayes_error_mean,bayes_error_std,accuracy_mean,accuracy_std,train_time_mean\n", 0) == 0);
    CHECK(render_text(r).find("training folds") != std::string::npos);
}

TEST_CASE("benchmark records failures without aborting") {
    // Unstratified folds on a tiny minority class leave some training splits
    // without enough minority samples.
    Matrix x(20, 1);
    std::vector<int> labels(20, 0);
    for (int i = 0; i < 20; ++i) x(i, 0) = i;
    labels[0] = labels[1] = 1;
    const LabeledDataset d(x, labels);
    BenchmarkOptions opt;
    opt.methods = {Method::lda};
    opt.plan.folds = 2;
    opt.plan.trials = 10;
    opt.plan.stratified = false;
    opt.threads = 2;
    const BenchmarkReport r = run_benchmark(d, opt);
    CHECK(r.methods[0].failures > 0);
    CHECK(r.methods[0].failures < 20);
    for (const auto& f : r.methods[0].folds)
        if (!f.ok) CHECK(f.error.find("EmptyClass") != std::string::npos);
    CHECK(render_text(r).find("failed:") != std::string::npos);
}
