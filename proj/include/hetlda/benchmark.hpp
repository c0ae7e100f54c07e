#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hetlda/data.hpp"
#include "hetlda/methods.hpp"

namespace hetlda {

struct BenchmarkOptions {
    std::vector<Method> methods;
    TrainerConfig trainer;
    CvPlan plan;
    bool standardize = false;
    unsigned threads = 0;  // 0: HETLDA_THREADS, else hardware concurrency
};

/// One method on one (trial, fold) cell. Bayes error is the mean over the
/// pairwise discriminants fitted on the training split; accuracy is measured
/// on the held-out split.
struct FoldRecord {
    int trial = 0;
    int fold = 0;
    bool ok = false;
    std::string error;
    double mean_bayes_error = 0.0;
    std::size_t correct = 0;
    std::size_t total = 0;
    double accuracy = 0.0;
    double train_seconds = 0.0;
};

struct MethodSummary {
    Method method = Method::lda;
    std::vector<FoldRecord> folds;  // trial-major
    std::size_t failures = 0;
    double bayes_error_mean = 0.0;
    double bayes_error_std = 0.0;
    double accuracy_mean = 0.0;
    double accuracy_std = 0.0;
    double train_time_mean = 0.0;
};

struct BenchmarkReport {
    std::string dataset;
    CvPlan plan;
    std::vector<MethodSummary> methods;
};

/// Cross-validates every method; cells run on a worker pool, results are
/// assembled in a fixed order. Failing cells are recorded, not rethrown.
BenchmarkReport run_benchmark(const LabeledDataset& data, const BenchmarkOptions& options,
                              std::string dataset_name = {});

unsigned resolve_worker_count(unsigned requested);

std::string render_text(const BenchmarkReport& report);
std::string render_csv(const BenchmarkReport& report);

/// Every report field except timings, at full precision. Two runs with the
/// same inputs produce the same string.
std::string deterministic_fingerprint(const BenchmarkReport& report);

}  // namespace hetlda
