#include "hetlda/benchmark.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "hetlda/error.hpp"

namespace hetlda {
namespace {

struct Cell {
    std::size_t method;
    int trial;
    int fold;
};

FoldRecord run_cell(const LabeledDataset& data, const Fold& split, Method method,
                    const BenchmarkOptions& options, int trial, int fold) {
    FoldRecord rec;
    rec.trial = trial;
    rec.fold = fold;
    try {
        LabeledDataset train = data.subset(split.train);
        LabeledDataset test = data.subset(split.test);
        if (options.standardize) {
            const auto s = Standardizer::fit(train.features());
            train = LabeledDataset(s.apply(train.features()), train.labels(), train.class_names());
            test = LabeledDataset(s.apply(test.features()), test.labels(), test.class_names());
        }
        const BinaryTrainer trainer = make_trainer(method, options.trainer);

        const auto start = std::chrono::steady_clock::now();
        const OvoModel model = train_ovo(train, trainer);
        rec.train_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        rec.mean_bayes_error = model.mean_bayes_error();
        rec.total = test.size();
        for (std::size_t i = 0; i < test.size(); ++i) {
            const Vector x = test.features().row(static_cast<Eigen::Index>(i)).transpose();
            if (predict_ovo(model, x) == test.labels()[i]) ++rec.correct;
        }
        rec.accuracy = static_cast<double>(rec.correct) / static_cast<double>(rec.total);
        rec.ok = true;
    } catch (const std::exception& e) {
        rec.ok = false;
        rec.error = e.what();
    }
    return rec;
}

std::pair<double, double> mean_and_std(const std::vector<double>& xs) {
    if (xs.empty()) return {std::nan(""), std::nan("")};
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    if (xs.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

void summarise(MethodSummary& s) {
    std::vector<double> pe, acc, time;
    for (const auto& r : s.folds) {
        if (!r.ok) {
            ++s.failures;
            continue;
        }
        pe.push_back(r.mean_bayes_error);
        acc.push_back(r.accuracy);
        time.push_back(r.train_seconds);
    }
    std::tie(s.bayes_error_mean, s.bayes_error_std) = mean_and_std(pe);
    std::tie(s.accuracy_mean, s.accuracy_std) = mean_and_std(acc);
    s.train_time_mean = mean_and_std(time).first;
}

std::string format(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

}  // namespace

unsigned resolve_worker_count(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("HETLDA_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

BenchmarkReport run_benchmark(const LabeledDataset& data, const BenchmarkOptions& options,
                              std::string dataset_name) {
    if (options.methods.empty()) throw Error(ErrorKind::InvalidArgument, "no methods to benchmark");
    options.plan.validate();
    const auto splits = kfold_split(data, options.plan);

    std::vector<Cell> cells;
    for (std::size_t m = 0; m < options.methods.size(); ++m)
        for (int t = 0; t < options.plan.trials; ++t)
            for (int f = 0; f < options.plan.folds; ++f) cells.push_back({m, t, f});

    std::vector<FoldRecord> records(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            const Cell& c = cells[i];
            records[i] = run_cell(data, splits[static_cast<std::size_t>(c.trial)][static_cast<std::size_t>(c.fold)],
                                  options.methods[c.method], options, c.trial, c.fold);
        }
    };
    const unsigned workers =
        std::min<unsigned>(resolve_worker_count(options.threads), static_cast<unsigned>(cells.size()));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    }

    BenchmarkReport report;
    report.dataset = std::move(dataset_name);
    report.plan = options.plan;
    const std::size_t per_method = static_cast<std::size_t>(options.plan.trials * options.plan.folds);
    for (std::size_t m = 0; m < options.methods.size(); ++m) {
        MethodSummary s;
        s.method = options.methods[m];
        s.folds.assign(records.begin() + static_cast<std::ptrdiff_t>(m * per_method),
                       records.begin() + static_cast<std::ptrdiff_t>((m + 1) * per_method));
        summarise(s);
        report.methods.push_back(std::move(s));
    }
    return report;
}

std::string render_text(const BenchmarkReport& report) {
    std::ostringstream out;
    out << "dataset: " << (report.dataset.empty() ? "-" : report.dataset) << "  folds: " << report.plan.folds
        << "  trials: " << report.plan.trials << "  seed: " << report.plan.seed
        << "  (Bayes error on training folds)\n";
    char line[256];
    std::snprintf(line, sizeof line, "%-8s %-22s %-22s %-12s %s\n", "method", "bayes_error",
                  "accuracy", "train_time", "failed");
    out << line;
    for (const auto& s : report.methods) {
        const std::string pe = format("%.4f", s.bayes_error_mean) + " +- " + format("%.4f", s.bayes_error_std);
        const std::string acc =
            format("%.2f", 100.0 * s.accuracy_mean) + " +- " + format("%.2f", 100.0 * s.accuracy_std) + "%";
        std::snprintf(line, sizeof line, "%-8s %-22s %-22s %-12s %zu\n", std::string(to_string(s.method)).c_str(),
                      pe.c_str(), acc.c_str(), (format("%.4f", s.train_time_mean) + "s").c_str(), s.failures);
        out << line;
    }
    for (const auto& s : report.methods) {
        for (const auto& r : s.folds) {
            if (!r.ok)
                out << "  " << to_string(s.method) << " trial " << r.trial << " fold " << r.fold
                    << " failed: " << r.error << '\n';
        }
    }
    return out.str();
}

std::string render_csv(const BenchmarkReport& report) {
    std::ostringstream out;
    out << "method,bayes_error_mean,bayes_error_std,accuracy_mean,accuracy_std,train_time_mean\n";
    for (const auto& s : report.methods) {
        out << to_string(s.method) << ',' << format("%.17g", s.bayes_error_mean) << ','
            << format("%.17g", s.bayes_error_std) << ',' << format("%.17g", s.accuracy_mean) << ','
            << format("%.17g", s.accuracy_std) << ',' << format("%.17g", s.train_time_mean) << '\n';
    }
    return out.str();
}

std::string deterministic_fingerprint(const BenchmarkReport& report) {
    std::ostringstream out;
    out << report.dataset << '|' << report.plan.folds << '|' << report.plan.trials << '|' << report.plan.seed
        << '|' << report.plan.stratified << '\n';
    for (const auto& s : report.methods) {
        out << to_string(s.method) << ' ' << format("%a", s.bayes_error_mean) << ' '
            << format("%a", s.bayes_error_std) << ' ' << format("%a", s.accuracy_mean) << ' '
            << format("%a", s.accuracy_std) << ' ' << s.failures << '\n';
        for (const auto& r : s.folds) {
            out << "  " << r.trial << ' ' << r.fold << ' ' << r.ok << ' ' << r.error << ' '
                << format("%a", r.mean_bayes_error) << ' ' << r.correct << '/' << r.total << '\n';
        }
    }
    return out.str();
}

}  // namespace hetlda
