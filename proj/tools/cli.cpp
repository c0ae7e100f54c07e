#include "cli.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "hetlda/benchmark.hpp"
#include "hetlda/data.hpp"
#include "hetlda/error.hpp"
#include "hetlda/methods.hpp"
#include "hetlda/model_file.hpp"

namespace hetlda::cli {
namespace {

struct TrainerFlags {
    int max_iters = 20;
    double grad_tol = 1e-6;
    double step = 0.001;
    int rhld_trials = 1000;
    double s_min = -2.0;
    double s_max = 3.0;
    int lns_iters = 1000;
    int lns_early_stop = 100;
    double perturb_fraction = 0.1;
    std::uint64_t seed = 0;

    void add_to(CLI::App& cmd, const std::string& rhld_trials_flag) {
        cmd.add_option("--max-iters", max_iters, "GLD iteration cap")->capture_default_str();
        cmd.add_option("--grad-tol", grad_tol, "GLD gradient-norm tolerance")->capture_default_str();
        cmd.add_option("--step", step, "C-HLD grid step")->capture_default_str();
        cmd.add_option(rhld_trials_flag, rhld_trials, "R-HLD-1/2 random draws")->capture_default_str();
        cmd.add_option("--s-min", s_min, "lower end of the R-HLD draw range")->capture_default_str();
        cmd.add_option("--s-max", s_max, "upper end of the R-HLD draw range")->capture_default_str();
        cmd.add_option("--lns-iters", lns_iters, "LNS sweep cap")->capture_default_str();
        cmd.add_option("--lns-early-stop", lns_early_stop, "LNS sweeps without improvement")
            ->capture_default_str();
        cmd.add_option("--perturb-fraction", perturb_fraction, "LNS relative step")->capture_default_str();
        cmd.add_option("--seed", seed, "random seed")->capture_default_str();
    }

    TrainerConfig config() const {
        TrainerConfig cfg;
        cfg.gld.max_iters = max_iters;
        cfg.gld.grad_tol = grad_tol;
        cfg.sweep.step = step;
        cfg.sweep.trials = rhld_trials;
        cfg.sweep.s_min = s_min;
        cfg.sweep.s_max = s_max;
        cfg.sweep.seed = seed;
        cfg.lns.max_iters = lns_iters;
        cfg.lns.early_stop = lns_early_stop;
        cfg.lns.perturb_fraction = perturb_fraction;
        cfg.lns.seed = seed;
        cfg.gld.validate();
        cfg.sweep.validate();
        cfg.lns.validate();
        return cfg;
    }

    nlohmann::json to_json() const {
        return {{"max_iters", max_iters},   {"grad_tol", grad_tol},
                {"step", step},             {"rhld_trials", rhld_trials},
                {"s_min", s_min},           {"s_max", s_max},
                {"lns_iters", lns_iters},   {"lns_early_stop", lns_early_stop},
                {"perturb_fraction", perturb_fraction}};
    }
};

LabeledDataset generated(const std::string& name, std::uint64_t seed) {
    if (name == "d1") return generate_d1(seed);
    if (name == "d2") return generate_d2(seed);
    throw Error(ErrorKind::InvalidArgument, "unknown synthetic dataset '" + name + "' (expected d1 or d2)");
}

std::string canonical_label(const std::string& cell) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (!cell.empty() && ec == std::errc() && ptr == cell.data() + cell.size()) return std::to_string(v);
    return cell;
}

int cmd_generate(const std::string& dataset, std::uint64_t seed, const std::string& out_path,
                 std::ostream& out) {
    const LabeledDataset data = generated(dataset, seed);
    save_csv(data, out_path);
    const auto counts = data.class_counts();
    out << "wrote " << out_path << ": n=" << data.size() << " d=" << data.dimension() << " counts=";
    for (std::size_t k = 0; k < counts.size(); ++k)
        out << (k ? "," : "") << data.class_names()[k] << ':' << counts[k];
    out << '\n';
    return kExitOk;
}

int cmd_train(const std::string& method_name, const std::string& data_path, long label_col, bool header,
              const TrainerFlags& flags, const std::string& model_out, std::ostream& out) {
    const Method method = parse_method(method_name);
    const TrainerConfig cfg = flags.config();
    const LabeledDataset data = load_csv(data_path, header, label_col);

    const auto start = std::chrono::steady_clock::now();
    ModelFile file;
    file.method = std::string(to_string(method));
    file.model = train_ovo(data, make_trainer(method, cfg));
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    file.training = {{"dataset_hash", file_fingerprint(data_path)},
                     {"samples", data.size()},
                     {"config", flags.to_json()},
                     {"seed", flags.seed}};
    save_model(file, model_out);

    out << "method " << file.method << ", " << file.model.num_classes << " classes, "
        << file.model.pairs.size() << " pairwise classifier(s)\n";
    char line[160];
    for (const auto& p : file.model.pairs) {
        std::snprintf(line, sizeof line, "  %s vs %s: p_e = %.6f\n",
                      file.model.class_names[static_cast<std::size_t>(p.class_a)].c_str(),
                      file.model.class_names[static_cast<std::size_t>(p.class_b)].c_str(), p.bayes_error);
        out << line;
    }
    std::snprintf(line, sizeof line, "training time: %.6f s\nmodel written to %s\n", seconds, model_out.c_str());
    out << line;
    return kExitOk;
}

int cmd_predict(const std::string& model_path, const std::string& data_path, const std::string& out_path,
                long label_col, bool header, std::ostream& out) {
    const ModelFile file = load_model(model_path);
    const CsvTable table = read_csv_table(data_path, header);
    const auto d = static_cast<std::size_t>(file.model.dimension());

    std::optional<std::size_t> label_index;
    if (table.width() == d + 1) {
        label_index = resolve_column(label_col, table.width());
    } else if (table.width() != d) {
        throw Error(ErrorKind::DimensionMismatch, "model expects " + std::to_string(d) +
                                                      " features, file has " + std::to_string(table.width()) +
                                                      " columns");
    }
    const Matrix x = features_from_table(table, label_index);

    std::ofstream pred(out_path);
    if (!pred) throw Error(ErrorKind::IoError, "cannot write '" + out_path + "'");
    std::size_t correct = 0;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const int k = predict_ovo(file.model, x.row(i).transpose());
        const std::string& name = file.model.class_names[static_cast<std::size_t>(k)];
        pred << name << '\n';
        if (label_index && canonical_label(table.rows[static_cast<std::size_t>(i)][*label_index]) == name)
            ++correct;
    }
    pred.flush();
    if (!pred) throw Error(ErrorKind::IoError, "failed writing '" + out_path + "'");

    out << "wrote " << x.rows() << " predictions to " << out_path << '\n';
    if (label_index) {
        char line[96];
        std::snprintf(line, sizeof line, "accuracy: %.6f (%zu/%zu)\n",
                      static_cast<double>(correct) / static_cast<double>(x.rows()), correct,
                      static_cast<std::size_t>(x.rows()));
        out << line;
    }
    return kExitOk;
}

struct BenchmarkFlags {
    std::string source;
    std::string methods = "lda,gld";
    int folds = 10;
    int trials = 20;
    std::string format = "text";
    std::string out_path;
    long label_col = -1;
    bool header = false;
    unsigned threads = 0;
    bool standardize = false;
    bool no_stratify = false;
};

int cmd_benchmark(const BenchmarkFlags& b, const TrainerFlags& flags, std::ostream& out) {
    BenchmarkOptions options;
    options.methods = parse_method_list(b.methods);
    options.trainer = flags.config();
    options.plan = {b.folds, b.trials, flags.seed, !b.no_stratify};
    options.standardize = b.standardize;
    options.threads = b.threads;

    const bool synthetic = b.source == "d1" || b.source == "d2";
    const LabeledDataset data =
        synthetic ? generated(b.source, flags.seed) : load_csv(b.source, b.header, b.label_col);
    const BenchmarkReport report = run_benchmark(data, options, b.source);
    const std::string text = b.format == "csv" ? render_csv(report) : render_text(report);

    if (b.out_path.empty()) {
        out << text;
    } else {
        std::ofstream f(b.out_path);
        if (!f) throw Error(ErrorKind::IoError, "cannot write '" + b.out_path + "'");
        f << text;
        out << "report written to " << b.out_path << '\n';
    }
    std::size_t failures = 0;
    for (const auto& m : report.methods) failures += m.failures;
    return failures == 0 ? kExitOk : kExitRuntime;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bayes-error-minimising linear discriminants for heteroscedastic data", "hetlda"};
    app.require_subcommand(1);

    std::string gen_dataset, gen_out;
    std::uint64_t gen_seed = 0;
    auto* gen = app.add_subcommand("generate", "write a synthetic dataset (d1 or d2) as CSV");
    gen->add_option("dataset", gen_dataset, "d1 or d2")->required()->check(CLI::IsMember({"d1", "d2"}));
    gen->add_option("--seed", gen_seed, "random seed")->capture_default_str();
    gen->add_option("--out", gen_out, "output CSV path")->required();

    std::string train_method, train_data, train_out;
    long train_label_col = -1;
    bool train_header = false;
    TrainerFlags train_flags;
    auto* train = app.add_subcommand("train", "train a model and save it");
    train->add_option("method", train_method, "lda, chld, rhld1, rhld2, gld or gld-lns")
        ->required()
        ->check(CLI::IsMember({"lda", "chld", "rhld1", "rhld2", "gld", "gld-lns"}));
    train->add_option("data", train_data, "training CSV")->required();
    train->add_option("--label-col", train_label_col, "label column, negative counts from the end")
        ->capture_default_str();
    train->add_flag("--header", train_header, "first line is a header");
    train->add_option("--out", train_out, "model output path")->required();
    train_flags.add_to(*train, "--trials");

    std::string pred_model, pred_data, pred_out;
    long pred_label_col = -1;
    bool pred_header = false;
    auto* predict = app.add_subcommand("predict", "apply a saved model to a CSV");
    predict->add_option("model", pred_model, "model file")->required();
    predict->add_option("data", pred_data, "CSV with d feature columns, optionally plus a label column")
        ->required();
    predict->add_option("--out", pred_out, "predictions output path")->required();
    predict->add_option("--label-col", pred_label_col, "label column when present")->capture_default_str();
    predict->add_flag("--header", pred_header, "first line is a header");

    BenchmarkFlags bench_flags;
    TrainerFlags bench_trainer;
    auto* bench = app.add_subcommand("benchmark", "cross-validate methods and print a summary table");
    bench->add_option("source", bench_flags.source, "CSV path, or d1 / d2 to generate with --seed")->required();
    bench->add_option("--methods", bench_flags.methods, "comma-separated methods")->capture_default_str();
    bench->add_option("--folds", bench_flags.folds, "folds per trial")->capture_default_str();
    bench->add_option("--trials", bench_flags.trials, "cross-validation repetitions")->capture_default_str();
    bench->add_option("--format", bench_flags.format, "text or csv")
        ->check(CLI::IsMember({"text", "csv"}))
        ->capture_default_str();
    bench->add_option("--out", bench_flags.out_path, "write the report here instead of stdout");
    bench->add_option("--label-col", bench_flags.label_col, "label column for CSV input")->capture_default_str();
    bench->add_flag("--header", bench_flags.header, "first line is a header");
    bench->add_option("--threads", bench_flags.threads, "worker threads (default: HETLDA_THREADS or cores)");
    bench->add_flag("--standardize", bench_flags.standardize, "z-score features using training-fold moments");
    bench->add_flag("--no-stratify", bench_flags.no_stratify, "plain rather than class-stratified folds");
    bench_trainer.add_to(*bench, "--rhld-trials");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*gen) return cmd_generate(gen_dataset, gen_seed, gen_out, out);
        if (*train)
            return cmd_train(train_method, train_data, train_label_col, train_header, train_flags, train_out, out);
        if (*predict) return cmd_predict(pred_model, pred_data, pred_out, pred_label_col, pred_header, out);
        if (*bench) return cmd_benchmark(bench_flags, bench_trainer, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.kind() == ErrorKind::InvalidArgument ? kExitUsage : kExitRuntime;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitUsage;
}

}  // namespace hetlda::cli
