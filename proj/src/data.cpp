#include "hetlda/data.hpp"

#include <algorithm>
#include <charconv>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "hetlda/error.hpp"
#include "hetlda/random.hpp"

namespace hetlda {
namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_cells(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        cells.push_back(trim(std::string_view(line).substr(start, comma == std::string::npos ? comma : comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return cells;
}

std::string cell_location(const CsvTable& table, std::size_t row, std::size_t col) {
    return "line " + std::to_string(table.line_numbers[row]) + ", column " + std::to_string(col + 1);
}

double parse_real(const CsvTable& table, std::size_t row, std::size_t col) {
    const std::string& cell = table.rows[row][col];
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size())
        throw Error(ErrorKind::ParseError,
                    "cannot parse '" + cell + "' as a number at " + cell_location(table, row, col));
    if (!std::isfinite(value))
        throw Error(ErrorKind::ParseError,
                    "non-finite value '" + cell + "' at " + cell_location(table, row, col));
    return value;
}

bool parse_integer(const std::string& cell, long long& out) {
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
    return !cell.empty() && ec == std::errc() && ptr == cell.data() + cell.size();
}

LabeledDataset sample_gaussian_pair(std::uint64_t seed, const Vector& mean2, const Vector& var2,
                                    double offset, std::size_t n1, std::size_t n2) {
    const Eigen::Index d = mean2.size();
    const Vector mean1 = (mean2.array() - offset).matrix();
    const Vector sd2 = var2.cwiseSqrt();

    Rng rng(seed);
    Matrix x(static_cast<Eigen::Index>(n1 + n2), d);
    std::vector<int> labels(n1 + n2);
    for (std::size_t i = 0; i < n1 + n2; ++i) {
        const bool first = i < n1;
        for (Eigen::Index j = 0; j < d; ++j) {
            const double z = rng.normal();
            x(static_cast<Eigen::Index>(i), j) = first ? mean1[j] + z : mean2[j] + sd2[j] * z;
        }
        labels[i] = first ? 0 : 1;
    }
    return LabeledDataset(std::move(x), std::move(labels), {"C1", "C2"});
}

Vector d1_mean2() {
    Vector m(8);
    m << 3.86, 3.10, 0.84, 0.84, 1.64, 1.08, 0.26, 0.01;
    return m;
}
Vector d1_var2() {
    Vector v(8);
    v << 8.41, 12.06, 0.12, 0.22, 1.49, 1.77, 0.35, 2.73;
    return v;
}
Vector d2_mean2() {
    Vector m(4);
    m << -1.5, -0.75, 0.75, 1.5;
    return m;
}
Vector d2_var2() {
    Vector v(4);
    v << 0.25, 0.75, 1.25, 1.75;
    return v;
}

constexpr double kD1Offset = 0.3;
constexpr double kD2Offset = 0.75;

BinaryStats population(const Vector& mean2, const Vector& var2, double offset, std::size_t n1,
                       std::size_t n2) {
    const Eigen::Index d = mean2.size();
    BinaryStats s;
    s.priors = Priors::from_counts(n1, n2);
    s.first = {(mean2.array() - offset).matrix(), Matrix::Identity(d, d), n1, s.priors.pi1};
    s.second = {mean2, var2.asDiagonal(), n2, s.priors.pi2};
    return s;
}

}  // namespace

CsvTable read_csv_table(const std::filesystem::path& path, bool has_header) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "'");

    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    bool header_pending = has_header;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto cells = split_cells(line);
        if (header_pending) {
            table.header = std::move(cells);
            header_pending = false;
            continue;
        }
        if (!table.rows.empty() && cells.size() != table.width())
            throw Error(ErrorKind::InconsistentWidth,
                        "line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                            " columns, expected " + std::to_string(table.width()));
        table.rows.push_back(std::move(cells));
        table.line_numbers.push_back(line_no);
    }
    if (table.rows.empty()) throw Error(ErrorKind::ParseError, "'" + path.string() + "' has no data rows");
    if (!table.header.empty() && table.header.size() != table.width())
        throw Error(ErrorKind::InconsistentWidth, "header width does not match the data rows");
    return table;
}

std::size_t resolve_column(long column, std::size_t width) {
    const long w = static_cast<long>(width);
    const long resolved = column < 0 ? w + column : column;
    if (resolved < 0 || resolved >= w)
        throw Error(ErrorKind::InvalidArgument,
                    "column " + std::to_string(column) + " out of range for " + std::to_string(width) + " columns");
    return static_cast<std::size_t>(resolved);
}

Matrix features_from_table(const CsvTable& table, std::optional<std::size_t> skip_column) {
    const std::size_t width = table.width();
    const std::size_t d = skip_column ? width - 1 : width;
    Matrix x(static_cast<Eigen::Index>(table.rows.size()), static_cast<Eigen::Index>(d));
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        Eigen::Index j = 0;
        for (std::size_t c = 0; c < width; ++c) {
            if (skip_column && c == *skip_column) continue;
            x(static_cast<Eigen::Index>(r), j++) = parse_real(table, r, c);
        }
    }
    return x;
}

LabeledDataset dataset_from_table(const CsvTable& table, long label_column) {
    if (table.width() < 2)
        throw Error(ErrorKind::ParseError, "need at least one feature column and a label column");
    const std::size_t label_col = resolve_column(label_column, table.width());
    Matrix x = features_from_table(table, label_col);

    std::vector<std::string> raw;
    raw.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        if (table.rows[r][label_col].empty())
            throw Error(ErrorKind::ParseError, "empty label at " + cell_location(table, r, label_col));
        raw.push_back(table.rows[r][label_col]);
    }

    std::vector<std::string> names;
    std::unordered_map<std::string, int> index;
    bool all_integer = true;
    std::map<long long, std::string> numeric;
    for (const auto& cell : raw) {
        long long v = 0;
        if (!parse_integer(cell, v)) {
            all_integer = false;
            break;
        }
        numeric.emplace(v, std::to_string(v));
    }
    std::vector<int> labels;
    labels.reserve(raw.size());
    if (all_integer) {
        std::map<long long, int> to_label;
        for (const auto& [value, name] : numeric) {
            to_label.emplace(value, static_cast<int>(names.size()));
            names.push_back(name);
        }
        for (const auto& cell : raw) {
            long long v = 0;
            parse_integer(cell, v);
            labels.push_back(to_label.at(v));
        }
    } else {
        for (const auto& cell : raw) {
            auto [it, inserted] = index.emplace(cell, static_cast<int>(names.size()));
            if (inserted) names.push_back(cell);
            labels.push_back(it->second);
        }
    }
    return LabeledDataset(std::move(x), std::move(labels), std::move(names));
}

LabeledDataset load_csv(const std::filesystem::path& path, bool has_header, long label_column) {
    return dataset_from_table(read_csv_table(path, has_header), label_column);
}

void save_csv(const LabeledDataset& data, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path.string() + "'");
    char buf[64];
    const Matrix& x = data.features();
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", x(i, j));
            out << buf << ',';
        }
        out << data.class_names()[static_cast<std::size_t>(data.labels()[static_cast<std::size_t>(i)])] << '\n';
    }
    out.flush();
    if (!out) throw Error(ErrorKind::IoError, "failed writing '" + path.string() + "'");
}

LabeledDataset generate_d1(std::uint64_t seed) {
    return sample_gaussian_pair(seed, d1_mean2(), d1_var2(), kD1Offset, 1000, 2000);
}

LabeledDataset generate_d2(std::uint64_t seed) {
    return sample_gaussian_pair(seed, d2_mean2(), d2_var2(), kD2Offset, 2000, 4000);
}

BinaryStats d1_population() { return population(d1_mean2(), d1_var2(), kD1Offset, 1000, 2000); }
BinaryStats d2_population() { return population(d2_mean2(), d2_var2(), kD2Offset, 2000, 4000); }

void CvPlan::validate() const {
    if (folds < 2) throw Error(ErrorKind::InvalidArgument, "folds must be at least 2");
    if (trials < 1) throw Error(ErrorKind::InvalidArgument, "trials must be positive");
}

std::vector<std::vector<Fold>> kfold_split(const std::vector<int>& labels, int num_classes,
                                           const CvPlan& plan) {
    plan.validate();
    const std::size_t n = labels.size();
    const auto k = static_cast<std::size_t>(plan.folds);
    if (n < k)
        throw Error(ErrorKind::InvalidArgument,
                    std::to_string(n) + " samples cannot fill " + std::to_string(k) + " folds");

    std::vector<std::vector<std::size_t>> by_class(plan.stratified ? static_cast<std::size_t>(num_classes) : 1);
    for (std::size_t i = 0; i < n; ++i)
        by_class[plan.stratified ? static_cast<std::size_t>(labels[i]) : 0].push_back(i);
    if (plan.stratified) {
        for (std::size_t c = 0; c < by_class.size(); ++c) {
            if (!by_class[c].empty() && by_class[c].size() < k)
                throw Error(ErrorKind::InfeasibleStratification,
                            "class " + std::to_string(c) + " has " + std::to_string(by_class[c].size()) +
                                " samples, fewer than " + std::to_string(k) + " folds");
        }
    }

    std::vector<std::vector<Fold>> out;
    out.reserve(static_cast<std::size_t>(plan.trials));
    for (int trial = 0; trial < plan.trials; ++trial) {
        Rng rng(plan.seed + static_cast<std::uint64_t>(trial));
        std::vector<std::size_t> fold_of(n);
        std::size_t position = 0;
        for (auto members : by_class) {
            for (std::size_t i = members.size(); i > 1; --i) {
                std::swap(members[i - 1], members[rng.below(i)]);
            }
            for (std::size_t idx : members) fold_of[idx] = position++ % k;
        }
        std::vector<Fold> folds(k);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t f = 0; f < k; ++f) {
                (f == fold_of[i] ? folds[f].test : folds[f].train).push_back(i);
            }
        }
        out.push_back(std::move(folds));
    }
    return out;
}

std::vector<std::vector<Fold>> kfold_split(const LabeledDataset& data, const CvPlan& plan) {
    return kfold_split(data.labels(), data.num_classes(), plan);
}

Standardizer Standardizer::fit(const Matrix& features) {
    Standardizer s;
    s.mean = features.colwise().mean().transpose();
    const Matrix centered = features.rowwise() - s.mean.transpose();
    s.scale.resize(features.cols());
    for (Eigen::Index j = 0; j < features.cols(); ++j) {
        const double sd = std::sqrt(centered.col(j).squaredNorm() / static_cast<double>(features.rows()));
        s.scale[j] = sd > 0.0 ? 1.0 / sd : 1.0;
    }
    return s;
}

Matrix Standardizer::apply(const Matrix& features) const {
    return (features.rowwise() - mean.transpose()) * scale.asDiagonal();
}

std::string file_fingerprint(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "'");
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    char buf[4096];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            hash ^= static_cast<unsigned char>(buf[i]);
            hash *= 0x100000001b3ULL;
        }
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016" PRIx64, hash);
    return hex;
}

}  // namespace hetlda
