#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hetlda/discriminant.hpp"

namespace hetlda {

/// Raw comma-separated cells, whitespace-trimmed, one vector per data row.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers;  // 1-based source line of each row

    std::size_t width() const { return rows.empty() ? 0 : rows.front().size(); }
};

CsvTable read_csv_table(const std::filesystem::path& path, bool has_header);

/// Resolves a possibly negative column index (-1 is the last column).
std::size_t resolve_column(long column, std::size_t width);

/**
 * Loads a labelled dataset. Every non-label cell must be a finite real.
 * If all label cells are integers, classes are ordered numerically;
 * otherwise they are numbered in order of first appearance.
 */
LabeledDataset load_csv(const std::filesystem::path& path, bool has_header, long label_column);
LabeledDataset dataset_from_table(const CsvTable& table, long label_column);

/// Parses every cell except `skip_column` (if any) as a finite real.
Matrix features_from_table(const CsvTable& table, std::optional<std::size_t> skip_column);

/// Features, then the class name; 17 significant digits; no header.
void save_csv(const LabeledDataset& data, const std::filesystem::path& path);

// Synthetic two-class Gaussian sets with diagonal covariances. Class C1 is
// label 0, C2 is label 1; C1 rows come first.
LabeledDataset generate_d1(std::uint64_t seed);  // d = 8, 1000 + 2000 samples
LabeledDataset generate_d2(std::uint64_t seed);  // d = 4, 2000 + 4000 samples

/// Generating parameters of D1 / D2 as exact class statistics with the
/// generator's class counts and priors.
BinaryStats d1_population();
BinaryStats d2_population();

struct CvPlan {
    int folds = 10;
    int trials = 20;
    std::uint64_t seed = 0;
    bool stratified = true;

    void validate() const;
};

struct Fold {
    std::vector<std::size_t> train;  // ascending
    std::vector<std::size_t> test;   // ascending
};

/// For each trial, shuffles with seed + trial and deals samples round-robin
/// into `folds` folds (per class, in class order, when stratified).
std::vector<std::vector<Fold>> kfold_split(const std::vector<int>& labels, int num_classes,
                                           const CvPlan& plan);
std::vector<std::vector<Fold>> kfold_split(const LabeledDataset& data, const CvPlan& plan);

struct Standardizer {
    Vector mean;
    Vector scale;  // 1 / std, or 1 for constant columns

    static Standardizer fit(const Matrix& features);
    Matrix apply(const Matrix& features) const;
};

/// FNV-1a 64-bit over the file bytes, as 16 hex digits.
std::string file_fingerprint(const std::filesystem::path& path);

}  // namespace hetlda
