#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "stn/types.hpp"

namespace stn {

// Multi-label classification data with +-1 label encoding. Rows with no
// listed labels are kept as all -1.
struct LabeledDataset {
    Matrix features;  // n x d
    Matrix labels;    // n x k, entries in {-1, +1}
    std::vector<std::string> label_names;

    Index sample_count() const { return features.rows(); }
    Index feature_count() const { return features.cols(); }
    Index label_count() const { return labels.cols(); }
};

// Reads lines of the form `lbl1,lbl2,... idx:val idx:val ...` with 1-based
// feature indices and integer labels. Missing indices become zeros; the
// label set is the sorted union of all labels seen. Tolerates CRLF and a
// missing label field (the line then starts at a feature token).
LabeledDataset parse_libsvm_multilabel(std::istream& in);
LabeledDataset load_libsvm_files(const std::vector<std::string>& paths);

// Inverse of the parser up to zero-entry omission; feature values are
// written with 17 significant digits so a round trip reproduces the
// matrices exactly.
void write_libsvm_multilabel(std::ostream& out, const LabeledDataset& ds);

// Planted sparse low-rank ground truth for synthetic instances.
struct SyntheticTruth {
    Matrix theta_star;   // h x k
    Matrix f_true;       // n x k noiseless responses gx theta_star
    double sigma_w = 0.0;
    Index rank_star = 0;
    double support_frac = 1.0;
};

// gx has i.i.d. standard normal entries; theta_star is a rank-rank_star
// product masked down to ceil(support_frac * h * k) surviving entries;
// y = gx theta_star + noise. Deterministic in seed.
std::pair<ProblemInstance, SyntheticTruth>
generate_synthetic(Index n, Index h, Index k, Index rank_star, double support_frac,
                   double sigma_w, std::uint64_t seed);

// Uniform random row partition with ceil(n * train_frac) training rows.
std::pair<LabeledDataset, LabeledDataset>
split_train_test(const LabeledDataset& ds, double train_frac, std::uint64_t seed);

struct Model {
    CoefficientMatrix theta;
    RegPair reg;
};

// Binary model format, little-endian: magic "STNM", u32 version, u32 h,
// u32 k, f64 alpha, f64 beta, then h*k f64 coefficients in row-major
// order. Round trips are bit-exact.
void save_model(std::ostream& out, const Matrix& theta, const RegPair& reg);
Model load_model(std::istream& in);
void save_model_file(const std::string& path, const Matrix& theta, const RegPair& reg);
Model load_model_file(const std::string& path);

// CSV with 17 significant digits per entry, one row per line.
void write_matrix_csv(std::ostream& out, const Matrix& m);
Matrix read_matrix_csv(std::istream& in);

// Convergence trace CSV with header `iter,objective,seconds`.
void write_trace_csv(std::ostream& out, const std::vector<TracePoint>& trace);

// Per-column z-scoring; constant columns keep scale 1.
struct ColumnScaling {
    Vector mean;
    Vector stddev;
};
ColumnScaling compute_column_scaling(const Matrix& features);
Matrix apply_column_scaling(const Matrix& features, const ColumnScaling& scaling);

}  // namespace stn
