#pragma once

#include "stn/types.hpp"

namespace stn {

struct AucResult {
    double value = 0.0;       // [0, 100], averaged over scoreable labels
    int skipped_labels = 0;   // columns without both classes
};

// Per-label ROC AUC from the rank statistic (ties get half credit),
// macro-averaged over labels that have at least one positive and one
// negative, scaled to [0, 100]. Throws if no label is scoreable.
AucResult auc(const Matrix& scores, const Matrix& labels);

// F1 scores over +-1 predictions, scaled to [0, 100]. Macro averages the
// per-label F1 (0 when precision + recall is 0); micro pools the counts.
double macro_f1(const Matrix& pred, const Matrix& labels);
double micro_f1(const Matrix& pred, const Matrix& labels);

// sign(score) with sign(0) = -1.
Matrix predict_sign(const Matrix& scores);

}  // namespace stn
