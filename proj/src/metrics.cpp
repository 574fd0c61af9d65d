#include "stn/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "svd_util.hpp"

namespace stn {

namespace {

// Rank-statistic AUC for one label column; ties share average ranks.
double column_auc(const Matrix& scores, const Matrix& labels, Index col)
{
    const Index n = scores.rows();
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::sort(order.begin(), order.end(), [&](Index a, Index b) {
        return scores(a, col) < scores(b, col);
    });

    double rank_sum_pos = 0.0;
    Index n_pos = 0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j < order.size()
               && scores(order[j], col) == scores(order[i], col)) ++j;
        const double avg_rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
        for (std::size_t t = i; t < j; ++t) {
            if (labels(order[t], col) > 0) {
                rank_sum_pos += avg_rank;
                ++n_pos;
            }
        }
        i = j;
    }
    const Index n_neg = n - n_pos;
    const double u = rank_sum_pos
                     - 0.5 * static_cast<double>(n_pos) * static_cast<double>(n_pos + 1);
    return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

struct F1Counts {
    long tp = 0, fp = 0, fn = 0;
};

double f1_from(const F1Counts& c)
{
    const double denom = 2.0 * static_cast<double>(c.tp)
                         + static_cast<double>(c.fp) + static_cast<double>(c.fn);
    return denom > 0.0 ? 2.0 * static_cast<double>(c.tp) / denom : 0.0;
}

F1Counts count_column(const Matrix& pred, const Matrix& labels, Index col)
{
    F1Counts c;
    for (Index i = 0; i < pred.rows(); ++i) {
        const bool ph = pred(i, col) > 0;
        const bool lh = labels(i, col) > 0;
        if (ph && lh) ++c.tp;
        else if (ph && !lh) ++c.fp;
        else if (!ph && lh) ++c.fn;
    }
    return c;
}

}  // namespace

AucResult auc(const Matrix& scores, const Matrix& labels)
{
    detail::require_same_shape(scores, labels, "auc");
    AucResult res;
    double sum = 0.0;
    int valid = 0;
    for (Index col = 0; col < labels.cols(); ++col) {
        const Index n_pos = (labels.col(col).array() > 0).count();
        if (n_pos == 0 || n_pos == labels.rows()) {
            ++res.skipped_labels;
            continue;
        }
        sum += column_auc(scores, labels, col);
        ++valid;
    }
    if (valid == 0) throw DataError("no label column has both classes");
    res.value = 100.0 * sum / static_cast<double>(valid);
    return res;
}

double macro_f1(const Matrix& pred, const Matrix& labels)
{
    detail::require_same_shape(pred, labels, "macro_f1");
    double sum = 0.0;
    for (Index col = 0; col < labels.cols(); ++col)
        sum += f1_from(count_column(pred, labels, col));
    return 100.0 * sum / static_cast<double>(labels.cols());
}

double micro_f1(const Matrix& pred, const Matrix& labels)
{
    detail::require_same_shape(pred, labels, "micro_f1");
    F1Counts pooled;
    for (Index col = 0; col < labels.cols(); ++col) {
        const F1Counts c = count_column(pred, labels, col);
        pooled.tp += c.tp;
        pooled.fp += c.fp;
        pooled.fn += c.fn;
    }
    return 100.0 * f1_from(pooled);
}

Matrix predict_sign(const Matrix& scores)
{
    return scores.unaryExpr([](double v) { return v > 0.0 ? 1.0 : -1.0; });
}

}  // namespace stn
