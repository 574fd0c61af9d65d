#include "stn/data_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

namespace stn {

static_assert(std::endian::native == std::endian::little,
              "model serialization assumes a little-endian host");

namespace {

struct ParsedRow {
    std::vector<long> labels;
    std::vector<std::pair<Index, double>> features;  // 0-based index, value
};

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what)
{
    std::ostringstream msg;
    msg << "line " << line_no << ": " << what;
    throw DataError(msg.str());
}

long parse_long(const std::string& tok, std::size_t line_no)
{
    std::size_t pos = 0;
    long value = 0;
    try {
        value = std::stol(tok, &pos);
    } catch (const std::exception&) {
        parse_fail(line_no, "expected an integer, got '" + tok + "'");
    }
    if (pos != tok.size()) parse_fail(line_no, "trailing characters in '" + tok + "'");
    return value;
}

double parse_double(const std::string& tok, std::size_t line_no)
{
    std::size_t pos = 0;
    double value = 0;
    try {
        value = std::stod(tok, &pos);
    } catch (const std::exception&) {
        parse_fail(line_no, "expected a number, got '" + tok + "'");
    }
    if (pos != tok.size()) parse_fail(line_no, "trailing characters in '" + tok + "'");
    if (!std::isfinite(value)) parse_fail(line_no, "non-finite value '" + tok + "'");
    return value;
}

}  // namespace

LabeledDataset parse_libsvm_multilabel(std::istream& in)
{
    std::vector<ParsedRow> rows;
    std::map<long, Index> label_ids;
    Index max_feature = 0;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        for (std::string tok; ls >> tok;) tokens.push_back(tok);
        if (tokens.empty()) continue;

        ParsedRow row;
        std::size_t first_feature = 0;
        if (tokens[0].find(':') == std::string::npos) {
            first_feature = 1;
            std::stringstream labels(tokens[0]);
            std::string piece;
            while (std::getline(labels, piece, ','))
                if (!piece.empty()) row.labels.push_back(parse_long(piece, line_no));
        }
        for (std::size_t t = first_feature; t < tokens.size(); ++t) {
            const auto colon = tokens[t].find(':');
            if (colon == std::string::npos)
                parse_fail(line_no, "expected index:value, got '" + tokens[t] + "'");
            const long idx = parse_long(tokens[t].substr(0, colon), line_no);
            if (idx <= 0) parse_fail(line_no, "feature indices are 1-based and positive");
            const double value = parse_double(tokens[t].substr(colon + 1), line_no);
            row.features.emplace_back(static_cast<Index>(idx - 1), value);
            max_feature = std::max(max_feature, static_cast<Index>(idx));
        }
        for (long lbl : row.labels) label_ids.emplace(lbl, 0);
        rows.push_back(std::move(row));
    }

    LabeledDataset ds;
    Index next = 0;
    for (auto& [lbl, id] : label_ids) {
        id = next++;
        ds.label_names.push_back(std::to_string(lbl));
    }

    const Index n = static_cast<Index>(rows.size());
    const Index k = static_cast<Index>(label_ids.size());
    ds.features = Matrix::Zero(n, max_feature);
    ds.labels = Matrix::Constant(n, k, -1.0);
    for (Index i = 0; i < n; ++i) {
        for (const auto& [j, v] : rows[i].features) ds.features(i, j) = v;
        for (long lbl : rows[i].labels) ds.labels(i, label_ids.at(lbl)) = 1.0;
    }
    return ds;
}

LabeledDataset load_libsvm_files(const std::vector<std::string>& paths)
{
    // Parse the concatenated streams so the label set and feature count are
    // shared across files.
    std::stringstream merged;
    for (const auto& path : paths) {
        std::ifstream in(path);
        if (!in) throw DataError("cannot open dataset file: " + path);
        merged << in.rdbuf();
        merged << '\n';
    }
    return parse_libsvm_multilabel(merged);
}

void write_libsvm_multilabel(std::ostream& out, const LabeledDataset& ds)
{
    char buf[64];
    for (Index i = 0; i < ds.sample_count(); ++i) {
        bool first = true;
        for (Index j = 0; j < ds.label_count(); ++j) {
            if (ds.labels(i, j) > 0) {
                if (!first) out << ',';
                out << ds.label_names[static_cast<std::size_t>(j)];
                first = false;
            }
        }
        for (Index j = 0; j < ds.feature_count(); ++j) {
            if (ds.features(i, j) != 0.0) {
                std::snprintf(buf, sizeof(buf), "%.17g", ds.features(i, j));
                out << ' ' << (j + 1) << ':' << buf;
            }
        }
        out << '\n';
    }
}

std::pair<ProblemInstance, SyntheticTruth>
generate_synthetic(Index n, Index h, Index k, Index rank_star, double support_frac,
                   double sigma_w, std::uint64_t seed)
{
    if (n < 1 || h < 1 || k < 1) throw DataError("synthetic dimensions must be positive");
    if (rank_star < 0 || rank_star > std::min(h, k))
        throw DataError("rank_star must lie in [0, min(h, k)]");
    if (!(support_frac > 0.0 && support_frac <= 1.0))
        throw DataError("support_frac must lie in (0, 1]");
    if (!(sigma_w >= 0.0)) throw DataError("sigma_w must be nonnegative");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    Matrix gx(n, h);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < h; ++j) gx(i, j) = gauss(rng);

    Matrix a(h, rank_star), b(k, rank_star);
    for (Index i = 0; i < h; ++i)
        for (Index j = 0; j < rank_star; ++j) a(i, j) = gauss(rng);
    for (Index i = 0; i < k; ++i)
        for (Index j = 0; j < rank_star; ++j) b(i, j) = gauss(rng);
    Matrix theta_star = a * b.transpose();
    if (rank_star == 0) theta_star = Matrix::Zero(h, k);

    // Keep exactly ceil(support_frac * h * k) entries so the realized
    // support fraction never exceeds support_frac by more than 1/(h k).
    const Index total = h * k;
    const Index keep = static_cast<Index>(
        std::ceil(support_frac * static_cast<double>(total)));
    if (keep < total) {
        std::vector<Index> order(static_cast<std::size_t>(total));
        std::iota(order.begin(), order.end(), Index{0});
        std::shuffle(order.begin(), order.end(), rng);
        for (Index t = keep; t < total; ++t)
            theta_star(order[static_cast<std::size_t>(t)] / k,
                       order[static_cast<std::size_t>(t)] % k) = 0.0;
    }

    SyntheticTruth truth;
    truth.theta_star = theta_star;
    truth.f_true = gx * theta_star;
    truth.sigma_w = sigma_w;
    truth.rank_star = rank_star;
    truth.support_frac = support_frac;

    Matrix y = truth.f_true;
    if (sigma_w > 0.0) {
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < k; ++j) y(i, j) += sigma_w * gauss(rng);
    }
    return {ProblemInstance(std::move(gx), std::move(y)), std::move(truth)};
}

std::pair<LabeledDataset, LabeledDataset>
split_train_test(const LabeledDataset& ds, double train_frac, std::uint64_t seed)
{
    if (!(train_frac > 0.0 && train_frac < 1.0))
        throw DataError("train_frac must lie strictly between 0 and 1");
    const Index n = ds.sample_count();
    const Index n_train = static_cast<Index>(
        std::ceil(static_cast<double>(n) * train_frac));
    if (n_train < 1 || n_train >= n)
        throw DataError("split is degenerate: one side would be empty");

    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);

    auto take = [&](Index begin, Index count) {
        LabeledDataset part;
        part.label_names = ds.label_names;
        part.features.resize(count, ds.feature_count());
        part.labels.resize(count, ds.label_count());
        for (Index i = 0; i < count; ++i) {
            part.features.row(i) = ds.features.row(order[static_cast<std::size_t>(begin + i)]);
            part.labels.row(i) = ds.labels.row(order[static_cast<std::size_t>(begin + i)]);
        }
        return part;
    };
    return {take(0, n_train), take(n_train, n - n_train)};
}

namespace {

constexpr char kMagic[4] = {'S', 'T', 'N', 'M'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void write_raw(std::ostream& out, const T& value)
{
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_raw(std::istream& in)
{
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) throw DataError("model file is truncated");
    return value;
}

}  // namespace

void save_model(std::ostream& out, const Matrix& theta, const RegPair& reg)
{
    out.write(kMagic, sizeof(kMagic));
    write_raw(out, kVersion);
    write_raw(out, static_cast<std::uint32_t>(theta.rows()));
    write_raw(out, static_cast<std::uint32_t>(theta.cols()));
    write_raw(out, reg.alpha);
    write_raw(out, reg.beta);
    for (Index i = 0; i < theta.rows(); ++i)
        for (Index j = 0; j < theta.cols(); ++j) write_raw(out, theta(i, j));
    if (!out) throw DataError("failed to write model stream");
}

Model load_model(std::istream& in)
{
    char magic[4] = {};
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw DataError("bad model file: expected magic 'STNM'");
    const auto version = read_raw<std::uint32_t>(in);
    if (version != kVersion)
        throw DataError("unsupported model version " + std::to_string(version));
    const auto h = read_raw<std::uint32_t>(in);
    const auto k = read_raw<std::uint32_t>(in);

    Model model;
    model.reg.alpha = read_raw<double>(in);
    model.reg.beta = read_raw<double>(in);
    model.theta.resize(static_cast<Index>(h), static_cast<Index>(k));
    for (Index i = 0; i < model.theta.rows(); ++i)
        for (Index j = 0; j < model.theta.cols(); ++j)
            model.theta(i, j) = read_raw<double>(in);
    return model;
}

void save_model_file(const std::string& path, const Matrix& theta, const RegPair& reg)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open model file for writing: " + path);
    save_model(out, theta, reg);
}

Model load_model_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open model file: " + path);
    return load_model(in);
}

void write_matrix_csv(std::ostream& out, const Matrix& m)
{
    char buf[64];
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
            out << (j == 0 ? "" : ",") << buf;
        }
        out << '\n';
    }
}

Matrix read_matrix_csv(std::istream& in)
{
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(parse_double(cell, line_no));
        if (!rows.empty() && row.size() != rows.front().size())
            parse_fail(line_no, "ragged CSV row");
        rows.push_back(std::move(row));
    }
    Matrix m(static_cast<Index>(rows.size()),
             rows.empty() ? 0 : static_cast<Index>(rows.front().size()));
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j)
            m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return m;
}

void write_trace_csv(std::ostream& out, const std::vector<TracePoint>& trace)
{
    out << "iter,objective,seconds\n";
    char buf[96];
    for (const auto& pt : trace) {
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.6f", pt.iter, pt.objective, pt.seconds);
        out << buf << '\n';
    }
}

ColumnScaling compute_column_scaling(const Matrix& features)
{
    ColumnScaling scaling;
    scaling.mean = features.colwise().mean();
    Matrix centered = features.rowwise() - scaling.mean.transpose();
    scaling.stddev = (centered.array().square().colwise().mean()).sqrt();
    for (Index j = 0; j < scaling.stddev.size(); ++j)
        if (scaling.stddev(j) <= 0.0) scaling.stddev(j) = 1.0;
    return scaling;
}

Matrix apply_column_scaling(const Matrix& features, const ColumnScaling& scaling)
{
    if (features.cols() != scaling.mean.size())
        throw DimensionError("scaling has a different feature count");
    return (features.rowwise() - scaling.mean.transpose()).array().rowwise()
           / scaling.stddev.transpose().array();
}

}  // namespace stn
