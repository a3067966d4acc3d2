#include "coclust/coclustering.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <utility>

#include "coclust/errors.hpp"
#include "coclust/kernels.hpp"

namespace coclust::fcc {

namespace {

// 53-bit draw strictly inside (0,1); avoids zero columns and zero products.
double uniform_open(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

void check_dims(const Matrix& d) {
    if (d.rows() == 0 || d.cols() == 0) {
        throw InvalidArgument("correlation matrix must be non-empty");
    }
}

struct DocUpdateContext {
    std::vector<double> den;   // per cluster: 2*tu*(K - 2*sum v + sum v^2)
    std::vector<double> base;  // per cluster: 2*tu*(sum v^2 - 1)
    double b1 = 0.0;
};

DocUpdateContext make_doc_context(const WordMemberships& v, double tu, double guard) {
    const std::size_t clusters = v.rows();
    const double words = static_cast<double>(v.cols());
    DocUpdateContext ctx;
    ctx.den.resize(clusters);
    ctx.base.resize(clusters);
    for (std::size_t c = 0; c < clusters; ++c) {
        double sum_v = kernels::sum(v.row(c));
        double sum_v2 = kernels::sum_sq(v.row(c));
        ctx.base[c] = 2.0 * tu * (sum_v2 - 1.0);
        ctx.den[c] = 2.0 * tu * (words - 2.0 * sum_v + sum_v2);
        if (std::fabs(ctx.den[c]) < guard) {
            throw DegenerateCluster(c, "document update denominator below guard");
        }
    }
    for (std::size_t c = 0; c < clusters; ++c) ctx.b1 += 1.0 / ctx.den[c];
    return ctx;
}

struct WordRowContext {
    double den = 0.0;             // 2*tv*(N - 2*sum u + sum u^2)
    double base = 0.0;            // 2*tv*(sum u^2 - sum u)
    std::vector<double> weighted;  // t_j = sum_i u_ci * d_ij
};

WordRowContext make_word_row_context(const DocMemberships& u, const Matrix& d,
                                     std::size_t cluster, double tv, double guard,
                                     bool single_cluster_fallback) {
    const std::size_t docs = u.cols();
    WordRowContext ctx;
    double sum_u = kernels::sum(u.row(cluster));
    double sum_u2 = kernels::sum_sq(u.row(cluster));
    ctx.base = 2.0 * tv * (sum_u2 - sum_u);
    ctx.den = 2.0 * tv * (static_cast<double>(docs) - 2.0 * sum_u + sum_u2);
    if (std::fabs(ctx.den) < guard && single_cluster_fallback) {
        // One cluster owns every document outright; use the one-cluster form.
        ctx.den = 2.0 * tv * (1.0 - 2.0 * sum_u + sum_u2);
    }
    if (std::fabs(ctx.den) < guard) {
        throw DegenerateCluster(cluster, "word update denominator below guard");
    }
    ctx.weighted.assign(d.cols(), 0.0);
    for (std::size_t i = 0; i < docs; ++i) {
        kernels::axpy(u(cluster, i), d.row(i), ctx.weighted);
    }
    return ctx;
}

bool clip_column_if_negative(Matrix& m, std::size_t col) {
    const std::size_t rows = m.rows();
    bool negative = false;
    for (std::size_t r = 0; r < rows; ++r) {
        if (m(r, col) < 0.0) {
            negative = true;
            break;
        }
    }
    if (!negative) return false;
    double total = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
        if (m(r, col) < 0.0) m(r, col) = 0.0;
        total += m(r, col);
    }
    if (total <= 0.0) throw AllClipped();
    for (std::size_t r = 0; r < rows; ++r) m(r, col) /= total;
    return true;
}

bool clip_row_if_negative(Matrix& m, std::size_t row) {
    auto r = m.row(row);
    for (double v : r) {
        if (v < 0.0) {
            clip_renormalize_inplace(r);
            return true;
        }
    }
    return false;
}

void check_finite(const Matrix& m, std::size_t iteration, const char* what) {
    for (double v : m.flat()) {
        if (!std::isfinite(v)) {
            throw NonFinite(std::string(what) + " became non-finite at iteration " +
                            std::to_string(iteration));
        }
    }
}

void append_fixed9(std::string& out, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", value);
    out += buf;
}

}  // namespace

void validate_config(const FccStfConfig& config) {
    if (config.cluster_count < 1) throw InvalidArgument("cluster_count must be >= 1");
    if (!(config.tu > 0.0)) throw InvalidArgument("tu must be > 0");
    if (!(config.tv > 0.0)) throw InvalidArgument("tv must be > 0");
    if (!(config.epsilon > 0.0)) throw InvalidArgument("epsilon must be > 0");
    if (config.max_iters < 1) throw InvalidArgument("max_iters must be >= 1");
    if (!(config.denom_guard > 0.0)) throw InvalidArgument("denom_guard must be > 0");
}

DocMemberships init_memberships(std::size_t clusters, std::size_t docs, std::uint64_t seed) {
    if (clusters < 1 || docs < 1) {
        throw InvalidArgument("init_memberships requires clusters >= 1 and docs >= 1");
    }
    std::mt19937_64 rng(seed);
    Matrix u(clusters, docs);
    for (std::size_t c = 0; c < clusters; ++c) {
        for (std::size_t i = 0; i < docs; ++i) u(c, i) = uniform_open(rng);
    }
    for (std::size_t i = 0; i < docs; ++i) {
        double total = 0.0;
        for (std::size_t c = 0; c < clusters; ++c) total += u(c, i);
        for (std::size_t c = 0; c < clusters; ++c) u(c, i) /= total;
    }
    return u;
}

UpdateTerms compute_doc_update_terms(std::size_t doc, const WordMemberships& v,
                                     const Matrix& d, double tu, double guard) {
    check_dims(d);
    if (v.cols() != d.cols()) throw DimensionMismatch("V and D disagree on word count");
    if (doc >= d.rows()) throw InvalidArgument("document index out of range");
    DocUpdateContext ctx = make_doc_context(v, tu, guard);
    double a1 = 1.0;
    for (std::size_t c = 0; c < v.rows(); ++c) {
        double num = ctx.base[c] - kernels::dot(v.row(c), d.row(doc));
        a1 -= num / ctx.den[c];
    }
    return {a1, ctx.b1};
}

UpdateTerms compute_word_update_terms(std::size_t cluster, const DocMemberships& u,
                                      const Matrix& d, double tv, double guard) {
    check_dims(d);
    if (u.cols() != d.rows()) throw DimensionMismatch("U and D disagree on document count");
    if (cluster >= u.rows()) throw InvalidArgument("cluster index out of range");
    WordRowContext ctx =
        make_word_row_context(u, d, cluster, tv, guard, /*single_cluster_fallback=*/false);
    const std::size_t words = d.cols();
    double a2 = 1.0;
    for (std::size_t j = 0; j < words; ++j) {
        a2 -= (ctx.base - ctx.weighted[j]) / ctx.den;
    }
    double b2 = static_cast<double>(words) / ctx.den;
    return {a2, b2};
}

UpdateResult update_doc_memberships(const WordMemberships& v, const Matrix& d, double tu,
                                    double guard) {
    check_dims(d);
    if (v.cols() != d.cols()) throw DimensionMismatch("V and D disagree on word count");
    const std::size_t clusters = v.rows();
    const std::size_t docs = d.rows();
    if (clusters == 1) return {Matrix::ones(1, docs), false};

    DocUpdateContext ctx = make_doc_context(v, tu, guard);
    Matrix u(clusters, docs);
    std::vector<double> num(clusters);
    for (std::size_t i = 0; i < docs; ++i) {
        double a1 = 1.0;
        for (std::size_t c = 0; c < clusters; ++c) {
            num[c] = ctx.base[c] - kernels::dot(v.row(c), d.row(i));
            a1 -= num[c] / ctx.den[c];
        }
        double shift = a1 / ctx.b1;
        for (std::size_t c = 0; c < clusters; ++c) u(c, i) = (num[c] + shift) / ctx.den[c];
    }
    bool clipped = false;
    for (std::size_t i = 0; i < docs; ++i) clipped |= clip_column_if_negative(u, i);
    return {std::move(u), clipped};
}

UpdateResult update_word_memberships(const DocMemberships& u, const Matrix& d, double tv,
                                     double guard) {
    check_dims(d);
    if (u.cols() != d.rows()) throw DimensionMismatch("U and D disagree on document count");
    const std::size_t clusters = u.rows();
    const std::size_t words = d.cols();
    if (words == 1) return {Matrix::ones(clusters, 1), false};

    Matrix v(clusters, words);
    for (std::size_t c = 0; c < clusters; ++c) {
        WordRowContext ctx = make_word_row_context(u, d, c, tv, guard,
                                                   /*single_cluster_fallback=*/clusters == 1);
        double a2 = 1.0;
        for (std::size_t j = 0; j < words; ++j) {
            a2 -= (ctx.base - ctx.weighted[j]) / ctx.den;
        }
        double b2 = static_cast<double>(words) / ctx.den;
        double shift = a2 / b2;
        for (std::size_t j = 0; j < words; ++j) {
            v(c, j) = (ctx.base - ctx.weighted[j] + shift) / ctx.den;
        }
    }
    bool clipped = false;
    for (std::size_t c = 0; c < clusters; ++c) clipped |= clip_row_if_negative(v, c);
    return {std::move(v), clipped};
}

void clip_renormalize_inplace(std::span<double> row) {
    for (double& v : row) {
        if (v < 0.0) v = 0.0;
    }
    double total = kernels::sum(row);
    if (total <= 0.0) throw AllClipped();
    kernels::scale(row, 1.0 / total);
}

std::vector<double> clip_renormalize(std::vector<double> row) {
    clip_renormalize_inplace(row);
    return row;
}

double objective(const DocMemberships& u, const WordMemberships& v, const Matrix& d,
                 double t) {
    if (u.rows() != v.rows()) throw DimensionMismatch("U and V disagree on cluster count");
    if (u.cols() != d.rows()) throw DimensionMismatch("U and D disagree on document count");
    if (v.cols() != d.cols()) throw DimensionMismatch("V and D disagree on word count");
    const std::size_t clusters = u.rows();
    const std::size_t docs = d.rows();
    const std::size_t words = d.cols();
    double aggregation = 0.0;
    double fuzzifier = 0.0;
    for (std::size_t c = 0; c < clusters; ++c) {
        for (std::size_t i = 0; i < docs; ++i) {
            const double uc = u(c, i);
            for (std::size_t j = 0; j < words; ++j) {
                const double vc = v(c, j);
                aggregation += uc * vc * d(i, j);
                const double w = (uc + vc) - uc * vc;
                fuzzifier += w * w;
            }
        }
    }
    return aggregation + t * fuzzifier;
}

CoClusterResult run_fcc_stf(const FccStfConfig& config, const Matrix& d,
                            const IterationObserver& observer) {
    validate_config(config);
    check_dims(d);
    for (double v : d.flat()) {
        if (!std::isfinite(v)) throw NonFinite("correlation matrix contains a non-finite entry");
        if (v < 0.0) throw InvalidArgument("correlation matrix contains a negative entry");
    }
    const std::size_t docs = d.rows();
    const std::size_t words = d.cols();
    if (config.cluster_count > docs) {
        throw InvalidArgument("cluster_count must not exceed the number of documents");
    }

    CoClusterResult result;
    result.trace.clusters = config.cluster_count;
    result.trace.words = words;

    DocMemberships u = init_memberships(config.cluster_count, docs, config.seed);
    WordMemberships v;
    for (std::size_t iter = 1; iter <= config.max_iters; ++iter) {
        UpdateResult vstep;
        try {
            vstep = update_word_memberships(u, d, config.tv, config.denom_guard);
            v = std::move(vstep.memberships);
            UpdateResult ustep = update_doc_memberships(v, d, config.tu, config.denom_guard);
            double delta = kernels::max_abs_diff(ustep.memberships.flat(), u.flat());
            u = std::move(ustep.memberships);

            check_finite(u, iter, "document memberships");
            check_finite(v, iter, "word memberships");
            double j = objective(u, v, d, config.tu);
            if (!std::isfinite(j) || !std::isfinite(delta)) {
                throw NonFinite("objective became non-finite at iteration " +
                                std::to_string(iter));
            }

            TraceRecord record;
            record.iteration = iter;
            record.objective = j;
            record.max_delta_u = delta;
            record.word_snapshot = v.values();
            result.trace.records.push_back(std::move(record));
            result.iterations_run = iter;
            result.clipped_in_final_iteration = vstep.clipped || ustep.clipped;

            if (observer) {
                observer(IterationView{iter, u, v, j, delta, vstep.clipped, ustep.clipped});
            }
            if (delta < config.epsilon) {
                result.converged = true;
                break;
            }
        } catch (const DegenerateCluster& e) {
            throw DegenerateCluster(e.cluster(),
                                    "iteration " + std::to_string(iter) + ": " + e.what());
        }
    }
    result.doc_memberships = std::move(u);
    result.word_memberships = std::move(v);
    return result;
}

std::string export_trace(const CoClusterResult& result) {
    const auto& trace = result.trace;
    if (trace.records.empty()) throw InvalidArgument("trace is empty; nothing to export");
    std::string out = "iteration,J,max_delta_u";
    for (std::size_t c = 0; c < trace.clusters; ++c) {
        for (std::size_t j = 0; j < trace.words; ++j) {
            out += ",v_" + std::to_string(c) + "_" + std::to_string(j);
        }
    }
    out += '\n';
    for (const auto& record : trace.records) {
        out += std::to_string(record.iteration);
        out += ',';
        append_fixed9(out, record.objective);
        out += ',';
        append_fixed9(out, record.max_delta_u);
        for (double v : record.word_snapshot) {
            out += ',';
            append_fixed9(out, v);
        }
        out += '\n';
    }
    return out;
}

}  // namespace coclust::fcc
