#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "coclust/matrix.hpp"

namespace coclust::fcc {

// Fuzzy co-clustering of an N x K document-term matrix into C co-clusters.
//
// Memberships satisfy Ruspini constraints: document memberships U (C x N)
// are column-stochastic, word memberships V (C x K) are row-stochastic.
// Each sweep solves the constrained first-order conditions of the objective
//
//   J(U, V) = sum_c sum_i sum_j u_ci * v_cj * d_ij
//           + T * sum_c sum_i sum_j ((u_ci + v_cj) - u_ci * v_cj)^2
//
// in closed form, eliminating the Lagrange multipliers into per-document
// (A1, B1) and per-cluster (A2, B2) shift terms, so unclipped updates sum
// to one by construction. Negative entries are clipped and the row/column
// renormalized.

struct FccStfConfig {
    std::size_t cluster_count = 2;  // C
    double tu = 1.0;                // document fuzziness, > 0
    double tv = 1.0;                // word fuzziness, > 0
    double epsilon = 1e-6;          // convergence threshold on max |dU|
    std::size_t max_iters = 100;
    std::uint64_t seed = 1;
    double denom_guard = 1e-12;     // singularity guard for update denominators
};

void validate_config(const FccStfConfig& config);

// C x N, columns sum to 1.
using DocMemberships = Matrix;
// C x K, rows sum to 1.
using WordMemberships = Matrix;

struct TraceRecord {
    std::size_t iteration = 0;         // 1-based, strictly increasing
    double objective = 0.0;            // J after this iteration's sweeps
    double max_delta_u = 0.0;          // max |u_ci(t+1) - u_ci(t)|
    std::vector<double> word_snapshot;  // row-major C x K copy of V
};

struct IterationTrace {
    std::size_t clusters = 0;
    std::size_t words = 0;
    std::vector<TraceRecord> records;
};

struct CoClusterResult {
    DocMemberships doc_memberships;
    WordMemberships word_memberships;
    IterationTrace trace;
    bool converged = false;
    std::size_t iterations_run = 0;
    bool clipped_in_final_iteration = false;
};

// Per-iteration view handed to an observer; matrices refer to live state
// and must not be retained beyond the call.
struct IterationView {
    std::size_t iteration;
    const DocMemberships& doc_memberships;
    const WordMemberships& word_memberships;
    double objective;
    double max_delta_u;
    bool clipped_words;
    bool clipped_docs;
};

using IterationObserver = std::function<void(const IterationView&)>;

// Uniform (0,1) draws from a seeded mt19937_64, then each column normalized
// to sum 1. Identical (clusters, docs, seed) give bit-identical matrices.
DocMemberships init_memberships(std::size_t clusters, std::size_t docs, std::uint64_t seed);

struct UpdateTerms {
    double a = 0.0;
    double b = 0.0;
};

// Lagrange-eliminated shift terms for document `doc`: A1 depends on the
// document, B1 only on V. Throws DegenerateCluster if any cluster's
// denominator 2*tu*(K - 2*sum_j v_cj + sum_j v_cj^2) is below `guard`.
UpdateTerms compute_doc_update_terms(std::size_t doc, const WordMemberships& v,
                                     const Matrix& d, double tu, double guard = 1e-12);

// Shift terms for cluster `cluster`; the denominator is
// 2*tv*(N - 2*sum_i u_ci + sum_i u_ci^2).
UpdateTerms compute_word_update_terms(std::size_t cluster, const DocMemberships& u,
                                      const Matrix& d, double tv, double guard = 1e-12);

struct UpdateResult {
    Matrix memberships;
    bool clipped = false;
};

// One full document-membership sweep; each column clip-renormalized when it
// contains a negative entry. C == 1 collapses to all-ones exactly.
UpdateResult update_doc_memberships(const WordMemberships& v, const Matrix& d, double tu,
                                    double guard = 1e-12);

// One full word-membership sweep; rows clip-renormalized when negative.
// K == 1 collapses to all-ones exactly. With a single cluster the
// denominator above is identically zero (u == 1 for every document), so the
// sweep falls back to the one-cluster form 2*tv*(1 - 2*sum u + sum u^2).
UpdateResult update_word_memberships(const DocMemberships& u, const Matrix& d, double tv,
                                     double guard = 1e-12);

// Negative entries set to 0, then the vector is divided by its sum.
// Throws AllClipped when no positive entry remains.
std::vector<double> clip_renormalize(std::vector<double> row);
void clip_renormalize_inplace(std::span<double> row);

// The two-term objective above. The Lagrange constraint terms vanish
// whenever the Ruspini sums hold, so they are not evaluated.
double objective(const DocMemberships& u, const WordMemberships& v, const Matrix& d,
                 double t);

// Alternating sweeps: update V, then U, until max |dU| < epsilon or
// max_iters is reached. J is recorded with t = tu. Deterministic per
// (config, d): identical inputs give bit-identical results.
CoClusterResult run_fcc_stf(const FccStfConfig& config, const Matrix& d,
                            const IterationObserver& observer = {});

// CSV with header `iteration,J,max_delta_u,v_0_0,...`; values printed with
// nine fractional digits.
std::string export_trace(const CoClusterResult& result);

}  // namespace coclust::fcc
