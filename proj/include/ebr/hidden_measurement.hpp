// hidden_measurement.hpp — the indeterministic stage of an EBR measurement
//
// A uniform point of the measurement simplex is drawn (the hidden
// interaction), classified into the sub-region A_i it landed in, and the
// state collapses onto the selected outcome projector.  The batch harness
// verifies the empirical outcome frequencies against the Born
// probabilities.
//
// Region rule: A_i is the convex hull of the vertices with n_i replaced by
// r_par.  Writing q = beta p + sum_{j != i} gamma_j e_j in barycentric
// coordinates forces beta = q_i/p_i and gamma_j = q_j - (q_i/p_i) p_j >= 0,
// so q lies in A_i exactly when i minimizes q_j/p_j.  Vertices with
// p_j = 0 span a zero-measure region and are excluded.

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ebr/measurement_simplex.hpp"
#include "ebr/rng.hpp"

namespace ebr {

struct OutcomeRecord {
    std::uint64_t seed = 0;   // per-sample stream seed; replays this record
    std::uint64_t index = 0;  // sample index within the run
    RVector sampled_bary;     // hidden interaction point, barycentric
    int outcome_index = 0;    // 0-based; serialized 1-based
    RVector probabilities;
    DensityOperator collapsed_state;
};

struct FrequencyReport {
    std::uint64_t n_samples = 0;
    std::vector<std::uint64_t> counts;
    RVector empirical;
    RVector expected;
    double max_sigma_deviation = 0.0; // max_i |f_i - p_i| / sqrt(p_i(1-p_i)/n)
};

// Flat Dirichlet draw: n unit-rate exponentials normalized by their sum.
RVector sample_uniform_simplex(SplitMix64& rng, int n);

// argmin_i q_i/p_i over outcomes with p_i > 0; ties go to the lowest
// index.  Throws AllExcludedError when every p_i is zero.
int classify_region(const RVector& q, const RVector& p);

// Full single-run pipeline: generators -> bloch -> simplex projection ->
// sample -> classify -> collapse.  Deterministic for a fixed seed.
OutcomeRecord run_measurement(const DensityOperator& d, const std::vector<Ket>& outcome_kets,
                              std::uint64_t seed);

struct ExperimentSpec {
    DensityOperator state;
    std::vector<Ket> outcome_kets;
    std::uint64_t n_samples = 1;
    std::uint64_t seed = 0;
    int workers = 1;
};

// Called in sample order when record streaming is requested.
using RecordSink = std::function<void(const OutcomeRecord&)>;

// Sample k always uses stream_seed(seed, k), so the report is identical
// for any worker count; workers only partition the index range.
FrequencyReport run_experiment(const ExperimentSpec& spec, const RecordSink& sink = nullptr);

// Batch stage against a precomputed probability vector (used by the
// effective-measurement path, where the simplex lives in span coordinates).
FrequencyReport run_sampling(const RVector& probabilities, std::uint64_t n_samples,
                             std::uint64_t seed, int workers, const RecordSink& sink = nullptr,
                             const std::vector<DensityOperator>* collapsed_states = nullptr);

} // namespace ebr
