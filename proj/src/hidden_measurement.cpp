#include "ebr/hidden_measurement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

namespace ebr {

RVector sample_uniform_simplex(SplitMix64& rng, int n) {
    if (n < 2) {
        throw Error("sample_uniform_simplex: need n >= 2");
    }
    RVector q(n);
    double total = 0.0;
    do {
        for (int i = 0; i < n; ++i) {
            q(i) = -std::log(1.0 - rng.next_uniform());
        }
        total = q.sum();
    } while (total <= 0.0);
    return q / total;
}

int classify_region(const RVector& q, const RVector& p) {
    if (q.size() != p.size()) {
        throw DimMismatchError("classify_region: barycentric length mismatch");
    }
    int best = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (p(i) <= 0.0) {
            continue;
        }
        const double ratio = q(i) / p(i);
        if (ratio < best_ratio) {
            best_ratio = ratio;
            best = static_cast<int>(i);
        }
    }
    if (best < 0) {
        throw AllExcludedError("classify_region: every outcome has zero probability");
    }
    return best;
}

OutcomeRecord run_measurement(const DensityOperator& d, const std::vector<Ket>& outcome_kets,
                              std::uint64_t seed) {
    const DensityReport rep = validate_density(d);
    if (!rep.pass) {
        throw ValidationError("run_measurement: input fails density validation (min eigenvalue " +
                              std::to_string(rep.min_eigenvalue) + ")");
    }
    const GeneratorBasis gb = build_generators(outcome_kets);
    const MeasurementSimplex simplex = build_simplex(outcome_kets, gb);
    const BlochVector r = to_bloch(d, gb);
    const OnSimplexState st = project_onto_simplex(r, simplex);

    SplitMix64 rng(seed);
    OutcomeRecord rec{seed,
                      0,
                      sample_uniform_simplex(rng, gb.n_outcomes),
                      0,
                      st.bary,
                      DensityOperator(CMatrix::Identity(1, 1))};
    rec.outcome_index = classify_region(rec.sampled_bary, st.bary);
    rec.collapsed_state = projector(outcome_kets[static_cast<std::size_t>(rec.outcome_index)]);
    return rec;
}

namespace {

void count_range(const RVector& p, std::uint64_t master_seed, std::uint64_t begin,
                 std::uint64_t end, std::vector<std::uint64_t>& counts) {
    const int n = static_cast<int>(p.size());
    for (std::uint64_t k = begin; k < end; ++k) {
        SplitMix64 rng(stream_seed(master_seed, k));
        const RVector q = sample_uniform_simplex(rng, n);
        counts[static_cast<std::size_t>(classify_region(q, p))]++;
    }
}

FrequencyReport finalize_report(const RVector& p, std::uint64_t n_samples,
                                std::vector<std::uint64_t> counts) {
    FrequencyReport rep;
    rep.n_samples = n_samples;
    rep.expected = p;
    rep.empirical.resize(p.size());
    rep.counts = std::move(counts);
    rep.max_sigma_deviation = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        const double f = static_cast<double>(rep.counts[static_cast<std::size_t>(i)]) /
                         static_cast<double>(n_samples);
        rep.empirical(i) = f;
        const double var = p(i) * (1.0 - p(i)) / static_cast<double>(n_samples);
        double sigma = 0.0;
        if (var > 0.0) {
            sigma = std::abs(f - p(i)) / std::sqrt(var);
        } else if (f != p(i)) {
            sigma = std::numeric_limits<double>::infinity();
        }
        rep.max_sigma_deviation = std::max(rep.max_sigma_deviation, sigma);
    }
    return rep;
}

} // namespace

FrequencyReport run_sampling(const RVector& p, std::uint64_t n_samples, std::uint64_t seed,
                             int workers, const RecordSink& sink,
                             const std::vector<DensityOperator>* collapsed_states) {
    if (n_samples < 1) {
        throw ValidationError("run_sampling: n_samples must be >= 1");
    }
    if (workers < 1) {
        throw ValidationError("run_sampling: workers must be >= 1");
    }
    const int n = static_cast<int>(p.size());
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(n), 0);

    if (!sink) {
        const auto nworkers =
            static_cast<std::uint64_t>(std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), n_samples));
        std::vector<std::vector<std::uint64_t>> local(
            nworkers, std::vector<std::uint64_t>(static_cast<std::size_t>(n), 0));
        std::vector<std::thread> pool;
        const std::uint64_t chunk = n_samples / nworkers;
        const std::uint64_t rem = n_samples % nworkers;
        std::uint64_t begin = 0;
        for (std::uint64_t w = 0; w < nworkers; ++w) {
            const std::uint64_t end = begin + chunk + (w < rem ? 1 : 0);
            pool.emplace_back(count_range, std::cref(p), seed, begin, end, std::ref(local[w]));
            begin = end;
        }
        for (auto& t : pool) {
            t.join();
        }
        for (const auto& lc : local) {
            for (int i = 0; i < n; ++i) {
                counts[static_cast<std::size_t>(i)] += lc[static_cast<std::size_t>(i)];
            }
        }
        return finalize_report(p, n_samples, std::move(counts));
    }

    // Record streaming: bounded chunks, computed in sample order so the
    // output bytes do not depend on the worker count.
    constexpr std::uint64_t kChunk = 1 << 14;
    struct Drawn {
        std::uint64_t seed;
        RVector bary;
        int outcome;
    };
    std::vector<Drawn> buf;
    for (std::uint64_t base = 0; base < n_samples; base += kChunk) {
        const std::uint64_t m = std::min<std::uint64_t>(kChunk, n_samples - base);
        buf.assign(static_cast<std::size_t>(m), Drawn{});
        const auto nworkers =
            static_cast<std::uint64_t>(std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), m));
        auto fill = [&](std::uint64_t lo, std::uint64_t hi) {
            for (std::uint64_t j = lo; j < hi; ++j) {
                Drawn& d = buf[static_cast<std::size_t>(j)];
                d.seed = stream_seed(seed, base + j);
                SplitMix64 rng(d.seed);
                d.bary = sample_uniform_simplex(rng, n);
                d.outcome = classify_region(d.bary, p);
            }
        };
        std::vector<std::thread> pool;
        const std::uint64_t chunk = m / nworkers;
        const std::uint64_t rem = m % nworkers;
        std::uint64_t lo = 0;
        for (std::uint64_t w = 0; w < nworkers; ++w) {
            const std::uint64_t hi = lo + chunk + (w < rem ? 1 : 0);
            pool.emplace_back(fill, lo, hi);
            lo = hi;
        }
        for (auto& t : pool) {
            t.join();
        }
        for (std::uint64_t j = 0; j < m; ++j) {
            const Drawn& d = buf[static_cast<std::size_t>(j)];
            counts[static_cast<std::size_t>(d.outcome)]++;
            OutcomeRecord rec{d.seed,
                              base + j,
                              d.bary,
                              d.outcome,
                              p,
                              collapsed_states
                                  ? (*collapsed_states)[static_cast<std::size_t>(d.outcome)]
                                  : DensityOperator(CMatrix::Identity(1, 1))};
            sink(rec);
        }
    }
    return finalize_report(p, n_samples, std::move(counts));
}

FrequencyReport run_experiment(const ExperimentSpec& spec, const RecordSink& sink) {
    const DensityReport rep = validate_density(spec.state);
    if (!rep.pass) {
        throw ValidationError("run_experiment: state fails density validation");
    }
    const GeneratorBasis gb = build_generators(spec.outcome_kets);
    const MeasurementSimplex simplex = build_simplex(spec.outcome_kets, gb);
    const BlochVector r = to_bloch(spec.state, gb);
    const OnSimplexState st = project_onto_simplex(r, simplex);

    std::vector<DensityOperator> collapsed;
    if (sink) {
        collapsed.reserve(spec.outcome_kets.size());
        for (const Ket& k : spec.outcome_kets) {
            collapsed.push_back(projector(k));
        }
    }
    return run_sampling(st.bary, spec.n_samples, spec.seed, spec.workers, sink,
                        sink ? &collapsed : nullptr);
}

} // namespace ebr
