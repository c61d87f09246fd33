// ebr — command-line harness for the extended Bloch representation toolkit
//
// Subcommands: generators, measure, verify, volumes, effective, frame.
// Exit codes: 0 success, 1 validation failure, 2 property failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ebr/bloch_map.hpp"
#include "ebr/effective_measurement.hpp"
#include "ebr/hidden_measurement.hpp"
#include "ebr/json_io.hpp"
#include "ebr/measurement_simplex.hpp"
#include "ebr/random_states.hpp"
#include "ebr/standard_frame.hpp"
#include "ebr/volumetrics.hpp"

namespace {

using ebr::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitProperty = 2;

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ebr::ValidationError("cannot open file: " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        const std::size_t upto = std::min(e.byte, text.size());
        const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n');
        throw ebr::ValidationError(what + ": parse error at line " + std::to_string(line) + ": " +
                                   e.what());
    }
}

void write_output(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') {
            std::cout << '\n';
        }
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw ebr::ValidationError("cannot write file: " + out_path);
    }
    out << content;
}

std::vector<ebr::Ket> standard_basis(Eigen::Index dim, int n) {
    std::vector<ebr::Ket> kets;
    for (int i = 0; i < n; ++i) {
        kets.emplace_back(ebr::CVector::Unit(dim, i));
    }
    return kets;
}

// ---------------------------------------------------------------- generators

int cmd_generators(int n, Eigen::Index ambient, const std::string& format,
                   const std::string& out_path) {
    if (ambient == 0) {
        ambient = n;
    }
    const ebr::GeneratorBasis gb = ebr::build_generators(standard_basis(ambient, n));
    const ebr::RMatrix gram = ebr::generator_gram(gb);
    const auto m = static_cast<Eigen::Index>(gb.generators.size());
    const double gram_defect =
        (gram - 2.0 * ebr::RMatrix::Identity(m, m)).cwiseAbs().maxCoeff();
    const bool pass = gram_defect <= 1e-10;

    std::string content;
    if (format == "json") {
        // matrices go out in the {dim, entries} operator schema
        json gens = json::array();
        for (const ebr::CMatrix& g : gb.generators) {
            gens.push_back(ebr::density_to_json(ebr::DensityOperator(g)));
        }
        content = json{{"n", n},
                       {"ambient_dim", ambient},
                       {"generator_order", ebr::kGeneratorOrderTag},
                       {"gram_defect", gram_defect},
                       {"pass", pass},
                       {"generators", std::move(gens)}}
                      .dump(2);
    } else {
        std::ostringstream ss;
        ss << "generators n=" << n << " ambient_dim=" << ambient << " order="
           << ebr::kGeneratorOrderTag << "\n";
        for (std::size_t g = 0; g < gb.generators.size(); ++g) {
            ss << "Lambda_" << (g + 1) << " =\n";
            for (Eigen::Index i = 0; i < ambient; ++i) {
                ss << "  ";
                for (Eigen::Index j = 0; j < ambient; ++j) {
                    const ebr::Complex z = gb.generators[g](i, j);
                    char buf[64];
                    std::snprintf(buf, sizeof(buf), "(%+.6f%+.6fi) ", z.real(), z.imag());
                    ss << buf;
                }
                ss << "\n";
            }
        }
        ss << "gram_defect = " << format_double(gram_defect) << (pass ? "  [pass]" : "  [FAIL]")
           << "\n";
        content = ss.str();
    }
    write_output(content, out_path);
    return pass ? kExitOk : kExitProperty;
}

// ------------------------------------------------------------------- measure

struct StateSpec {
    std::optional<ebr::Ket> ket;
    std::optional<ebr::DensityOperator> density;
    json echo; // resolved state description

    Eigen::Index dim() const { return ket ? ket->dim() : density->dim(); }
    ebr::DensityOperator as_density() const { return ket ? ebr::projector(*ket) : *density; }
};

StateSpec resolve_state(const json& state_json) {
    StateSpec s;
    s.echo = state_json;
    if (state_json.contains("preset")) {
        const std::string preset = state_json["preset"].get<std::string>();
        if (preset == "qubit-theta") {
            if (!state_json.contains("theta")) {
                throw ebr::ValidationError("state: preset qubit-theta requires \"theta\"");
            }
            const double theta = state_json["theta"].get<double>();
            s.ket = ebr::ket_from_amplitudes(
                {ebr::Complex(std::cos(theta / 2), 0), ebr::Complex(std::sin(theta / 2), 0)});
        } else if (preset == "uniform") {
            if (!state_json.contains("n")) {
                throw ebr::ValidationError("state: preset uniform requires \"n\"");
            }
            const auto n = state_json["n"].get<Eigen::Index>();
            if (n < 2) {
                throw ebr::ValidationError("state: preset uniform needs n >= 2");
            }
            s.ket = ebr::Ket(ebr::CVector::Constant(n, ebr::Complex(1.0 / std::sqrt(n), 0)));
        } else {
            throw ebr::ValidationError("state: unknown preset \"" + preset +
                                       "\" (expected qubit-theta or uniform)");
        }
    } else if (state_json.contains("amplitudes")) {
        s.ket = ebr::ket_from_json(state_json);
    } else if (state_json.contains("entries")) {
        s.density = ebr::density_from_json(state_json);
    } else {
        throw ebr::ValidationError(
            "state: expected a ket ({dim, amplitudes}), a density ({dim, entries}) or a preset");
    }
    return s;
}

struct GridSpec {
    ebr::PositionGrid grid;
    std::vector<double> edges;
    ebr::Ket psi;
    ebr::PartitionProjectors parts;
};

GridSpec resolve_grid(const json& grid_json) {
    for (const char* key : {"grid", "edges", "wavefunction"}) {
        if (!grid_json.contains(key)) {
            throw ebr::ValidationError(std::string("grid spec: missing field \"") + key + "\"");
        }
    }
    const json& g = grid_json["grid"];
    for (const char* key : {"x_min", "x_max", "n_points"}) {
        if (!g.contains(key)) {
            throw ebr::ValidationError(std::string("grid spec: grid.") + key + " missing");
        }
    }
    ebr::PositionGrid grid{g["x_min"].get<double>(), g["x_max"].get<double>(),
                           g["n_points"].get<Eigen::Index>()};
    std::vector<double> edges = grid_json["edges"].get<std::vector<double>>();

    const json& wf = grid_json["wavefunction"];
    std::vector<ebr::Complex> samples;
    if (wf.contains("samples")) {
        for (const json& e : wf["samples"]) {
            samples.emplace_back(e[0].get<double>(), e[1].get<double>());
        }
    } else if (wf.contains("preset")) {
        const std::string preset = wf["preset"].get<std::string>();
        const double dx = (grid.x_max - grid.x_min) / static_cast<double>(grid.n_points);
        for (Eigen::Index j = 0; j < grid.n_points; ++j) {
            const double x = grid.x_min + (static_cast<double>(j) + 0.5) * dx;
            if (preset == "gaussian") {
                const double center = wf.value("center", 0.0);
                const double sigma = wf.value("sigma", 1.0);
                samples.emplace_back(std::exp(-0.25 * (x - center) * (x - center) / (sigma * sigma)),
                                     0.0);
            } else if (preset == "uniform") {
                samples.emplace_back(1.0, 0.0);
            } else {
                throw ebr::ValidationError("grid spec: unknown wavefunction preset \"" + preset +
                                           "\"");
            }
        }
    } else {
        throw ebr::ValidationError("grid spec: wavefunction needs \"samples\" or \"preset\"");
    }
    auto [psi, parts] = ebr::discretize_position(grid, samples, edges);
    return GridSpec{grid, std::move(edges), std::move(psi), std::move(parts)};
}

struct MeasureOptions {
    json state;
    json basis;     // array of kets, optional
    json partition; // {"ambient_dim":..., "index_sets": ...}, optional
    json grid;      // {"grid":..., "edges":..., "wavefunction":...}, optional
    std::uint64_t samples = 100000;
    std::optional<std::uint64_t> seed;
    int workers = 1;
    std::string records_path;
    bool no_states = false;
    std::string format = "json";
    std::string out_path;
};

// flags > config file > defaults
void merge_config_file(MeasureOptions& opt, const json& cfg, const CLI::App& app) {
    const auto unset = [&](const char* flag) { return app.count(flag) == 0; };
    if (cfg.contains("state") && opt.state.is_null()) {
        opt.state = cfg["state"];
    }
    if (cfg.contains("basis") && opt.basis.is_null()) {
        opt.basis = cfg["basis"];
    }
    if (cfg.contains("partition") && opt.partition.is_null()) {
        opt.partition = cfg["partition"];
    }
    if (cfg.contains("grid") && opt.grid.is_null()) {
        opt.grid = cfg["grid"];
    }
    if (cfg.contains("samples") && unset("--samples")) {
        opt.samples = cfg["samples"].get<std::uint64_t>();
    }
    if (cfg.contains("seed") && unset("--seed")) {
        opt.seed = cfg["seed"].get<std::uint64_t>();
    }
    if (cfg.contains("workers") && unset("--workers")) {
        opt.workers = cfg["workers"].get<int>();
    }
    if (cfg.contains("records") && unset("--records")) {
        opt.records_path = cfg["records"].get<std::string>();
    }
    if (cfg.contains("no_states") && unset("--no-states")) {
        opt.no_states = cfg["no_states"].get<bool>();
    }
    if (cfg.contains("format") && unset("--format")) {
        opt.format = cfg["format"].get<std::string>();
    }
}

int cmd_measure(MeasureOptions opt) {
    if (opt.state.is_null()) {
        throw ebr::ValidationError("measure: no state given (use --preset/--state-json/"
                                   "--state-file or a config file)");
    }
    if (opt.samples < 1) {
        throw ebr::ValidationError("measure: --samples must be >= 1");
    }
    if (opt.workers < 1) {
        throw ebr::ValidationError("measure: --workers must be >= 1");
    }
    const int kinds = int(!opt.basis.is_null()) + int(!opt.partition.is_null()) +
                      int(!opt.grid.is_null());
    if (kinds > 1) {
        throw ebr::ValidationError("measure: give at most one of basis/partition/grid");
    }

    // a missing seed is drawn once and recorded, never silent
    if (!opt.seed) {
        std::random_device rd;
        opt.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }

    json resolved{{"command", "measure"},
                  {"samples", opt.samples},
                  {"seed", *opt.seed},
                  {"workers", opt.workers},
                  {"no_states", opt.no_states},
                  {"rng", ebr::kRngAlgorithm},
                  {"generator_order", ebr::kGeneratorOrderTag}};

    ebr::RVector probabilities;
    std::vector<ebr::DensityOperator> collapsed;
    std::vector<int> outcome_map; // surviving index -> reported outcome id
    int n_report_outcomes = 0;

    if (!opt.grid.is_null()) {
        GridSpec gs = resolve_grid(opt.grid);
        const ebr::EffectiveMeasurement em = ebr::build_effective_measurement(gs.psi, gs.parts);
        probabilities = em.probabilities;
        outcome_map = em.outcome_ids;
        n_report_outcomes = em.n_blocks_total;
        for (std::size_t i = 0; i < em.outcome_kets.size(); ++i) {
            collapsed.push_back(ebr::projector(
                ebr::Ket(ebr::CVector::Unit(static_cast<Eigen::Index>(em.outcome_kets.size()),
                                            static_cast<Eigen::Index>(i)))));
        }
        resolved["measurement"] = json{{"kind", "grid"}, {"spec", opt.grid}};
        resolved["state"] = json{{"kind", "grid-wavefunction"}};
    } else if (!opt.partition.is_null()) {
        const StateSpec st = resolve_state(opt.state);
        if (!st.ket) {
            throw ebr::ValidationError("measure: partition measurements need a pure state (ket)");
        }
        const ebr::PartitionProjectors parts = ebr::partition_from_json(opt.partition);
        const ebr::EffectiveMeasurement em = ebr::build_effective_measurement(*st.ket, parts);
        probabilities = em.probabilities;
        outcome_map = em.outcome_ids;
        n_report_outcomes = em.n_blocks_total;
        for (std::size_t i = 0; i < em.outcome_kets.size(); ++i) {
            collapsed.push_back(ebr::projector(
                ebr::Ket(ebr::CVector::Unit(static_cast<Eigen::Index>(em.outcome_kets.size()),
                                            static_cast<Eigen::Index>(i)))));
        }
        resolved["measurement"] = json{{"kind", "partition"}, {"spec", opt.partition}};
        resolved["state"] = st.echo;
    } else {
        const StateSpec st = resolve_state(opt.state);
        std::vector<ebr::Ket> basis;
        if (!opt.basis.is_null()) {
            if (!opt.basis.is_array() || opt.basis.size() < 2) {
                throw ebr::ValidationError("measure: basis must be an array of >= 2 kets");
            }
            for (const json& kj : opt.basis) {
                basis.push_back(ebr::ket_from_json(kj));
            }
            resolved["measurement"] = json{{"kind", "basis"}, {"spec", opt.basis}};
        } else {
            basis = standard_basis(st.dim(), static_cast<int>(st.dim()));
            resolved["measurement"] = json{{"kind", "basis"}, {"spec", "standard"}};
        }
        resolved["state"] = st.echo;

        const ebr::DensityOperator d = st.as_density();
        const ebr::DensityReport vrep = ebr::validate_density(d);
        if (!vrep.pass) {
            throw ebr::ValidationError("measure: state fails density validation");
        }
        const ebr::GeneratorBasis gb = ebr::build_generators(basis);
        const ebr::MeasurementSimplex simplex = ebr::build_simplex(basis, gb);
        const ebr::OnSimplexState on = ebr::project_onto_simplex(ebr::to_bloch(d, gb), simplex);
        probabilities = on.bary;
        n_report_outcomes = static_cast<int>(basis.size());
        for (int i = 0; i < n_report_outcomes; ++i) {
            outcome_map.push_back(i);
            collapsed.push_back(ebr::projector(basis[static_cast<std::size_t>(i)]));
        }
    }

    const std::string hash = ebr::config_hash_hex(resolved);

    std::ofstream records;
    ebr::RecordSink sink = nullptr;
    if (!opt.records_path.empty()) {
        records.open(opt.records_path, std::ios::binary);
        if (!records) {
            throw ebr::ValidationError("measure: cannot write records file " + opt.records_path);
        }
        sink = [&](const ebr::OutcomeRecord& rec) {
            ebr::OutcomeRecord mapped = rec;
            mapped.outcome_index = outcome_map[static_cast<std::size_t>(rec.outcome_index)];
            records << ebr::outcome_record_to_json(mapped, !opt.no_states, hash) << "\n";
        };
    }

    const ebr::FrequencyReport raw =
        ebr::run_sampling(probabilities, opt.samples, *opt.seed, opt.workers, sink,
                          sink ? &collapsed : nullptr);

    // widen to the full outcome list (dropped branches stay exactly zero)
    ebr::FrequencyReport rep;
    rep.n_samples = raw.n_samples;
    rep.max_sigma_deviation = raw.max_sigma_deviation;
    rep.counts.assign(static_cast<std::size_t>(n_report_outcomes), 0);
    rep.expected = ebr::RVector::Zero(n_report_outcomes);
    rep.empirical = ebr::RVector::Zero(n_report_outcomes);
    for (Eigen::Index i = 0; i < raw.expected.size(); ++i) {
        const auto at = static_cast<std::size_t>(outcome_map[static_cast<std::size_t>(i)]);
        rep.counts[at] = raw.counts[static_cast<std::size_t>(i)];
        rep.expected(static_cast<Eigen::Index>(at)) = raw.expected(i);
        rep.empirical(static_cast<Eigen::Index>(at)) = raw.empirical(i);
    }

    const std::string content = (opt.format == "csv")
                                    ? ebr::frequency_report_to_csv(rep, hash)
                                    : ebr::frequency_report_to_json(rep, resolved, hash).dump(2);
    write_output(content, opt.out_path);
    return rep.max_sigma_deviation < 5.0 ? kExitOk : kExitProperty;
}

// -------------------------------------------------------------------- verify

struct PropertyResult {
    std::string name;
    bool pass = false;
    double max_defect = 0.0;
    double tolerance = 0.0;
};

PropertyResult check_generator_gram(int n_max, int trials, ebr::SplitMix64& rng) {
    PropertyResult res{"generator-gram", true, 0.0, 1e-10};
    for (int n = 2; n <= n_max; ++n) {
        for (int t = 0; t < std::max(1, trials / 10); ++t) {
            const Eigen::Index ambient =
                n + static_cast<Eigen::Index>(rng.next_u64() % (65 - n));
            const ebr::GeneratorBasis gb =
                ebr::build_generators(ebr::random_orthonormal_kets(rng, ambient, n));
            const ebr::RMatrix gram = ebr::generator_gram(gb);
            const auto m = static_cast<Eigen::Index>(gb.generators.size());
            res.max_defect = std::max(
                res.max_defect,
                (gram - 2.0 * ebr::RMatrix::Identity(m, m)).cwiseAbs().maxCoeff());
        }
    }
    res.pass = res.max_defect <= res.tolerance;
    return res;
}

PropertyResult check_born_equivalence(int n_max, int trials, ebr::SplitMix64& rng,
                                      double perturb) {
    PropertyResult res{"born-equivalence", true, 0.0, 1e-12};
    for (int n = 2; n <= n_max; ++n) {
        const auto basis = standard_basis(n, n);
        const ebr::GeneratorBasis gb = ebr::build_generators(basis);
        const ebr::MeasurementSimplex simplex = ebr::build_simplex(basis, gb);
        for (int t = 0; t < trials; ++t) {
            const ebr::DensityOperator d = (t % 2 == 0)
                                               ? ebr::projector(ebr::random_ket(rng, n))
                                               : ebr::random_density(rng, n, n);
            ebr::RVector p = ebr::transition_probabilities(ebr::to_bloch(d, gb), simplex);
            p(0) += perturb; // nonzero only under the --perturb test hook
            for (int i = 0; i < n; ++i) {
                res.max_defect = std::max(
                    res.max_defect,
                    std::abs(p(i) - ebr::trace_product(
                                        d, ebr::projector(basis[static_cast<std::size_t>(i)]))));
            }
        }
    }
    res.pass = res.max_defect <= res.tolerance;
    return res;
}

PropertyResult check_bloch_round_trip(int n_max, int trials, ebr::SplitMix64& rng) {
    PropertyResult res{"bloch-round-trip", true, 0.0, 1e-10};
    for (int n = 2; n <= n_max; ++n) {
        const ebr::GeneratorBasis gb = ebr::build_generators(standard_basis(n, n));
        for (int t = 0; t < trials; ++t) {
            const ebr::DensityOperator d = ebr::random_density(rng, n, n);
            const ebr::BlochVector r = ebr::to_bloch(d, gb);
            res.max_defect =
                std::max(res.max_defect,
                         (ebr::from_bloch(r, gb).entries() - d.entries()).cwiseAbs().maxCoeff());
            const double purity = ebr::trace_product(d, d);
            res.max_defect = std::max(
                res.max_defect,
                std::abs(purity - (1.0 + (n - 1) * r.coords.squaredNorm()) / n));
        }
    }
    res.pass = res.max_defect <= res.tolerance;
    return res;
}

PropertyResult check_cayley_menger(int n_max, int trials, ebr::SplitMix64& rng) {
    PropertyResult res{"cayley-menger-ratio", true, 0.0, 1e-9};
    for (int n = 2; n <= std::min(n_max, 5); ++n) {
        const auto basis = standard_basis(n, n);
        const ebr::GeneratorBasis gb = ebr::build_generators(basis);
        const ebr::MeasurementSimplex simplex = ebr::build_simplex(basis, gb);
        std::vector<ebr::RVector> verts;
        for (const ebr::BlochVector& v : simplex.vertices) {
            verts.push_back(v.coords);
        }
        const double total = ebr::cayley_menger_volume(verts);
        for (int t = 0; t < std::max(1, trials / 5); ++t) {
            const ebr::RVector p = ebr::random_interior_barycentric(rng, n);
            ebr::RVector r_par = ebr::RVector::Zero(verts[0].size());
            for (int i = 0; i < n; ++i) {
                r_par += p(i) * verts[static_cast<std::size_t>(i)];
            }
            for (int i = 0; i < n; ++i) {
                std::vector<ebr::RVector> sub = verts;
                sub[static_cast<std::size_t>(i)] = r_par;
                res.max_defect = std::max(
                    res.max_defect, std::abs(ebr::cayley_menger_volume(sub) / total - p(i)));
            }
        }
    }
    res.pass = res.max_defect <= res.tolerance;
    return res;
}

PropertyResult check_standard_frame(int n_max, int trials, ebr::SplitMix64& rng) {
    PropertyResult res{"standard-frame-equivalence", true, 0.0, 1e-12};
    for (int n = 2; n <= n_max; ++n) {
        const auto basis = standard_basis(n, n);
        const ebr::GeneratorBasis gb = ebr::build_generators(basis);
        const ebr::MeasurementSimplex simplex = ebr::build_simplex(basis, gb);
        const ebr::StandardFrame f = ebr::build_standard_frame(n);
        for (int t = 0; t < std::max(1, trials / 5); ++t) {
            const ebr::DensityOperator d = ebr::random_density(rng, n, n);
            const ebr::RVector p =
                ebr::transition_probabilities(ebr::to_bloch(d, gb), simplex);
            const ebr::RVector s_tilde = ebr::to_standard_state(p, f);
            for (int i = 0; i < n; ++i) {
                res.max_defect = std::max(
                    res.max_defect,
                    std::abs(ebr::standard_transition_probability(s_tilde, f.m_tilde_col(i)) -
                             p(i)));
            }
        }
    }
    res.pass = res.max_defect <= res.tolerance;
    return res;
}

PropertyResult check_effective_born(int n_max, int trials, ebr::SplitMix64& rng) {
    PropertyResult res{"effective-born", true, 0.0, 1e-12};
    for (int t = 0; t < std::max(1, trials / 10); ++t) {
        const Eigen::Index dim = 16 + static_cast<Eigen::Index>(rng.next_u64() % 49);
        const int n =
            2 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(n_max - 1));
        const ebr::CMatrix u = ebr::random_unitary(rng, dim);
        std::vector<ebr::CMatrix> bases;
        Eigen::Index col = 0;
        for (int b = 0; b < n; ++b) {
            Eigen::Index take = (b == n - 1) ? dim - col
                                             : 1 + static_cast<Eigen::Index>(
                                                       rng.next_u64() %
                                                       static_cast<std::uint64_t>(
                                                           dim - col - (n - 1 - b)));
            bases.push_back(u.middleCols(col, take));
            col += take;
        }
        const ebr::PartitionProjectors parts = ebr::PartitionProjectors::from_bases(bases);
        const ebr::Ket psi = ebr::random_ket(rng, dim);
        const ebr::EffectiveMeasurement em = ebr::build_effective_measurement(psi, parts);
        const ebr::RVector all = em.probabilities_all();
        for (int i = 0; i < n; ++i) {
            res.max_defect = std::max(
                res.max_defect,
                std::abs(all(i) - ebr::trace_product(ebr::projector(psi).entries(),
                                                     parts.dense(i))));
        }
        res.max_defect = std::max(res.max_defect, em.reconstruction_defect);
    }
    res.pass = res.max_defect <= res.tolerance;
    return res;
}

PropertyResult check_rotation(int trials, ebr::SplitMix64& rng) {
    PropertyResult res{"rotation-closed-form", true, 0.0, 1e-12};
    const ebr::Ket psi = ebr::ket_from_amplitudes({ebr::Complex(0.8, 0), ebr::Complex(0.6, 0)});
    const ebr::EffectiveMeasurement em = ebr::build_effective_measurement(
        psi, ebr::PartitionProjectors::from_index_sets(2, {{0}, {1}}));
    for (int t = 0; t < trials; ++t) {
        const ebr::CMatrix u = ebr::random_unitary(rng, 2);
        const auto rotated = ebr::rotate_outcome_basis(u, em);
        // middle sign fixed by Lambda_2 = -i(|1><2| - |2><1|)
        const ebr::Complex w = u(0, 0) * std::conj(u(0, 1));
        ebr::RVector expect(3);
        expect << 2 * w.real(), -2 * w.imag(), std::norm(u(0, 0)) - std::norm(u(0, 1));
        res.max_defect =
            std::max(res.max_defect, (rotated[0].coords - expect).cwiseAbs().maxCoeff());
    }
    res.pass = res.max_defect <= res.tolerance;
    return res;
}

PropertyResult check_volumetrics() {
    PropertyResult res{"volumetrics", true, 0.0, 1e-12};
    const double pi = 3.14159265358979323846;
    const double expected[] = {2.0, pi, 4 * pi / 3, pi * pi / 2, 8 * pi * pi / 15,
                               pi * pi * pi / 6};
    for (int m = 1; m <= 6; ++m) {
        res.max_defect = std::max(
            res.max_defect, std::abs(ebr::ball_volume(m, 1.0) / expected[m - 1] - 1.0));
    }
    res.pass = res.max_defect <= res.tolerance && ebr::unit_ball_argmax() == 5 &&
               std::abs(ebr::ball_volume(100, 1.0) / ebr::ball_volume_asymptotic(100, 1.0) -
                        1.0) < 0.01;
    return res;
}

int cmd_verify(int n_max, int trials, std::uint64_t seed, double perturb,
               const std::string& out_path) {
    if (n_max < 2 || n_max > 8) {
        throw ebr::ValidationError("verify: --n-max must be in 2..8");
    }
    if (trials < 1) {
        throw ebr::ValidationError("verify: --trials must be >= 1");
    }
    ebr::SplitMix64 rng(seed);
    std::vector<PropertyResult> results;
    results.push_back(check_generator_gram(n_max, trials, rng));
    results.push_back(check_born_equivalence(n_max, trials, rng, perturb));
    results.push_back(check_bloch_round_trip(n_max, trials, rng));
    results.push_back(check_cayley_menger(n_max, trials, rng));
    results.push_back(check_standard_frame(n_max, trials, rng));
    results.push_back(check_effective_born(n_max, trials, rng));
    results.push_back(check_rotation(trials, rng));
    results.push_back(check_volumetrics());

    bool all_pass = true;
    json props = json::array();
    for (const PropertyResult& r : results) {
        all_pass = all_pass && r.pass;
        props.push_back(json{{"name", r.name},
                             {"pass", r.pass},
                             {"max_defect", r.max_defect},
                             {"tolerance", r.tolerance}});
    }
    const json verdict{{"command", "verify"}, {"n_max", n_max},     {"trials", trials},
                       {"seed", seed},        {"perturb", perturb}, {"all_pass", all_pass},
                       {"properties", props}};
    write_output(verdict.dump(2), out_path);
    return all_pass ? kExitOk : kExitProperty;
}

// ------------------------------------------------------------------- volumes

int cmd_volumes(int m_max, const std::string& out_path) {
    if (m_max < 1) {
        throw ebr::ValidationError("volumes: --m-max must be >= 1");
    }
    const int argmax = ebr::unit_ball_argmax();
    std::string csv = "M,exact,asymptotic,ratio,argmax\n";
    for (int m = 1; m <= m_max; ++m) {
        const double exact = ebr::ball_volume(m, 1.0);
        csv += std::to_string(m) + "," + format_double(exact) + ",";
        if (m % 2 == 0) {
            const double asym = ebr::ball_volume_asymptotic(m, 1.0);
            csv += format_double(asym);
            csv += ",";
            csv += format_double(std::exp(ebr::log_ball_volume(m, 1.0) -
                                          ebr::log_ball_volume_asymptotic(m, 1.0)));
        } else {
            csv += ",";
        }
        csv += ",";
        csv += (m == argmax) ? "1" : "0";
        csv += "\n";
    }
    write_output(csv, out_path);
    return kExitOk;
}

// ----------------------------------------------------------------- effective

int cmd_effective(const json& state_json, const json& partition_json, const json& grid_json,
                  const std::string& format, const std::string& out_path) {
    std::optional<ebr::EffectiveMeasurement> em;
    ebr::RVector trace_probs;
    json resolved{{"command", "effective"}};

    if (!grid_json.is_null()) {
        GridSpec gs = resolve_grid(grid_json);
        em = ebr::build_effective_measurement(gs.psi, gs.parts);
        resolved["measurement"] = json{{"kind", "grid"}, {"spec", grid_json}};
        // direct route: |P_i psi|^2 summed from the amplitudes
        trace_probs = ebr::RVector::Zero(gs.parts.n_blocks());
        for (int b = 0; b < gs.parts.n_blocks(); ++b) {
            trace_probs(b) = gs.parts.apply(b, gs.psi.amplitudes()).squaredNorm();
        }
    } else if (!partition_json.is_null()) {
        if (state_json.is_null()) {
            throw ebr::ValidationError("effective: a partition measurement needs a state");
        }
        const StateSpec st = resolve_state(state_json);
        if (!st.ket) {
            throw ebr::ValidationError("effective: state must be a ket");
        }
        const ebr::PartitionProjectors parts = ebr::partition_from_json(partition_json);
        em = ebr::build_effective_measurement(*st.ket, parts);
        resolved["measurement"] = json{{"kind", "partition"}, {"spec", partition_json}};
        resolved["state"] = st.echo;
        trace_probs = ebr::RVector::Zero(parts.n_blocks());
        for (int b = 0; b < parts.n_blocks(); ++b) {
            trace_probs(b) = parts.apply(b, st.ket->amplitudes()).squaredNorm();
        }
    } else {
        throw ebr::ValidationError("effective: give --partition-json/--partition-file or "
                                   "--grid-json/--grid-file");
    }

    const ebr::RVector simplex_probs = em->probabilities_all();
    const double born_defect = (simplex_probs - trace_probs).cwiseAbs().maxCoeff();
    const bool pass = born_defect <= 1e-12 && em->reconstruction_defect <= 1e-10;

    json weights = json::array(), probs = json::array(), direct = json::array();
    for (Eigen::Index i = 0; i < em->weights.size(); ++i) {
        weights.push_back(em->weights(i));
    }
    for (Eigen::Index i = 0; i < simplex_probs.size(); ++i) {
        probs.push_back(simplex_probs(i));
        direct.push_back(trace_probs(i));
    }
    const json out{{"n_blocks", em->n_blocks_total},
                   {"surviving_outcomes", em->outcome_ids},
                   {"weights", weights},
                   {"probabilities", probs},
                   {"trace_probabilities", direct},
                   {"born_defect", born_defect},
                   {"reconstruction_defect", em->reconstruction_defect},
                   {"generator_order", ebr::kGeneratorOrderTag},
                   {"pass", pass},
                   {"config", resolved}};

    std::string content;
    if (format == "csv") {
        content = "outcome,weight,probability,trace_probability\n";
        for (Eigen::Index i = 0; i < simplex_probs.size(); ++i) {
            const auto it =
                std::find(em->outcome_ids.begin(), em->outcome_ids.end(), static_cast<int>(i));
            const double w =
                (it == em->outcome_ids.end())
                    ? 0.0
                    : em->weights(static_cast<Eigen::Index>(it - em->outcome_ids.begin()));
            content += std::to_string(i + 1) + "," + format_double(w) + "," +
                       format_double(simplex_probs(i)) + "," + format_double(trace_probs(i)) +
                       "\n";
        }
    } else {
        content = out.dump(2);
    }
    write_output(content, out_path);
    return pass ? kExitOk : kExitProperty;
}

// --------------------------------------------------------------------- frame

int cmd_frame(int n, const std::string& bary_csv, const std::string& out_path) {
    const ebr::StandardFrame f = ebr::build_standard_frame(n);
    ebr::RVector bary = ebr::RVector::Constant(n, 1.0 / n);
    if (!bary_csv.empty()) {
        std::vector<double> vals;
        std::stringstream ss(bary_csv);
        std::string item;
        while (std::getline(ss, item, ',')) {
            vals.push_back(std::stod(item));
        }
        if (static_cast<int>(vals.size()) != n) {
            throw ebr::ValidationError("frame: --bary must list exactly n weights");
        }
        bary = Eigen::Map<ebr::RVector>(vals.data(), n);
        if (bary.minCoeff() < 0.0 || std::abs(bary.sum() - 1.0) > 1e-9) {
            throw ebr::ValidationError("frame: --bary must be nonnegative and sum to 1");
        }
        bary /= bary.sum();
    }

    const ebr::RVector s_tilde = ebr::to_standard_state(bary, f);
    ebr::RVector r_par = ebr::RVector::Zero(n);
    for (int i = 0; i < n; ++i) {
        r_par += bary(i) * ebr::frame_vertex(f, i);
    }

    double max_defect = std::abs(f.center_tilde.norm() - 1.0 / std::sqrt(n));
    json probs = json::array();
    for (int i = 0; i < n; ++i) {
        const double frame_p = ebr::standard_transition_probability(s_tilde, f.m_tilde_col(i));
        const double bloch_p = (1.0 + (n - 1) * r_par.dot(ebr::frame_vertex(f, i))) / n;
        probs.push_back(frame_p);
        max_defect = std::max({max_defect, std::abs(frame_p - bloch_p),
                               std::abs(frame_p - bary(i))});
    }
    const bool pass = max_defect <= 1e-12;
    json bary_json = json::array();
    for (int i = 0; i < n; ++i) {
        bary_json.push_back(bary(i));
    }
    const json out{{"command", "frame"},
                   {"n", n},
                   {"bary", bary_json},
                   {"probabilities", probs},
                   {"r_tilde_norm", f.center_tilde.norm()},
                   {"vertex_convergence_defect", ebr::vertex_convergence_defect(n)},
                   {"max_defect", max_defect},
                   {"pass", pass}};
    write_output(out.dump(2), out_path);
    return pass ? kExitOk : kExitProperty;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"extended Bloch representation toolkit"};
    app.require_subcommand(1);

    // generators
    auto* gen = app.add_subcommand("generators", "build the SU(N) generator set and check its Gram");
    int gen_n = 2;
    Eigen::Index gen_ambient = 0;
    std::string gen_format = "text", gen_out;
    gen->add_option("--n", gen_n, "number of outcomes")->required()->check(CLI::Range(2, 64));
    gen->add_option("--ambient", gen_ambient, "ambient Hilbert dimension (default n)");
    gen->add_option("--format", gen_format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    gen->add_option("--out", gen_out, "output path (default stdout)");

    // measure
    auto* meas = app.add_subcommand("measure", "run a sampled hidden-measurement experiment");
    MeasureOptions mopt;
    std::string m_state_json, m_state_file, m_preset, m_basis_json, m_basis_file;
    std::string m_partition_json, m_partition_file, m_grid_json, m_grid_file, m_config_file;
    double m_theta = 0.0;
    Eigen::Index m_preset_n = 0;
    std::uint64_t m_seed = 0;
    meas->add_option("--state-json", m_state_json, "inline state JSON (ket or density)");
    meas->add_option("--state-file", m_state_file, "state JSON file");
    meas->add_option("--preset", m_preset, "state preset: qubit-theta | uniform");
    meas->add_option("--theta", m_theta, "qubit-theta parameter");
    meas->add_option("--n", m_preset_n, "uniform preset dimension");
    meas->add_option("--basis-json", m_basis_json, "inline outcome basis (array of kets)");
    meas->add_option("--basis-file", m_basis_file, "outcome basis JSON file");
    meas->add_option("--partition-json", m_partition_json, "inline partition spec");
    meas->add_option("--partition-file", m_partition_file, "partition spec file");
    meas->add_option("--grid-json", m_grid_json, "inline grid spec");
    meas->add_option("--grid-file", m_grid_file, "grid spec file");
    meas->add_option("--config", m_config_file, "config file (flags take precedence)");
    meas->add_option("--samples", mopt.samples, "number of measurement runs");
    meas->add_option("--seed", m_seed, "master seed (drawn and recorded when omitted)");
    meas->add_option("--workers", mopt.workers, "worker threads");
    meas->add_option("--records", mopt.records_path, "append one JSONL record per run");
    meas->add_flag("--no-states", mopt.no_states, "omit collapsed states from records");
    meas->add_option("--format", mopt.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    meas->add_option("--out", mopt.out_path, "report path (default stdout)");

    // verify
    auto* ver = app.add_subcommand("verify", "run the cross-check property matrix");
    int v_nmax = 8, v_trials = 200;
    std::uint64_t v_seed = 1;
    double v_perturb = 0.0;
    std::string v_out;
    ver->add_option("--n-max", v_nmax, "largest outcome count");
    ver->add_option("--trials", v_trials, "trials per property");
    ver->add_option("--seed", v_seed, "seed");
    ver->add_option("--perturb", v_perturb, "fault-injection offset (test hook)");
    ver->add_option("--out", v_out, "output path (default stdout)");

    // volumes
    auto* vol = app.add_subcommand("volumes", "ball volumes with Stirling asymptotics (CSV)");
    int vol_mmax = 20;
    std::string vol_out;
    vol->add_option("--m-max", vol_mmax, "largest dimension")->required();
    vol->add_option("--out", vol_out, "output path (default stdout)");

    // effective
    auto* eff = app.add_subcommand("effective", "build an effective (degenerate) measurement");
    std::string e_state_json, e_state_file, e_partition_json, e_partition_file, e_grid_json,
        e_grid_file, e_format = "json", e_out;
    eff->add_option("--state-json", e_state_json, "inline state JSON (ket)");
    eff->add_option("--state-file", e_state_file, "state JSON file");
    eff->add_option("--partition-json", e_partition_json, "inline partition spec");
    eff->add_option("--partition-file", e_partition_file, "partition spec file");
    eff->add_option("--grid-json", e_grid_json, "inline grid spec");
    eff->add_option("--grid-file", e_grid_file, "grid spec file");
    eff->add_option("--format", e_format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    eff->add_option("--out", e_out, "output path (default stdout)");

    // frame
    auto* frm = app.add_subcommand("frame", "dimension-free standard-frame representation");
    int f_n = 2;
    std::string f_bary, f_out;
    frm->add_option("--n", f_n, "number of outcomes")->required()->check(CLI::Range(2, 1024));
    frm->add_option("--bary", f_bary, "comma-separated barycentric weights");
    frm->add_option("--out", f_out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (gen->parsed()) {
            return cmd_generators(gen_n, gen_ambient, gen_format, gen_out);
        }
        if (meas->parsed()) {
            auto inline_or_file = [&](const std::string& inline_text, const std::string& file,
                                      const char* what) -> json {
                if (!inline_text.empty() && !file.empty()) {
                    throw ebr::ValidationError(std::string("measure: give ") + what +
                                               " inline or as a file, not both");
                }
                if (!inline_text.empty()) {
                    return parse_json(inline_text, what);
                }
                if (!file.empty()) {
                    return parse_json(read_file(file), file);
                }
                return json();
            };
            mopt.state = inline_or_file(m_state_json, m_state_file, "state");
            if (!m_preset.empty()) {
                if (!mopt.state.is_null()) {
                    throw ebr::ValidationError("measure: --preset conflicts with --state-json/"
                                               "--state-file");
                }
                mopt.state = json{{"preset", m_preset}};
                if (meas->count("--theta") > 0) {
                    mopt.state["theta"] = m_theta;
                }
                if (meas->count("--n") > 0) {
                    mopt.state["n"] = m_preset_n;
                }
            }
            mopt.basis = inline_or_file(m_basis_json, m_basis_file, "basis");
            mopt.partition = inline_or_file(m_partition_json, m_partition_file, "partition");
            mopt.grid = inline_or_file(m_grid_json, m_grid_file, "grid");
            if (meas->count("--seed") > 0) {
                mopt.seed = m_seed;
            }
            if (!m_config_file.empty()) {
                merge_config_file(mopt, parse_json(read_file(m_config_file), m_config_file),
                                  *meas);
            }
            return cmd_measure(std::move(mopt));
        }
        if (ver->parsed()) {
            return cmd_verify(v_nmax, v_trials, v_seed, v_perturb, v_out);
        }
        if (vol->parsed()) {
            return cmd_volumes(vol_mmax, vol_out);
        }
        if (eff->parsed()) {
            auto load = [&](const std::string& inline_text, const std::string& file,
                            const char* what) -> json {
                if (!inline_text.empty()) {
                    return parse_json(inline_text, what);
                }
                if (!file.empty()) {
                    return parse_json(read_file(file), file);
                }
                return json();
            };
            return cmd_effective(load(e_state_json, e_state_file, "state"),
                                 load(e_partition_json, e_partition_file, "partition"),
                                 load(e_grid_json, e_grid_file, "grid"), e_format, e_out);
        }
        if (frm->parsed()) {
            return cmd_frame(f_n, f_bary, f_out);
        }
    } catch (const ebr::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ebr::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}
