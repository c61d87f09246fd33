#include "ebr/json_io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>

#include "ebr/rng.hpp"
#include "ebr/su_generators.hpp"

namespace ebr {

namespace {

json complex_to_json(const Complex& z) {
    return json::array({z.real(), z.imag()});
}

Complex complex_from_json(const json& j, const char* where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ValidationError(std::string(where) + ": complex entries must be [re, im] pairs");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

void expect_field(const json& j, const char* key, const char* where) {
    if (!j.contains(key)) {
        throw ValidationError(std::string(where) + ": missing field \"" + key + "\"");
    }
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

json ket_to_json(const Ket& k) {
    json amps = json::array();
    for (Eigen::Index i = 0; i < k.dim(); ++i) {
        amps.push_back(complex_to_json(k.amplitude(i)));
    }
    return json{{"dim", k.dim()}, {"amplitudes", std::move(amps)}};
}

Ket ket_from_json(const json& j) {
    expect_field(j, "dim", "ket");
    expect_field(j, "amplitudes", "ket");
    const auto dim = j["dim"].get<Eigen::Index>();
    const json& amps = j["amplitudes"];
    if (!amps.is_array() || static_cast<Eigen::Index>(amps.size()) != dim) {
        throw ValidationError("ket: \"amplitudes\" length does not match \"dim\"");
    }
    CVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        v(i) = complex_from_json(amps[static_cast<std::size_t>(i)], "ket");
    }
    return ket_from_amplitudes(v);
}

json density_to_json(const DensityOperator& d) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < d.dim(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < d.dim(); ++k) {
            row.push_back(complex_to_json(d.entries()(i, k)));
        }
        rows.push_back(std::move(row));
    }
    return json{{"dim", d.dim()}, {"entries", std::move(rows)}};
}

DensityOperator density_from_json(const json& j) {
    expect_field(j, "dim", "density");
    expect_field(j, "entries", "density");
    const auto dim = j["dim"].get<Eigen::Index>();
    const json& rows = j["entries"];
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != dim) {
        throw ValidationError("density: \"entries\" row count does not match \"dim\"");
    }
    CMatrix m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const json& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) {
            throw ValidationError("density: row " + std::to_string(i) + " has wrong length");
        }
        for (Eigen::Index k = 0; k < dim; ++k) {
            m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)], "density");
        }
    }
    return DensityOperator(std::move(m));
}

json bloch_to_json(const BlochVector& r) {
    json coords = json::array();
    for (Eigen::Index i = 0; i < r.coords.size(); ++i) {
        coords.push_back(r.coords(i));
    }
    return json{{"n", r.n_outcomes}, {"coords", std::move(coords)}};
}

BlochVector bloch_from_json(const json& j) {
    expect_field(j, "n", "bloch");
    expect_field(j, "coords", "bloch");
    BlochVector r;
    r.n_outcomes = j["n"].get<int>();
    const json& coords = j["coords"];
    const auto expected = static_cast<std::size_t>(r.n_outcomes) * r.n_outcomes - 1;
    if (!coords.is_array() || coords.size() != expected) {
        throw ValidationError("bloch: \"coords\" must have length N^2-1 = " +
                              std::to_string(expected));
    }
    r.coords.resize(static_cast<Eigen::Index>(expected));
    for (Eigen::Index i = 0; i < r.coords.size(); ++i) {
        r.coords(i) = coords[static_cast<std::size_t>(i)].get<double>();
    }
    return r;
}

json simplex_to_json(const MeasurementSimplex& s) {
    json verts = json::array();
    for (const BlochVector& v : s.vertices) {
        json coords = json::array();
        for (Eigen::Index i = 0; i < v.coords.size(); ++i) {
            coords.push_back(v.coords(i));
        }
        verts.push_back(std::move(coords));
    }
    return json{{"n", s.n_outcomes}, {"vertices", std::move(verts)}};
}

PartitionProjectors partition_from_json(const json& j) {
    expect_field(j, "ambient_dim", "partition");
    expect_field(j, "index_sets", "partition");
    const auto dim = j["ambient_dim"].get<Eigen::Index>();
    const json& sets = j["index_sets"];
    if (!sets.is_array()) {
        throw ValidationError("partition: \"index_sets\" must be an array of index arrays");
    }
    std::vector<std::vector<Eigen::Index>> parsed;
    for (std::size_t b = 0; b < sets.size(); ++b) {
        if (!sets[b].is_array()) {
            throw ValidationError("partition: index_sets[" + std::to_string(b) +
                                  "] is not an array");
        }
        std::vector<Eigen::Index> block;
        for (const json& e : sets[b]) {
            if (!e.is_number_integer()) {
                throw ValidationError("partition: index_sets[" + std::to_string(b) +
                                      "] contains a non-integer index");
            }
            block.push_back(e.get<Eigen::Index>());
        }
        parsed.push_back(std::move(block));
    }
    return PartitionProjectors::from_index_sets(dim, std::move(parsed));
}

json outcome_record_to_json(const OutcomeRecord& rec, bool include_state,
                            const std::string& config_hash) {
    json bary = json::array();
    for (Eigen::Index i = 0; i < rec.sampled_bary.size(); ++i) {
        bary.push_back(rec.sampled_bary(i));
    }
    json probs = json::array();
    for (Eigen::Index i = 0; i < rec.probabilities.size(); ++i) {
        probs.push_back(rec.probabilities(i));
    }
    json j{{"seed", rec.seed},
           {"index", rec.index},
           {"rng", kRngAlgorithm},
           {"generator_order", kGeneratorOrderTag},
           {"config_hash", config_hash},
           {"sampled_bary", std::move(bary)},
           {"outcome_index", rec.outcome_index + 1},
           {"probabilities", std::move(probs)}};
    if (include_state) {
        j["collapsed_state"] = density_to_json(rec.collapsed_state);
    }
    return j;
}

json frequency_report_to_json(const FrequencyReport& rep, const json& resolved_config,
                              const std::string& config_hash) {
    json expected = json::array();
    json empirical = json::array();
    json counts = json::array();
    for (Eigen::Index i = 0; i < rep.expected.size(); ++i) {
        expected.push_back(rep.expected(i));
        empirical.push_back(rep.empirical(i));
        counts.push_back(rep.counts[static_cast<std::size_t>(i)]);
    }
    return json{{"n_samples", rep.n_samples},
                {"expected", std::move(expected)},
                {"empirical", std::move(empirical)},
                {"counts", std::move(counts)},
                {"max_sigma_deviation", rep.max_sigma_deviation},
                {"rng", kRngAlgorithm},
                {"generator_order", kGeneratorOrderTag},
                {"config_hash", config_hash},
                {"config", resolved_config}};
}

std::string frequency_report_to_csv(const FrequencyReport& rep, const std::string& config_hash) {
    std::string out;
    out += "# config_hash=" + config_hash + " rng=" + kRngAlgorithm +
           " generator_order=" + kGeneratorOrderTag + "\n";
    out += "# n_samples=" + std::to_string(rep.n_samples) +
           " max_sigma_deviation=" + format_double(rep.max_sigma_deviation) + "\n";
    out += "outcome,expected,empirical,sigma\n";
    for (Eigen::Index i = 0; i < rep.expected.size(); ++i) {
        const double p = rep.expected(i);
        const double f = rep.empirical(i);
        const double var = p * (1.0 - p) / static_cast<double>(rep.n_samples);
        const double sigma = var > 0.0 ? std::abs(f - p) / std::sqrt(var) : 0.0;
        out += std::to_string(i + 1) + "," + format_double(p) + "," + format_double(f) + "," +
               format_double(sigma) + "\n";
    }
    return out;
}

std::string config_hash_hex(const json& resolved_config) {
    const std::string dump = resolved_config.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[19];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
    return buf;
}

} // namespace ebr
