// json_io.hpp — wire formats
//
// Ket          {"dim": n, "amplitudes": [[re, im], ...]}
// Density      {"dim": n, "entries": [[[re, im], ...], ...]}   (row-major)
// BlochVector  {"n": N, "coords": [...]}
// Simplex      {"n": N, "vertices": [[...], ...]}
// Partition    {"ambient_dim": d, "index_sets": [[...], ...]}  (0-based indices)
// Run records are one OutcomeRecord per JSONL line; outcome_index is
// serialized 1-based.  FrequencyReport goes out as JSON or as CSV rows
// "outcome,expected,empirical,sigma".

#pragma once

#include <string>

#include <json.hpp>

#include "ebr/effective_measurement.hpp"
#include "ebr/hidden_measurement.hpp"
#include "ebr/measurement_simplex.hpp"

namespace ebr {

using json = nlohmann::json;

json ket_to_json(const Ket& k);
Ket ket_from_json(const json& j);

json density_to_json(const DensityOperator& d);
DensityOperator density_from_json(const json& j);

json bloch_to_json(const BlochVector& r);
BlochVector bloch_from_json(const json& j);

json simplex_to_json(const MeasurementSimplex& s);

PartitionProjectors partition_from_json(const json& j);

// One JSONL line.  Provenance fields (config_hash, generator order tag,
// rng algorithm) make the record replayable in isolation.
json outcome_record_to_json(const OutcomeRecord& rec, bool include_state,
                            const std::string& config_hash);

json frequency_report_to_json(const FrequencyReport& rep, const json& resolved_config,
                              const std::string& config_hash);
std::string frequency_report_to_csv(const FrequencyReport& rep, const std::string& config_hash);

// FNV-1a over the canonical dump; used to stamp artifacts with the
// resolved configuration that produced them.
std::string config_hash_hex(const json& resolved_config);

} // namespace ebr
