// state_io.hpp
// Versioned JSON interchange formats:
//   bose-state-v1  — a state matrix with shape, basis tag, and provenance
//   bose-report-v1 — a separability report, optional certificate and window
//   bose-cert-v1   — a standalone separable-decomposition certificate
//   hunt-v1        — one candidate record per JSONL line
// Matrices serialize as arrays of rows with [re, im] entry pairs. Numbers
// render with shortest round-trip precision, so parse -> serialize is
// byte-stable for fixed provenance text.

#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "bosesep/certificate.hpp"
#include "bosesep/hunt.hpp"
#include "bosesep/separability.hpp"
#include "bosesep/state_factory.hpp"

namespace bosesep {

nlohmann::json state_to_json(const StateRecord& state);
StateRecord state_from_json(const nlohmann::json& j);

nlohmann::json certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const SeparabilityReport& report,
                              const Certificate* certificate = nullptr);
SeparabilityReport report_from_json(const nlohmann::json& j);

nlohmann::json candidate_to_json(const CandidateRecord& record);
CandidateRecord candidate_from_json(const nlohmann::json& j);

// File helpers; Error{IoError} on filesystem failures, Error{ParseError}
// on malformed or wrong-schema content.
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::filesystem::path& path);
void save_state(const std::filesystem::path& path, const StateRecord& state);
StateRecord load_state(const std::filesystem::path& path);

}  // namespace bosesep
