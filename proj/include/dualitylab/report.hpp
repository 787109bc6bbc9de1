#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dualitylab/embedding.hpp"
#include "dualitylab/expfam.hpp"
#include "dualitylab/mellin_zeta.hpp"
#include "dualitylab/spectral.hpp"

namespace dualitylab {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

/// Echo of one CLI invocation; enough to reproduce the run bit-for-bit.
struct RunConfig {
    std::string command;
    ordered_json params = ordered_json::object();
    std::string output_dir = ".";
    std::vector<std::string> formats = {"json"};
    long seed = 12345;
};

struct ReportEnvelope {
    std::string tool_version = kToolVersion;
    std::string timestamp;  // ISO-8601 UTC, excluded from determinism checks
    RunConfig config_echo;
    ordered_json results = ordered_json::object();
    std::vector<std::string> diagnostics;
};

std::string iso_timestamp_utc();

ordered_json to_json(const RunConfig& cfg);
ordered_json to_json(const ReportEnvelope& env);
RunConfig run_config_from_json(const ordered_json& j);
ReportEnvelope envelope_from_json(const ordered_json& j);

ordered_json to_json(const FamilyPoint& p);
ordered_json to_json(const LatticeEmbedding& e);
ordered_json to_json(const GapTable& t);
ordered_json to_json(const ClosureReport& r);
ordered_json to_json(const ThetaSum& s);
ordered_json to_json(const DualSum& s);
ordered_json to_json(const PoissonReport& r);
ordered_json to_json(const SpectralProfile& p);
ordered_json to_json(const HyRatio& r);
ordered_json to_json(const MellinReport& r);
ordered_json to_json(const GammaScanRow& r);

/// CSV payloads, header row first, '\n' line endings.
std::string csv_gaps(const LatticeEmbedding& emb, const GapTable& table);
std::string csv_profile_samples(const SpectralProfile& p);
std::string csv_profile_envelope(const SpectralProfile& p);
std::string csv_sweep(const std::string& xname,
                      const std::vector<std::pair<double, double>>& rows);
std::string csv_mellin(const std::vector<MellinReport>& rows);
std::string csv_gamma_scan(const std::vector<GammaScanRow>& rows);

/// Self-contained SVG plots (inline styling, no external assets).
std::string svg_profile(const SpectralProfile& p);
std::string svg_lattice(const LatticeEmbedding& emb, const GapTable& table);
std::string svg_sweep(const std::string& title, const std::string& xlabel,
                      const std::vector<std::pair<double, double>>& rows);

/// Writes content to dir/name, creating dir if needed; returns the path.
/// Throws IoError on failure.
std::string write_artifact(const std::string& dir, const std::string& name,
                           const std::string& content);

/// Compact numeric formatting shared by file names and CSV cells (%.17g for
/// CSV round-tripping, %g for names).
std::string format_g(double v);

}  // namespace dualitylab
