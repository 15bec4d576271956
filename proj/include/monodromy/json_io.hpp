#pragma once

// JSON encodings of every external interface.  Reports are emitted through
// ordered_json so that identical inputs produce byte-identical files.

#include <json.hpp>

#include "monodromy/inertia.hpp"
#include "monodromy/sysharness.hpp"

namespace monodromy {

using json = nlohmann::ordered_json;

extern const char* kToolVersion;

json mat_to_json(const Mat& m);
Mat mat_from_json(const json& j);

json group_to_json(const MatrixGroup& g);
MatrixGroup group_from_json(const json& j);

json bundle_to_json(const SystemBundle& b);
SystemBundle bundle_from_json(const json& j);

json formal_character_to_json(const FormalCharacter& fc);
FormalCharacter formal_character_from_json(const json& j);

json tame_character_to_json(const TameCharacter& c);
TameCharacter tame_character_from_json(const json& j);

json tame_rep_to_json(const TameRep& r);
TameRep tame_rep_from_json(const json& j);

json rank_report_to_json(const RankReport& r);

std::vector<LieFactorDescriptor> descriptors_from_json(const json& j);
json descriptors_to_json(const std::vector<LieFactorDescriptor>& ds);

json prime_report_to_json(const PrimeReport& r);
json independence_report_to_json(const IndependenceReport& r, u64 seed);
json compat_report_to_json(const CompatReport& r, const SystemBundle& b, u64 seed);

// Render a report as human-readable text (the JSON stays the source of truth).
std::string render_text(const json& report);

json load_json_file(const std::string& path);
void write_output(const json& report, const std::string& out_path, bool as_text);

}  // namespace monodromy
