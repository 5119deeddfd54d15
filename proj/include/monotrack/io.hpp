#pragma once

#include "monotrack/runtime.hpp"
#include "monotrack/synthesis.hpp"
#include "monotrack/system.hpp"

#include <nlohmann/json_fwd.hpp>
#include <json.hpp>

#include <string>

namespace monotrack::io {

using Json = nlohmann::ordered_json;

// System file: {"domain": "continuous"|"discrete", "A": [[...]], "B": ...,
// "C": ..., "D": ...}; entries are JSON numbers or "p/q" strings.
LtiSystem<Rat> load_system(const std::string& path);
LtiSystem<double> load_system_double(const std::string& path);

// Feedback file: {"F": [["p/q",...]], "modes": {...}, "seed": S}
struct FeedbackFile {
    MatQ F;
    std::vector<std::optional<double>> visible_modes;  // per output; nullopt = instantaneous
    std::vector<double> invisible_modes;
    std::uint64_t seed = 0;
};

Json feedback_to_json(const SynthesisResult<Rat>& res, Eigen::Index p);
FeedbackFile feedback_from_json(const Json& j);
FeedbackFile load_feedback(const std::string& path);

void write_trace_csv(const std::string& path, const SimulationTrace& trace);

Json structural_report_to_json(const StructuralReport<Rat>& rep,
                               const SolvabilityReport& structural);
Json solvability_to_json(const SolvabilityReport& rep);
Json verdicts_to_json(const std::vector<ComponentVerdict>& verdicts);
Json batch_to_json(const BatchResult& res);

} // namespace monotrack::io
