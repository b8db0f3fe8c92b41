#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "screwtool/params.hpp"

namespace screwtool {

/// FNV-1a 64-bit digest, hex encoded. Deterministic across runs and
/// platforms; used to fingerprint config inputs in reports.
std::string fnv1a_digest(const std::string& data);

/// Envelope every CLI report is wrapped in: what ran, on which input, with
/// which parameters, plus any notes about known model/record discrepancies.
struct ReportEnvelope {
    std::string analysis;
    std::string input_digest;
    nlohmann::json parameter_snapshot;
    nlohmann::json payload;
    std::vector<std::string> notes;

    nlohmann::json to_json() const;
};

nlohmann::json params_snapshot(const ToolParams& tool, const GripperParams& gripper);

/// Fixed-format float for CSV output (shortest round-trip-stable form would
/// vary across libc versions; %.9g keeps files byte-stable).
std::string csv_num(double v);

}  // namespace screwtool
