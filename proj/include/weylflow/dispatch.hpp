#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "weylflow/config.hpp"

namespace weylflow {

struct DispatchResult {
    /// Exit status: 0 on success, 1 when verify finds a failing criterion,
    /// 2 when the task raised a library error.
    int status = 0;
    std::string error_class;  // empty on success
    nlohmann::ordered_json manifest;
};

/// Runs the configured task, writes its outputs and manifest.json into
/// `out`. Library errors are caught and recorded in the manifest.
DispatchResult dispatch(const RunConfig& config, const std::filesystem::path& out);

/// The acceptance suite as a task; needs no config.
DispatchResult dispatch_verify(const std::filesystem::path& out);

}  // namespace weylflow
