#pragma once

#include "lagspec/dependence.hpp"
#include "lagspec/harness.hpp"
#include "lagspec/inference.hpp"
#include "lagspec/kernels.hpp"
#include "lagspec/spectral.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>

namespace lagspec {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Matrices are per-frequency n x n arrays of [re, im] pairs.
Json to_json(const SpectralGrid& grid);
Json to_json(const BandResult& band, const SpectralGrid& estimate);
Json to_json(const Kernel& kernel);
Json to_json(const DependenceProfile& profile);
Json to_json(const ConditionReport& report);
// The worker count is deliberately absent so reports do not depend on it.
Json to_json(const ExperimentPlan& plan);
Json to_json(const ExperimentReport& report);

SpectralGrid grid_from_json(const Json& j);

// Tidy long format: experiment,T,statistic,value,se.
void write_plot_data(const ExperimentReport& report, std::ostream& out);

Json read_json(const std::filesystem::path& path);
void write_json(const Json& j, const std::filesystem::path& path);
// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

}  // namespace lagspec
