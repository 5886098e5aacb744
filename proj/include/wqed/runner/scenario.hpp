// scenario.hpp: named figure reproductions and the custom-config scenario

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wqed/runner/config.hpp"
#include "wqed/runner/csv.hpp"

namespace wqed::runner {

struct ScenarioResult {
    std::string name;
    std::vector<Table> tables;       // one per variant, named <scenario>_<variant>
    std::vector<std::string> notes;  // one-line summaries (extrema, final values)
};

/// fig1c fig1d fig2 fig3a fig3b fig4a fig4b fig5 figS2 figS3 custom
const std::vector<std::string>& scenario_names();

/// Runs a scenario. Overrides are "key=value" strings applied to every variant's defaults;
/// overriding geometry.kind runs a single variant. `base` seeds the custom scenario.
/// Throws ConfigError for unknown names or override paths; physics errors carry the
/// scenario and variant in their message.
ScenarioResult run_scenario(std::string_view name, std::span<const std::string> overrides = {},
                            const ScenarioConfig* base = nullptr);

} // namespace wqed::runner
