#pragma once

#include <optional>
#include <string>

#include "cpnsurf/meron.hpp"
#include "cpnsurf/model.hpp"

namespace cpnsurf {

/// On-disk model description: dimension, rational components of f, tower
/// depth, optional dilation-invariant block. All complex scalars serialize
/// as [re, im]; every file carries format_version 1.
struct ModelSpec {
    VectorSpec f;
    int k = 0;
    std::optional<MeronSpec> meron;
};

ModelSpec parse_model_spec(const std::string& json_text);
std::string serialize_model_spec(const ModelSpec& spec);

/// Model spec of the canonical binomial input.
ModelSpec veronese_model_spec(int n, int k);

/// Per-point geometry report (metric, connection, curvatures, fundamental
/// forms, invariants) serialized as JSON.
std::string analyze_report_json(const ModelSpec& spec, int k,
                                const std::vector<Complex>& points);

/// Charge/action report serialized as JSON.
std::string charge_report_json(const ModelSpec& spec, int k, int quad_order);

/// Pole/zero/cylinder report of the meron block serialized as JSON.
std::string meron_report_json(const ModelSpec& spec);

/// Shortest-width decimal with 17 significant digits (deterministic).
std::string format_double(double v);

}  // namespace cpnsurf
