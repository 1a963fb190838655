#pragma once

#include <string>

#include "mlpw/pairwise.hpp"

namespace mlpw {

inline constexpr int kModelSchemaVersion = 1;

/// Persists a trained model as a directory: manifest.json (schema version,
/// label count, pair enumeration, config, seed, config hash, scaler),
/// validation_points.json (shared standardized validation features, when
/// present) and one pair_<m1>_<m2>.json per pairwise member.
void save_model_bundle(const LpwModel& model, const std::string& dir,
                       std::uint64_t seed = 0);

/// Loads a bundle written by save_model_bundle. Throws parse_error on schema
/// mismatch or malformed content.
LpwModel load_model_bundle(const std::string& dir);

}  // namespace mlpw
