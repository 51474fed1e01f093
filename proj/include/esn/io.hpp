#pragma once

#include <string>

#include <json.hpp>

#include "esn/pruning.hpp"
#include "esn/readout.hpp"
#include "esn/reservoir.hpp"

namespace esn {

using Json = nlohmann::json;

// Reservoir files are JSON documents {hyperparams, w, w_in, w_back?} with
// matrices as nested row arrays; trained models add {w_out}. nlohmann
// prints shortest-round-trip doubles, so values survive a save/load
// cycle exactly.

Json matrix_to_json(const DenseMatrix& m);
DenseMatrix matrix_from_json(const Json& j);

Json hyperparams_to_json(const HyperParams& hp);
HyperParams hyperparams_from_json(const Json& j);

Json reservoir_to_json(const ReservoirWeights& rw, const HyperParams& hp);
std::pair<ReservoirWeights, HyperParams> reservoir_from_json(const Json& j);

Json trained_to_json(const TrainedEsn& model);
TrainedEsn trained_from_json(const Json& j);

/// {baseline: {val_nrmse, test_nrmse}, optimal_n, optimal_test_nrmse, smallest_n}.
Json curve_summary_json(const PruneCurve& curve);

void save_json(const Json& j, const std::string& path);
Json load_json(const std::string& path);

}  // namespace esn
