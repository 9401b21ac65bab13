#pragma once

#include "spectral_clt/block_model.hpp"

#include <string>

namespace spectral_clt {

// A model file carries either raw cumulant matrices {k, sizes, q2, q3, q4}
// or edge probabilities {k, sizes, ptilde}; params is always populated
// (converted from ptilde when present).
struct LoadedModel {
    bool has_sbm = false;
    SbmSpec sbm;
    BlockModelParams params;
    std::string path;
};

// JSON, lowercase keys, row-major matrices as nested arrays. Unreadable or
// unparseable files raise io_error; structurally valid JSON with bad
// contents raises validation_error.
LoadedModel load_model(const std::string& path);

} // namespace spectral_clt
