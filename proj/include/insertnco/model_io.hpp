#pragma once

#include <string>

#include "insertnco/model.hpp"

namespace insertnco {

// Binary weights file: magic "L2CI", version u16, config block (d, L, heads,
// d_ff, input_dim as u32; include_unvisited as u8), then named arrays, each
// as name length u16, utf-8 name, rank u8, dims u32[], row-major
// little-endian f32 payload. Round-trips bitwise. k_filter is an inference
// option and is not stored.
void save_params(const ModelParams<float>& params, const std::string& path);
ModelParams<float> load_params(const std::string& path);

}  // namespace insertnco
