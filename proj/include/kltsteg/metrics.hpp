// Copyright 2026 The kltsteg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "kltsteg/pipeline.hpp"
#include "kltsteg/raster.hpp"

namespace kltsteg {

// (1 / 3wh) * sum |a - b| over all channels. Throws kDimensionMismatch.
double mean_abs_error(const RgbRaster& a, const RgbRaster& b);

struct BenchRecord {
  std::size_t segment_rows = 0;
  std::size_t num_segments = 0;
  double component_rate = 0.0;
  double byte_rate = 0.0;
  double hide_ms = 0.0;
  double reveal_ms = 0.0;
  double carrier_error = 0.0;
  double message_error = 0.0;
  bool feasible = true;
  std::string note;  // reason when infeasible
};

struct SweepOptions {
  // Timings are the median over this many hide/reveal runs.
  unsigned runs = 1;
  // Run configurations concurrently; timings are then contended.
  bool parallel = false;
};

// One record per config, in order. A config whose payload does not fit is
// returned with feasible = false and NaN in the timing and error columns.
std::vector<BenchRecord> sweep(const RgbRaster& carrier, const RgbRaster& message,
                               const std::vector<EmbedConfig>& configs,
                               const SweepOptions& options = {});

inline constexpr const char* kCsvHeader =
    "s,num_segments,component_rate,byte_rate,hide_ms,reveal_ms,carrier_error,message_error";

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records);
std::string to_csv(const std::vector<BenchRecord>& records);

// Writes rate_vs_segment_rows.svg and time_vs_segment_rows.svg into dir.
void write_svg_plots(const std::filesystem::path& dir,
                     const std::vector<BenchRecord>& records);

}  // namespace kltsteg
