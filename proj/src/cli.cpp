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

#include "kltsteg/cli.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <ostream>
#include <sstream>

#include "kltsteg/errors.hpp"
#include "kltsteg/image_io.hpp"
#include "kltsteg/metrics.hpp"
#include "kltsteg/pipeline.hpp"

namespace kltsteg::cli {
namespace {

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kCapacityExceeded: return kExitCapacity;
    case ErrorKind::kCorruptPayload:
    case ErrorKind::kMagicMismatch:
    case ErrorKind::kUnsupportedVersion: return kExitCorrupt;
    case ErrorKind::kIo:
    case ErrorKind::kDecode: return kExitIo;
    case ErrorKind::kInvalidArgument:
    case ErrorKind::kDimensionMismatch:
    case ErrorKind::kNonConvergence: return kExitUsage;
  }
  return kExitUsage;
}

struct RankFlags {
  CLI::Option* rank = nullptr;
  CLI::Option* energy = nullptr;
  std::size_t k = 0;
  double tau = 0.95;

  void add(CLI::App& app) {
    rank = app.add_option("--rank", k, "Keep exactly k eigenvectors per segment");
    energy = app.add_option("--energy", tau,
                            "Keep the fewest eigenvectors holding this energy fraction "
                            "(default 0.95)");
    rank->excludes(energy);
  }

  RankPolicy policy() const {
    if (rank->count() > 0) return ExplicitRank{k};
    return EnergyFraction{tau};
  }
};

std::string JoinRanks(const std::vector<std::size_t>& ranks) {
  std::ostringstream s;
  for (std::size_t i = 0; i < ranks.size(); ++i) s << (i ? "," : "") << ranks[i];
  return s.str();
}

void PrintHide(std::ostream& out, const HideReport& r) {
  out << std::fixed << std::setprecision(6);
  out << "message:        " << r.message_width << "x" << r.message_height << "\n"
      << "bits/channel:   " << r.bits_per_channel << "\n"
      << "segment rows:   " << r.segment_rows << " (" << r.num_segments << " segments)\n"
      << "ranks:          " << JoinRanks(r.ranks) << " (total " << r.k_total << ")\n"
      << "payload bits:   " << r.payload_bits << " of " << r.capacity_bits << "\n"
      << "component rate: " << r.rates.component_rate << "\n"
      << "byte rate:      " << r.rates.byte_rate << "\n"
      << "hide time ms:   " << r.hide_ms << "\n";
}

void PrintReveal(std::ostream& out, const RevealReport& r) {
  out << std::fixed << std::setprecision(6);
  out << "message:        " << r.message_width << "x" << r.message_height << "\n"
      << "bits/channel:   " << r.bits_per_channel << "\n"
      << "segment rows:   " << r.segment_rows << " (" << r.num_segments << " segments)\n"
      << "ranks:          " << JoinRanks(r.ranks) << " (total " << r.k_total << ")\n"
      << "payload bits:   " << r.payload_bits << "\n"
      << "reveal time ms: " << r.reveal_ms << "\n";
}

void PrintInspect(std::ostream& out, const InspectReport& r) {
  out << "magic:          0x" << std::hex << std::uppercase << r.preamble.magic << std::dec
      << "\n"
      << "version:        " << static_cast<unsigned>(r.preamble.version) << "\n"
      << "bits/channel:   " << static_cast<unsigned>(r.preamble.bits_per_channel) << "\n"
      << "message:        " << r.header.message_width << "x" << r.header.message_height
      << "\n"
      << "segment rows:   " << r.header.segment_rows << " (" << r.header.num_segments
      << " segments)\n"
      << "ranks:          " << JoinRanks(r.ranks) << "\n"
      << "payload bits:   " << r.payload_bits << " of " << r.capacity_bits << "\n";
}

std::vector<std::size_t> ParseSegmentList(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t pos = 0;
    unsigned long value = 0;
    try {
      value = std::stoul(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != item.size() || value == 0) {
      throw Error(ErrorKind::kInvalidArgument, "invalid segment row count '" + item + "'");
    }
    out.push_back(value);
  }
  if (out.empty()) throw Error(ErrorKind::kInvalidArgument, "--segments is empty");
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hide a KLT-compressed message image in a carrier's low bit planes", "kltsteg"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  unsigned threads = 1;
  app.add_option("--threads", threads, "Worker threads for segment encode/decode")
      ->check(CLI::Range(1u, 256u));

  // hide
  auto* hide_cmd = app.add_subcommand("hide", "Embed a message image into a carrier");
  std::string carrier_path, message_path, out_path;
  unsigned bits = 1;
  std::size_t segment_rows = 4;
  RankFlags hide_rank;
  hide_cmd->add_option("--carrier", carrier_path, "Carrier image (PNG/BMP)")->required();
  hide_cmd->add_option("--message", message_path, "Message image (PNG/BMP)")->required();
  hide_cmd->add_option("--out", out_path, "Stego image to write")->required();
  hide_cmd->add_option("--bits", bits, "Bits per channel: 1, 2 or 4")
      ->check(CLI::IsMember({1u, 2u, 4u}));
  hide_cmd->add_option("--segment-rows", segment_rows, "Pixel rows per segment")
      ->check(CLI::PositiveNumber);
  hide_rank.add(*hide_cmd);

  // reveal
  auto* reveal_cmd = app.add_subcommand("reveal", "Recover the message from a stego image");
  std::string stego_path, reveal_out;
  reveal_cmd->add_option("--stego", stego_path, "Stego image")->required();
  reveal_cmd->add_option("--out", reveal_out, "Recovered message image")->required();

  // inspect
  auto* inspect_cmd = app.add_subcommand("inspect", "Print preamble and payload header");
  std::string inspect_path;
  inspect_cmd->add_option("--stego", inspect_path, "Stego image")->required();

  // metrics
  auto* metrics_cmd = app.add_subcommand("metrics", "Mean absolute error of two images");
  std::string a_path, b_path;
  metrics_cmd->add_option("--a", a_path, "First image")->required();
  metrics_cmd->add_option("--b", b_path, "Second image")->required();

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Sweep segment sizes and record metrics");
  std::string bench_carrier, bench_message, segments_text, csv_path, svg_dir;
  unsigned bench_bits = 1;
  unsigned runs = 1;
  bool parallel = false;
  RankFlags bench_rank;
  bench_cmd->add_option("--carrier", bench_carrier, "Carrier image")->required();
  bench_cmd->add_option("--message", bench_message, "Message image")->required();
  bench_cmd->add_option("--bits", bench_bits, "Bits per channel: 1, 2 or 4")
      ->check(CLI::IsMember({1u, 2u, 4u}));
  bench_cmd->add_option("--segments", segments_text, "Comma-separated segment row counts")
      ->required();
  bench_cmd->add_option("--csv", csv_path, "CSV output path")->required();
  bench_cmd->add_option("--svg-dir", svg_dir, "Directory for rate/time SVG plots");
  bench_cmd->add_option("--runs", runs, "Timing runs per config (median reported)")
      ->check(CLI::Range(1u, 1000u));
  bench_cmd->add_flag("--parallel", parallel,
                      "Run configs concurrently (timings become unreliable)");
  bench_rank.add(*bench_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const ExecutionOptions exec{threads};
  try {
    if (*hide_cmd) {
      EmbedConfig config{BitsPerChannel(bits), segment_rows, hide_rank.policy()};
      const RgbRaster carrier = load_image(carrier_path);
      const RgbRaster message = load_image(message_path);
      const HideResult result = hide(carrier, message, config, exec);
      save_image(result.stego, out_path);
      PrintHide(out, result.report);
    } else if (*reveal_cmd) {
      const RevealResult result = reveal(load_image(stego_path), exec);
      save_image(result.message, reveal_out);
      PrintReveal(out, result.report);
    } else if (*inspect_cmd) {
      PrintInspect(out, inspect(load_image(inspect_path)));
    } else if (*metrics_cmd) {
      out << std::fixed << std::setprecision(6)
          << mean_abs_error(load_image(a_path), load_image(b_path)) << "\n";
    } else if (*bench_cmd) {
      const RgbRaster carrier = load_image(bench_carrier);
      const RgbRaster message = load_image(bench_message);
      std::vector<EmbedConfig> configs;
      for (std::size_t s : ParseSegmentList(segments_text)) {
        configs.push_back({BitsPerChannel(bench_bits), s, bench_rank.policy()});
      }
      if (parallel) err << "warning: --parallel runs contend; timing columns are unreliable\n";
      const auto records = sweep(carrier, message, configs, {runs, parallel});
      const std::string csv = to_csv(records);
      write_file_atomically(csv_path, std::span<const std::uint8_t>(
                                          reinterpret_cast<const std::uint8_t*>(csv.data()),
                                          csv.size()));
      if (!svg_dir.empty()) write_svg_plots(svg_dir, records);
      out << csv;
      for (const BenchRecord& r : records) {
        if (!r.feasible) err << "s=" << r.segment_rows << " infeasible: " << r.note << "\n";
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return ExitCodeFor(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace kltsteg::cli
