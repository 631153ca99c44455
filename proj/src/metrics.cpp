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

#include "kltsteg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <span>
#include <sstream>
#include <thread>

#include "kltsteg/dsp/kernels.hpp"
#include "kltsteg/errors.hpp"
#include "kltsteg/image_io.hpp"
#include "kltsteg/segmenter.hpp"

namespace kltsteg {

double mean_abs_error(const RgbRaster& a, const RgbRaster& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "images differ in size: " + std::to_string(a.width()) + "x" +
                    std::to_string(a.height()) + " vs " + std::to_string(b.width()) +
                    "x" + std::to_string(b.height()));
  }
  if (a.channel_count() == 0) return 0.0;
  const std::uint64_t total = dsp::active_kernels().sum_abs_diff_u8(
      a.channels().data(), b.channels().data(), a.channel_count());
  return static_cast<double>(total) / static_cast<double>(a.channel_count());
}

namespace {

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

BenchRecord RunConfig(const RgbRaster& carrier, const RgbRaster& message,
                      const EmbedConfig& config, unsigned runs) {
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  BenchRecord record;
  record.segment_rows = config.segment_rows;
  record.num_segments = segment_count(message.height(), config.segment_rows);

  std::vector<double> hide_times;
  std::vector<double> reveal_times;
  for (unsigned run = 0; run < std::max(runs, 1u); ++run) {
    HideResult hidden;
    try {
      hidden = hide(carrier, message, config);
    } catch (const CapacityError& e) {
      const StegoPayload payload = encode_message(message, config);
      std::size_t k_total = 0;
      for (const auto& code : payload.codes) k_total += code.k;
      const CompressionRates rates =
          compression_rate(k_total, config.segment_rows, message.width(),
                           payload.num_segments, message.height());
      record.component_rate = rates.component_rate;
      record.byte_rate = rates.byte_rate;
      record.hide_ms = record.reveal_ms = kNaN;
      record.carrier_error = record.message_error = kNaN;
      record.feasible = false;
      record.note = e.what();
      return record;
    }
    RevealResult revealed = reveal(hidden.stego);
    hide_times.push_back(hidden.report.hide_ms);
    reveal_times.push_back(revealed.report.reveal_ms);
    if (run == 0) {
      record.component_rate = hidden.report.rates.component_rate;
      record.byte_rate = hidden.report.rates.byte_rate;
      record.carrier_error = mean_abs_error(carrier, hidden.stego);
      record.message_error = mean_abs_error(message, revealed.message);
    }
  }
  record.hide_ms = Median(hide_times);
  record.reveal_ms = Median(reveal_times);
  return record;
}

std::string FormatNumber(double v) {
  if (std::isnan(v)) return "nan";
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6f", v);
  return buffer;
}

}  // namespace

std::vector<BenchRecord> sweep(const RgbRaster& carrier, const RgbRaster& message,
                               const std::vector<EmbedConfig>& configs,
                               const SweepOptions& options) {
  std::vector<BenchRecord> records(configs.size());
  if (!options.parallel) {
    for (std::size_t i = 0; i < configs.size(); ++i) {
      records[i] = RunConfig(carrier, message, configs[i], options.runs);
    }
    return records;
  }
  std::vector<std::exception_ptr> failures(configs.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < configs.size(); ++i) {
      pool.emplace_back([&, i] {
        try {
          records[i] = RunConfig(carrier, message, configs[i], options.runs);
        } catch (...) {
          failures[i] = std::current_exception();
        }
      });
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return records;
}

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << kCsvHeader << '\n';
  for (const BenchRecord& r : records) {
    out << r.segment_rows << ',' << r.num_segments << ',' << FormatNumber(r.component_rate)
        << ',' << FormatNumber(r.byte_rate) << ',' << FormatNumber(r.hide_ms) << ','
        << FormatNumber(r.reveal_ms) << ',' << FormatNumber(r.carrier_error) << ','
        << FormatNumber(r.message_error) << '\n';
  }
}

std::string to_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  write_csv(out, records);
  return out.str();
}

namespace {

struct Series {
  std::string label;
  std::string color;
  std::vector<double> y;
};

std::string LinePlot(const std::string& title, const std::string& y_label,
                     const std::vector<double>& x, const std::vector<Series>& series) {
  constexpr double kW = 640, kH = 400, kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;
  double x_min = x.empty() ? 0 : *std::min_element(x.begin(), x.end());
  double x_max = x.empty() ? 1 : *std::max_element(x.begin(), x.end());
  double y_min = 0.0;
  double y_max = 0.0;
  for (const Series& s : series) {
    for (double v : s.y) {
      if (std::isfinite(v)) y_max = std::max(y_max, v);
    }
  }
  if (x_max == x_min) x_max = x_min + 1;
  if (y_max == y_min) y_max = y_min + 1;
  const auto px = [&](double v) {
    return kLeft + (v - x_min) / (x_max - x_min) * (kW - kLeft - kRight);
  };
  const auto py = [&](double v) {
    return kH - kBottom - (v - y_min) / (y_max - y_min) * (kH - kTop - kBottom);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kW / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << title << "</text>\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kH - kBottom << "\" x2=\"" << kW - kRight
      << "\" y2=\"" << kH - kBottom << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kH - kBottom << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 12
      << "\" text-anchor=\"middle\">segment rows s</text>\n"
      << "<text x=\"16\" y=\"" << kH / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << kH / 2 << ")\">" << y_label << "</text>\n";
  for (double v : x) {
    svg << "<text x=\"" << px(v) << "\" y=\"" << kH - kBottom + 16
        << "\" text-anchor=\"middle\">" << v << "</text>\n";
  }
  for (int t = 0; t <= 4; ++t) {
    const double v = y_min + (y_max - y_min) * t / 4.0;
    svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << py(v) + 4 << "\" text-anchor=\"end\">"
        << FormatNumber(v) << "</text>\n";
  }
  double legend_y = kTop;
  for (const Series& s : series) {
    svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < x.size() && i < s.y.size(); ++i) {
      if (std::isfinite(s.y[i])) svg << px(x[i]) << ',' << py(s.y[i]) << ' ';
    }
    svg << "\"/>\n";
    svg << "<text x=\"" << kW - kRight - 140 << "\" y=\"" << legend_y << "\" fill=\""
        << s.color << "\">" << s.label << "</text>\n";
    legend_y += 16;
  }
  svg << "</svg>\n";
  return svg.str();
}

void WriteText(const std::filesystem::path& path, const std::string& text) {
  write_file_atomically(path, std::span<const std::uint8_t>(
                                  reinterpret_cast<const std::uint8_t*>(text.data()),
                                  text.size()));
}

}  // namespace

void write_svg_plots(const std::filesystem::path& dir,
                     const std::vector<BenchRecord>& records) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot create " + dir.string() + ": " + ec.message());
  std::vector<double> x;
  Series component{"component rate 4k/3s", "#1f77b4", {}};
  Series bytes{"byte rate", "#d62728", {}};
  Series hide_t{"hide ms", "#2ca02c", {}};
  Series reveal_t{"reveal ms", "#9467bd", {}};
  for (const BenchRecord& r : records) {
    x.push_back(static_cast<double>(r.segment_rows));
    component.y.push_back(r.component_rate);
    bytes.y.push_back(r.byte_rate);
    hide_t.y.push_back(r.hide_ms);
    reveal_t.y.push_back(r.reveal_ms);
  }
  WriteText(dir / "rate_vs_segment_rows.svg",
            LinePlot("Compression rate vs segment rows", "rate", x, {component, bytes}));
  WriteText(dir / "time_vs_segment_rows.svg",
            LinePlot("Time vs segment rows", "milliseconds", x, {hide_t, reveal_t}));
}

}  // namespace kltsteg
