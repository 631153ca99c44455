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

#include "kltsteg/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <string>
#include <thread>

#include "kltsteg/errors.hpp"
#include "kltsteg/segmenter.hpp"

namespace kltsteg {
namespace {

using Clock = std::chrono::steady_clock;

double MillisecondsSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Runs body(i) for i in [0, count); each index is visited exactly once.
void ParallelFor(std::size_t count, unsigned threads,
                 const std::function<void(std::size_t)>& body) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(threads, 1u), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count && !failed; i = next++) {
          try {
            body(i);
          } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

std::vector<std::size_t> RanksOf(const StegoPayload& payload) {
  std::vector<std::size_t> ranks;
  ranks.reserve(payload.codes.size());
  for (const SegmentCode& code : payload.codes) ranks.push_back(code.k);
  return ranks;
}

std::size_t Sum(const std::vector<std::size_t>& v) {
  std::size_t total = 0;
  for (std::size_t x : v) total += x;
  return total;
}

std::uint64_t BitsWithCap(const std::vector<std::size_t>& ranks, std::size_t cap,
                          std::size_t segment_rows, std::size_t cols) {
  std::size_t k_total = 0;
  for (std::size_t k : ranks) k_total += std::min(k, cap);
  return payload_bit_length(segment_rows, cols, ranks.size(), k_total);
}

[[noreturn]] void ThrowCapacity(const RgbRaster& carrier, const StegoPayload& payload,
                                const EmbedConfig& config, std::uint64_t required) {
  const std::uint64_t available =
      capacity_bits(carrier.width(), carrier.height(), config.bits);
  std::string message = "message payload needs " + std::to_string(required) +
                        " bits but the carrier holds " + std::to_string(available) +
                        " bits at " + std::to_string(config.bits.value()) +
                        " bit(s) per channel.";
  std::string hint;
  for (unsigned b : {1u, 2u, 4u}) {
    if (b <= config.bits.value()) continue;
    if (capacity_bits(carrier.width(), carrier.height(), BitsPerChannel(b)) >= required) {
      hint += " Smallest depth that fits: --bits " + std::to_string(b) + ".";
      break;
    }
  }
  if (hint.empty()) hint = " No embedding depth up to 4 bits fits.";
  const std::size_t cap = largest_fitting_rank(RanksOf(payload), payload.segment_rows,
                                               payload.message_width, available);
  if (cap > 0) {
    hint += " At --bits " + std::to_string(config.bits.value()) +
            ", limiting rank with --rank " + std::to_string(cap) + " fits.";
  } else {
    hint += " No rank reduction fits at --bits " + std::to_string(config.bits.value()) +
            "; use a larger carrier or a larger --segment-rows.";
  }
  throw CapacityError(required, available, message + "\nsuggestion:" + hint);
}

void CheckImage(const RgbRaster& image, const char* what) {
  if (image.width() == 0 || image.height() == 0) {
    throw Error(ErrorKind::kInvalidArgument, std::string(what) + " image is empty");
  }
}

}  // namespace

std::size_t largest_fitting_rank(const std::vector<std::size_t>& ranks,
                                 std::size_t segment_rows, std::size_t cols,
                                 std::uint64_t available) {
  const std::size_t max_rank =
      ranks.empty() ? 0 : *std::max_element(ranks.begin(), ranks.end());
  for (std::size_t cap = max_rank; cap >= 1; --cap) {
    if (BitsWithCap(ranks, cap, segment_rows, cols) <= available) return cap;
  }
  return 0;
}

StegoPayload encode_message(const RgbRaster& message, const EmbedConfig& config,
                            const ExecutionOptions& exec) {
  CheckImage(message, "message");
  if (config.segment_rows == 0) {
    throw Error(ErrorKind::kInvalidArgument, "segment rows must be >= 1");
  }
  const PaddedMatrix padded = pad_rows(to_plane_matrix(message), config.segment_rows);
  const std::vector<Segment> segments = split_segments(padded.matrix, config.segment_rows);

  StegoPayload payload;
  payload.message_height = message.height();
  payload.message_width = message.width();
  payload.segment_rows = config.segment_rows;
  payload.num_segments = segments.size();
  payload.codes.resize(segments.size());
  ParallelFor(segments.size(), exec.threads, [&](std::size_t i) {
    payload.codes[i] = encode_segment(segments[i].matrix, config.rank);
  });
  return payload;
}

RgbRaster decode_message(const StegoPayload& payload, const ExecutionOptions& exec) {
  std::vector<Segment> segments(payload.codes.size());
  ParallelFor(segments.size(), exec.threads, [&](std::size_t i) {
    segments[i] = {i, reconstruct_segment(payload.codes[i])};
  });
  return from_plane_matrix(join_segments(segments, payload.message_height));
}

HideResult hide(const RgbRaster& carrier, const RgbRaster& message,
                const EmbedConfig& config, const ExecutionOptions& exec) {
  CheckImage(carrier, "carrier");
  const auto start = Clock::now();
  const std::uint64_t available =
      capacity_bits(carrier.width(), carrier.height(), config.bits);
  StegoPayload payload = encode_message(message, config, exec);
  const std::uint64_t required = payload_bit_length(payload);
  if (required > available) ThrowCapacity(carrier, payload, config, required);

  Bitstream bits = serialize(payload);
  HideResult result{embed_bits(carrier, bits, config.bits), {}};
  HideReport& report = result.report;
  report.hide_ms = MillisecondsSince(start);
  report.message_width = message.width();
  report.message_height = message.height();
  report.segment_rows = config.segment_rows;
  report.bits_per_channel = config.bits.value();
  report.num_segments = payload.num_segments;
  report.ranks = RanksOf(payload);
  report.k_total = Sum(report.ranks);
  report.payload_bits = bits.size();
  report.capacity_bits = available;
  report.rates = compression_rate(report.k_total, config.segment_rows, message.width(),
                                  payload.num_segments, message.height());
  report.payload = std::move(bits);
  return result;
}

RevealResult reveal(const RgbRaster& stego, const ExecutionOptions& exec) {
  const auto start = Clock::now();
  ExtractedBits extracted = extract_bits(stego);
  ParsedPayload parsed = parse_payload(extracted.bits);
  RevealResult result{decode_message(parsed.payload, exec), {}};
  RevealReport& report = result.report;
  report.reveal_ms = MillisecondsSince(start);
  report.message_width = parsed.payload.message_width;
  report.message_height = parsed.payload.message_height;
  report.segment_rows = parsed.payload.segment_rows;
  report.bits_per_channel = extracted.b.value();
  report.num_segments = parsed.payload.num_segments;
  report.ranks = RanksOf(parsed.payload);
  report.k_total = Sum(report.ranks);
  report.payload_bits = parsed.bit_length;
  report.payload = extracted.bits.prefix(parsed.bit_length);
  return result;
}

InspectReport inspect(const RgbRaster& stego) {
  InspectReport report;
  report.preamble = read_preamble(stego);
  const BitsPerChannel b = validate_preamble(report.preamble);
  const ExtractedBits extracted = extract_bits(stego);
  report.header = parse_header(extracted.bits);
  const ParsedPayload parsed = parse_payload(extracted.bits);
  report.ranks = RanksOf(parsed.payload);
  report.payload_bits = parsed.bit_length;
  report.capacity_bits = capacity_bits(stego.width(), stego.height(), b);
  return report;
}

}  // namespace kltsteg
