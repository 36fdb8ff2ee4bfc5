#pragma once

// Range scans over primes: per-prime counts, bound checks, golomb pairs and
// existence certificates, emitted in ascending p as JSON lines or CSV.

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "lehmer/arith.hpp"
#include "lehmer/bounds.hpp"
#include "lehmer/primes.hpp"

namespace lehmer {

enum Check : unsigned {
  kCheckCounts = 1u << 0,
  kCheckBounds = 1u << 1,
  kCheckCertify = 1u << 2,
  kCheckGolomb = 1u << 3,
};

/// Parses a comma-separated list such as "counts,bounds". Throws
/// std::invalid_argument on unknown names or an empty list.
unsigned parse_checks(std::string_view list);
std::string checks_to_string(unsigned checks);

enum class ScanFormat { kJson, kCsv };

struct ScanConfig {
  u64 lo = 2;
  u64 hi = 100'000;
  unsigned checks = kCheckCounts | kCheckBounds;
  unsigned jobs = 1;
  u64 counting_cap = kDefaultTableCap;
  u64 direct_search_cap = 1'000'000'000;
  ScanFormat format = ScanFormat::kJson;
  std::string out_path;  // empty: the caller's stream, no checkpointing
  bool stable = false;
  bool resume = false;
  u64 checkpoint_every = 16;  // segments
  u64 segment_size = kDefaultSegmentSize;
  u64 max_segments = 0;  // stop early after this many segments; 0: no limit
};

/// Throws std::invalid_argument for an inconsistent config and ResourceError
/// when counting is requested beyond counting_cap.
void validate(const ScanConfig& config);

struct ScanRecord {
  u64 p = 0;
  std::optional<u64> M;
  std::optional<u64> N;
  std::optional<u64> G;
  std::optional<u64> first_lpr;
  std::optional<std::string> verdict;
  std::optional<bool> thm1;
  std::optional<bool> thm2;
  std::optional<bool> thm6;
  std::int64_t elapsed_us = 0;
  std::vector<BoundReport> reports;  // not serialized; feeds the summary
  bool failed = false;
};

ScanRecord scan_prime(u64 p, const ScanConfig& config);

std::string_view csv_header();
std::string format_record(const ScanRecord& record, ScanFormat format, bool stable);

struct ScanSummary {
  u64 primes = 0;
  u64 failures = 0;
  std::vector<u64> failed_primes;  // first few, ascending
  std::map<std::string, u64> verdicts;
  std::map<std::string, double> min_slack;  // keyed by bound name
  bool complete = true;  // false when max_segments stopped the scan

  void add(const ScanRecord& record);
  std::string to_json() const;
  static ScanSummary from_json(std::string_view text);
};

/// Runs the scan, writing records to config.out_path (or `out` when the path
/// is empty). With an output path, a checkpoint `<out>.ckpt` is written
/// every checkpoint_every segments and removed on completion; resume
/// truncates the output to the checkpointed offset and continues.
ScanSummary run_scan(const ScanConfig& config, std::ostream& out);

}  // namespace lehmer
