#include "lehmer/scan.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "lehmer/lehmer.hpp"
#include "lehmer/sieve.hpp"

namespace lehmer {

namespace {

using json = nlohmann::ordered_json;

constexpr std::size_t kFailedPrimesKept = 32;
constexpr std::size_t kChunk = 64;

constexpr std::pair<std::string_view, unsigned> kCheckNames[] = {
    {"counts", kCheckCounts},
    {"bounds", kCheckBounds},
    {"certify", kCheckCertify},
    {"golomb", kCheckGolomb},
};

bool excluded(u64 p) { return p == 2 || p == 3 || p == 7; }

void note(ScanRecord& r, const BoundReport& report, std::optional<bool>& flag) {
  r.reports.push_back(report);
  flag = flag.value_or(true) && report.holds;
}

json optional_value(const std::optional<u64>& v) { return v ? json(*v) : json(nullptr); }
json optional_value(const std::optional<bool>& v) { return v ? json(*v) : json(nullptr); }

template <typename T>
std::string csv_field(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_same_v<T, bool>) {
    return *v ? "true" : "false";
  } else if constexpr (std::is_same_v<T, std::string>) {
    return *v;
  } else {
    return std::to_string(*v);
  }
}

std::string fingerprint(const ScanConfig& c) {
  std::ostringstream s;
  s << c.lo << ':' << c.hi << ':' << checks_to_string(c.checks) << ':' << c.counting_cap << ':'
    << c.direct_search_cap << ':' << (c.format == ScanFormat::kJson ? "json" : "csv") << ':'
    << c.stable << ':' << c.segment_size;
  return s.str();
}

std::string checkpoint_path(const ScanConfig& c) { return c.out_path + ".ckpt"; }

struct Checkpoint {
  u64 next = 0;
  std::uintmax_t offset = 0;
  ScanSummary summary;
};

void write_checkpoint(const ScanConfig& c, const Checkpoint& ck) {
  json j;
  j["fingerprint"] = fingerprint(c);
  j["next"] = ck.next;
  j["offset"] = ck.offset;
  j["summary"] = json::parse(ck.summary.to_json());
  const std::string path = checkpoint_path(c);
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::trunc);
    f << j.dump() << '\n';
    if (!f) throw std::runtime_error("cannot write checkpoint " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::optional<Checkpoint> read_checkpoint(const ScanConfig& c) {
  std::ifstream f(checkpoint_path(c));
  if (!f) return std::nullopt;
  const json j = json::parse(f);
  if (j.at("fingerprint").get<std::string>() != fingerprint(c)) {
    throw std::invalid_argument("checkpoint " + checkpoint_path(c) +
                                " was written by a different scan configuration");
  }
  Checkpoint ck;
  ck.next = j.at("next").get<u64>();
  ck.offset = j.at("offset").get<std::uintmax_t>();
  ck.summary = ScanSummary::from_json(j.at("summary").dump());
  return ck;
}

std::vector<ScanRecord> scan_segment(const std::vector<u64>& primes, const ScanConfig& config) {
  std::vector<ScanRecord> records(primes.size());
  const std::size_t chunks = (primes.size() + kChunk - 1) / kChunk;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c = next++; c < chunks; c = next++) {
      const std::size_t end = std::min(primes.size(), (c + 1) * kChunk);
      for (std::size_t i = c * kChunk; i < end; ++i) records[i] = scan_prime(primes[i], config);
    }
  };
  const unsigned jobs = static_cast<unsigned>(std::min<std::size_t>(config.jobs, chunks));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> threads;
    for (unsigned i = 0; i < jobs; ++i) threads.emplace_back(worker);
  }
  return records;
}

}  // namespace

unsigned parse_checks(std::string_view list) {
  unsigned checks = 0;
  while (!list.empty()) {
    const auto comma = list.find(',');
    const auto name = list.substr(0, comma);
    const auto it = std::find_if(std::begin(kCheckNames), std::end(kCheckNames),
                                 [&](const auto& e) { return e.first == name; });
    if (it == std::end(kCheckNames)) {
      throw std::invalid_argument("unknown check '" + std::string(name) + "'");
    }
    checks |= it->second;
    list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
  }
  if (checks == 0) throw std::invalid_argument("empty check list");
  return checks;
}

std::string checks_to_string(unsigned checks) {
  std::string out;
  for (const auto& [name, bit] : kCheckNames) {
    if (checks & bit) {
      if (!out.empty()) out += ',';
      out += name;
    }
  }
  return out;
}

void validate(const ScanConfig& c) {
  if (c.lo > c.hi) throw std::invalid_argument("scan: lo > hi");
  if (c.hi > kMaxSupported) throw std::invalid_argument("scan: hi exceeds 2^63 - 1");
  if (c.jobs < 1) throw std::invalid_argument("scan: jobs must be >= 1");
  if (c.checks == 0) throw std::invalid_argument("scan: no checks selected");
  if ((c.checks & (kCheckGolomb | kCheckBounds)) && !(c.checks & kCheckCounts)) {
    throw std::invalid_argument("scan: bounds and golomb checks require counts");
  }
  if (c.resume && c.out_path.empty()) throw std::invalid_argument("scan: --resume needs --out");
  if (c.segment_size == 0 || c.checkpoint_every == 0) {
    throw std::invalid_argument("scan: segment size and checkpoint interval must be positive");
  }
  if ((c.checks & kCheckCounts) && c.hi > c.counting_cap) {
    throw ResourceError("scan: counting up to " + std::to_string(c.hi) +
                        " exceeds the counting cap " + std::to_string(c.counting_cap));
  }
}

ScanRecord scan_prime(u64 p, const ScanConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  ScanRecord r;
  r.p = p;
  const bool counts = config.checks & kCheckCounts;

  if (p == 2) {
    // The only residue is 1, its own inverse: no Lehmer numbers.
    if (counts) {
      r.M = 0;
      r.N = 0;
    }
    if (config.checks & kCheckGolomb) r.G = 0;
    if (config.checks & kCheckCertify) r.verdict = std::string(to_string(Verdict::kNoLPR));
  } else {
    const PrimeContext base(p);
    const PrimeContext ctx = counts ? base.with_inverse_table(config.counting_cap) : base;
    if (counts) {
      const auto c = count_lehmer(ctx, config.counting_cap);
      r.M = c.M;
      r.N = c.N;
      r.first_lpr = c.first_lpr;
    }
    if (config.checks & kCheckGolomb) r.G = count_golomb_lehmer_pairs(ctx, config.counting_cap);

    if (config.checks & kCheckBounds) {
      note(r, thm2_bound(p, *r.M, Form::kSimplified), r.thm2);
      if (p > 3) {
        const double t_sq = t_squared(p);
        note(r, thm2_bound(p, *r.M, Form::kExact, t_sq), r.thm2);
        note(r, thm1_bound(ctx, *r.N, Form::kExact, t_sq), r.thm1);
        note(r, thm1_bound(ctx, *r.N, Form::kSimplified, t_sq), r.thm1);
        if (r.G) {
          note(r, thm6_bound(ctx, *r.G, Form::kExact, t_sq), r.thm6);
          note(r, thm6_bound(ctx, *r.G, Form::kSimplified, t_sq), r.thm6);
        }
      }
    }

    if (config.checks & kCheckCertify) {
      CertifyOptions options;
      options.direct_search_cap = config.direct_search_cap;
      const auto cert = certify_existence(ctx, options);
      r.verdict = std::string(to_string(cert.verdict));
      if (!r.first_lpr && cert.witness) r.first_lpr = cert.witness;
      if (!excluded(p) && !is_exists(cert.verdict)) r.failed = true;
      if (excluded(p) && cert.verdict != Verdict::kNoLPR) r.failed = true;
    }
  }

  for (const auto* flag : {&r.thm1, &r.thm2, &r.thm6}) {
    if (flag->has_value() && !**flag) r.failed = true;
  }
  if (counts && !excluded(p) && !r.first_lpr) r.failed = true;
  if (counts && excluded(p) && r.first_lpr) r.failed = true;

  r.elapsed_us = std::chrono::duration_cast<std::chrono::microseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  return r;
}

std::string_view csv_header() { return "p,M,N,G,first_lpr,verdict,thm1,thm2,thm6,elapsed_us"; }

std::string format_record(const ScanRecord& r, ScanFormat format, bool stable) {
  if (format == ScanFormat::kCsv) {
    std::string line = std::to_string(r.p);
    for (const auto& field :
         {csv_field(r.M), csv_field(r.N), csv_field(r.G), csv_field(r.first_lpr),
          csv_field(r.verdict), csv_field(r.thm1), csv_field(r.thm2), csv_field(r.thm6)}) {
      line += ',';
      line += field;
    }
    line += ',';
    if (!stable) line += std::to_string(r.elapsed_us);
    return line;
  }
  json j;
  j["p"] = r.p;
  j["M"] = optional_value(r.M);
  j["N"] = optional_value(r.N);
  j["G"] = optional_value(r.G);
  j["first_lpr"] = optional_value(r.first_lpr);
  j["verdict"] = r.verdict ? json(*r.verdict) : json(nullptr);
  j["thm1"] = optional_value(r.thm1);
  j["thm2"] = optional_value(r.thm2);
  j["thm6"] = optional_value(r.thm6);
  if (!stable) j["elapsed_us"] = r.elapsed_us;
  return j.dump();
}

void ScanSummary::add(const ScanRecord& r) {
  ++primes;
  if (r.failed) {
    ++failures;
    if (failed_primes.size() < kFailedPrimesKept) failed_primes.push_back(r.p);
  }
  if (r.verdict) ++verdicts[*r.verdict];
  for (const auto& report : r.reports) {
    const std::string key(to_string(report.id));
    const auto it = min_slack.find(key);
    if (it == min_slack.end() || report.slack < it->second) min_slack[key] = report.slack;
  }
}

std::string ScanSummary::to_json() const {
  json j;
  j["primes"] = primes;
  j["failures"] = failures;
  j["failed_primes"] = failed_primes;
  j["verdicts"] = verdicts;
  j["min_slack"] = min_slack;
  return j.dump();
}

ScanSummary ScanSummary::from_json(std::string_view text) {
  const json j = json::parse(text);
  ScanSummary s;
  s.primes = j.at("primes").get<u64>();
  s.failures = j.at("failures").get<u64>();
  s.failed_primes = j.at("failed_primes").get<std::vector<u64>>();
  s.verdicts = j.at("verdicts").get<std::map<std::string, u64>>();
  s.min_slack = j.at("min_slack").get<std::map<std::string, double>>();
  return s;
}

ScanSummary run_scan(const ScanConfig& config, std::ostream& default_out) {
  validate(config);
  ScanSummary summary;
  SegmentedSieve sieve(config.lo, config.hi, config.segment_size);

  std::ofstream file;
  std::ostream* out = &default_out;
  if (!config.out_path.empty()) {
    std::optional<Checkpoint> ck;
    if (config.resume) ck = read_checkpoint(config);
    if (ck) {
      std::filesystem::resize_file(config.out_path, ck->offset);
      file.open(config.out_path, std::ios::app | std::ios::binary);
      summary = ck->summary;
      sieve.seek(ck->next);
    } else {
      file.open(config.out_path, std::ios::trunc | std::ios::binary);
      if (config.format == ScanFormat::kCsv) file << csv_header() << '\n';
    }
    if (!file) throw std::runtime_error("cannot open " + config.out_path);
    out = &file;
  } else if (config.format == ScanFormat::kCsv) {
    *out << csv_header() << '\n';
  }

  std::vector<u64> primes;
  u64 seg_lo = 0;
  u64 seg_hi = 0;
  u64 segments = 0;
  while (sieve.next(primes, seg_lo, seg_hi)) {
    for (const auto& record : scan_segment(primes, config)) {
      *out << format_record(record, config.format, config.stable) << '\n';
      summary.add(record);
    }
    ++segments;
    if (file.is_open() && segments % config.checkpoint_every == 0 && seg_hi < config.hi) {
      file.flush();
      if (!file) throw std::runtime_error("write failed on " + config.out_path);
      write_checkpoint(config, {seg_hi + 1, std::filesystem::file_size(config.out_path), summary});
    }
    if (config.max_segments && segments == config.max_segments && seg_hi < config.hi) {
      out->flush();
      summary.complete = false;
      return summary;
    }
  }
  out->flush();
  if (file.is_open()) {
    file.close();
    std::error_code ignored;
    std::filesystem::remove(checkpoint_path(config), ignored);
  }
  return summary;
}

}  // namespace lehmer
