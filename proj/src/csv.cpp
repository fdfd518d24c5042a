#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "qmcft/experiment.hpp"

namespace qmcft {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
  return in;
}

void expect_header(std::istream& in, std::string_view header) {
  std::string line;
  if (!std::getline(in, line) || line != header) throw std::runtime_error("unexpected CSV header: " + line);
}

}  // namespace

void write_csv(std::vector<BatchRow> rows, std::ostream& out) {
  std::stable_sort(rows.begin(), rows.end(), [](const BatchRow& a, const BatchRow& b) {
    return std::tie(a.payoff, a.method, a.paths, a.batch) < std::tie(b.payoff, b.method, b.paths, b.batch);
  });
  out << kRawCsvHeader << '\n';
  for (const BatchRow& r : rows)
    out << r.payoff << ',' << r.method << ',' << r.n << ',' << r.paths << ',' << r.batch << ','
        << format_double(r.estimate) << ',' << format_double(r.runtime_ms) << '\n';
  if (!out) throw std::runtime_error("CSV write failed");
}

void write_csv(std::vector<BatchRow> rows, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_csv(std::move(rows), out);
}

void write_summary_csv(std::vector<BatchStats> stats, std::ostream& out) {
  std::stable_sort(stats.begin(), stats.end(), [](const BatchStats& a, const BatchStats& b) {
    return std::tie(a.payoff, a.method, a.paths) < std::tie(b.payoff, b.method, b.paths);
  });
  out << kSummaryCsvHeader << '\n';
  for (const BatchStats& s : stats)
    out << s.payoff << ',' << s.method << ',' << s.n << ',' << s.paths << ',' << format_double(s.mean) << ','
        << format_double(s.stddev) << ',' << s.batches << '\n';
  if (!out) throw std::runtime_error("CSV write failed");
}

void write_summary_csv(std::vector<BatchStats> stats, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_summary_csv(std::move(stats), out);
}

std::vector<BatchRow> read_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  expect_header(in, kRawCsvHeader);
  std::vector<BatchRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 7) throw std::runtime_error("malformed CSV row: " + line);
    rows.push_back({f[0], f[1], std::stoull(f[2]), std::stoull(f[3]), std::stoull(f[4]), std::stod(f[5]),
                    std::stod(f[6])});
  }
  return rows;
}

std::vector<BatchStats> read_summary_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  expect_header(in, kSummaryCsvHeader);
  std::vector<BatchStats> stats;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 7) throw std::runtime_error("malformed CSV row: " + line);
    stats.push_back({f[0], f[1], std::stoull(f[2]), std::stoull(f[3]), std::stod(f[4]), std::stod(f[5]),
                     std::stoull(f[6]), 0.0});
  }
  return stats;
}

}  // namespace qmcft
