#include "imann/records.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace imann {

const char* const kCsvHeader =
    "formulation,method,arch,dataset_size,restart_index,seed,fitness,"
    "error_integral,evals,wall_time_ms,status";

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& s, const std::filesystem::path& path) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') {
    throw std::runtime_error("parse_csv: bad number '" + s + "' in " + path.string());
  }
  return v;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

void emit_csv(const std::vector<RunRecord>& records, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("emit_csv: cannot open " + path.string());
  }
  out << kCsvHeader << '\n';
  for (const RunRecord& r : records) {
    out << r.formulation << ',' << r.method << ',' << r.arch << ','
        << r.dataset_size << ',' << r.restart_index << ',' << r.seed << ','
        << format_double(r.fitness) << ',' << format_double(r.error_integral) << ','
        << r.evals << ',' << r.wall_time_ms << ',' << r.status << '\n';
  }
  if (!out.flush()) {
    throw std::runtime_error("emit_csv: write failed for " + path.string());
  }
}

std::vector<RunRecord> parse_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("parse_csv: cannot open " + path.string());
  }
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::runtime_error("parse_csv: unexpected header in " + path.string());
  }
  std::vector<RunRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split_fields(line);
    if (f.size() != 11) {
      throw std::runtime_error("parse_csv: bad row in " + path.string());
    }
    RunRecord r;
    r.formulation = f[0];
    r.method = f[1];
    r.arch = f[2];
    r.dataset_size = std::stoi(f[3]);
    r.restart_index = std::stoi(f[4]);
    r.seed = std::stoull(f[5]);
    r.fitness = parse_double(f[6], path);
    r.error_integral = parse_double(f[7], path);
    r.evals = std::stol(f[8]);
    r.wall_time_ms = std::stol(f[9]);
    r.status = f[10];
    records.push_back(std::move(r));
  }
  return records;
}

void emit_plot_data(const std::vector<RunRecord>& best_records,
                    const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::map<std::pair<std::string, std::string>, std::vector<const RunRecord*>> series;
  for (const RunRecord& r : best_records) {
    series[{r.formulation, r.method}].push_back(&r);
  }
  for (auto& [key, rows] : series) {
    std::sort(rows.begin(), rows.end(), [](const RunRecord* a, const RunRecord* b) {
      return a->dataset_size < b->dataset_size;
    });
    const std::filesystem::path path =
        dir / ("plot_" + key.first + "_" + key.second + ".dat");
    std::ofstream out(path);
    if (!out) {
      throw std::runtime_error("emit_plot_data: cannot open " + path.string());
    }
    for (const RunRecord* r : rows) {
      out << r->dataset_size << ' ' << format_double(r->error_integral) << '\n';
    }
    if (!out.flush()) {
      throw std::runtime_error("emit_plot_data: write failed for " + path.string());
    }
  }
}

}  // namespace imann
