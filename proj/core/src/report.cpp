// ============================================================================
// report.cpp -- result tables, CSV / manifest serialization, pretty printing
// ============================================================================
#include "byzfuse/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#ifndef BYZFUSE_VERSION
#define BYZFUSE_VERSION "0.0.0"
#endif

namespace byzfuse {

namespace {

struct CellPrinter {
  bool pretty;
  std::string operator()(std::monostate) const { return {}; }
  std::string operator()(double d) const {
    char buf[64];
    std::snprintf(buf, sizeof buf, pretty ? "%.4g" : "%.16e", d);
    return buf;
  }
  std::string operator()(long long v) const { return std::to_string(v); }
  std::string operator()(const std::string& s) const { return s; }
};

}  // namespace

std::string format_cell(const Cell& cell) { return std::visit(CellPrinter{false}, cell); }

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_csv(std::ostream& out, const Table& table) {
  auto line = [&out](const auto& fields, auto&& to_text) {
    for (std::size_t k = 0; k < fields.size(); ++k) {
      if (k) out << ',';
      out << csv_escape(to_text(fields[k]));
    }
    out << "\r\n";
  };
  line(table.header, [](const std::string& s) { return s; });
  for (const auto& row : table.rows) line(row, [](const Cell& c) { return format_cell(c); });
}

std::string to_csv(const Table& table) {
  std::ostringstream os;
  write_csv(os, table);
  return os.str();
}

void write_pretty(std::ostream& out, const Table& table) {
  std::vector<std::vector<std::string>> text;
  text.push_back(table.header);
  for (const auto& row : table.rows) {
    std::vector<std::string> r;
    for (const auto& c : row) r.push_back(std::visit(CellPrinter{true}, c));
    text.push_back(std::move(r));
  }
  std::vector<std::size_t> width(table.header.size(), 0);
  for (const auto& r : text)
    for (std::size_t k = 0; k < r.size() && k < width.size(); ++k)
      width[k] = std::max(width[k], r[k].size());
  for (const auto& r : text) {
    for (std::size_t k = 0; k < r.size() && k < width.size(); ++k) {
      out << (k ? "  " : "") << r[k] << std::string(width[k] - r[k].size(), ' ');
    }
    out << '\n';
  }
}

std::string to_json(const RunManifest& m) {
  nlohmann::json doc;
  doc["subcommand"] = m.subcommand;
  doc["config_hash"] = m.config_hash;
  doc["config"] = nlohmann::json::parse(m.config_json);
  doc["seed"] = m.seed;
  doc["version"] = m.version;
  doc["started_utc"] = m.started_utc;
  doc["finished_utc"] = m.finished_utc;
  doc["outputs"] = m.outputs;
  return doc.dump(2) + "\n";
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string artifact_version() { return BYZFUSE_VERSION; }

OutputSet::OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec || !std::filesystem::is_directory(dir_))
    throw std::runtime_error("cannot create output directory '" + dir_.string() + "'");
}

OutputSet::~OutputSet() {
  if (done_) return;
  std::error_code ec;
  for (const auto& [name, tmp] : staged_) std::filesystem::remove(tmp, ec);
  for (const auto& p : committed_) std::filesystem::remove(p, ec);
}

void OutputSet::add(const std::string& name, const std::string& contents) {
  const auto tmp = dir_ / (name + ".partial");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << contents;
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  staged_.emplace_back(name, tmp);
}

void OutputSet::commit() {
  for (const auto& [name, tmp] : staged_) {
    const auto final_path = dir_ / name;
    std::filesystem::rename(tmp, final_path);
    committed_.push_back(final_path);
  }
  staged_.clear();
  done_ = true;
}

std::vector<std::string> OutputSet::names() const {
  std::vector<std::string> out;
  for (const auto& p : committed_) out.push_back(p.filename().string());
  for (const auto& [name, tmp] : staged_) out.push_back(name);
  return out;
}

}  // namespace byzfuse
