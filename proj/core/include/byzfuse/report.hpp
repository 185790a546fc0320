// ============================================================================
// report.hpp -- result tables, CSV / manifest serialization, pretty printing
// ============================================================================
#pragma once
#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace byzfuse {

/// Empty cells are std::monostate.
using Cell = std::variant<std::monostate, double, long long, std::string>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

/// Doubles print as %.16e (17 significant digits) so equal results give
/// byte-identical files.
std::string format_cell(const Cell& cell);

/// RFC 4180: comma separated, CRLF line ends, fields quoted when they
/// contain a comma, quote, CR or LF; embedded quotes doubled.
std::string csv_escape(const std::string& field);
void write_csv(std::ostream& out, const Table& table);
std::string to_csv(const Table& table);

/// Fixed-width rendering with %.4g numbers for terminals.
void write_pretty(std::ostream& out, const Table& table);

/// Per-run provenance record.
struct RunManifest {
  std::string subcommand;
  std::string config_hash;
  std::string config_json;  ///< canonical config
  unsigned long long seed = 0;
  std::string version;
  std::string started_utc;
  std::string finished_utc;
  std::vector<std::string> outputs;
};

std::string to_json(const RunManifest& manifest);
std::string utc_timestamp();
std::string artifact_version();

/// Writes files atomically into a directory: each file goes to a temporary
/// name and is renamed on commit(). Destruction without commit() removes
/// everything this writer created.
class OutputSet {
 public:
  explicit OutputSet(std::filesystem::path dir);
  OutputSet(const OutputSet&) = delete;
  OutputSet& operator=(const OutputSet&) = delete;
  ~OutputSet();

  void add(const std::string& name, const std::string& contents);
  void commit();
  std::vector<std::string> names() const;
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::pair<std::string, std::filesystem::path>> staged_;
  std::vector<std::filesystem::path> committed_;
  bool done_ = false;
};

}  // namespace byzfuse
