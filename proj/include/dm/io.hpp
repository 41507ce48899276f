#pragma once
// Run artifacts: flat key=value configs with typed accessors and overrides,
// long-format CSV tables, a flat binary array format (fixed header: dims,
// dtype, shape; little-endian payload), and JSON manifests. All writers are
// atomic (temp file in the target directory + rename).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dm/common.hpp"

namespace dm::io {

// --- configuration -----------------------------------------------------------

// Flat key = value configuration. Lines are `key = value`; blank lines and
// lines starting with '#' are ignored. Keys are dot-separated paths; values
// are scalars or comma-separated lists. Parsing is lossless up to whitespace:
// dump_config(parse_config_text(t)) reparses to the same map.
struct Config {
  std::map<std::string, std::string> kv;

  bool has(const std::string& key) const { return kv.count(key) > 0; }
  void set(const std::string& key, const std::string& value) { kv[key] = value; }

  // Typed accessors: throw std::invalid_argument on malformed values; the
  // one-argument forms throw on missing keys, the two-argument forms fall
  // back to the provided default.
  std::string get_str(const std::string& key) const;
  std::string get_str(const std::string& key, const std::string& dflt) const;
  double get_real(const std::string& key) const;
  double get_real(const std::string& key, double dflt) const;
  long get_int(const std::string& key) const;
  long get_int(const std::string& key, long dflt) const;
  bool get_bool(const std::string& key) const;
  bool get_bool(const std::string& key, bool dflt) const;
  std::vector<double> get_real_list(const std::string& key) const;
  std::vector<double> get_real_list(const std::string& key,
                                    const std::vector<double>& dflt) const;
  std::vector<long> get_int_list(const std::string& key) const;
  std::vector<long> get_int_list(const std::string& key,
                                 const std::vector<long>& dflt) const;
};

Config parse_config_text(const std::string& text);
Config load_config(const std::string& path);

// Applies a single `key=value` override string (CLI --override).
void apply_override(Config& cfg, const std::string& spec);

// Deterministic echo: keys in sorted order, `key = value` per line.
std::string dump_config(const Config& cfg);

// --- CSV ----------------------------------------------------------------------

// Long-format table: one header row naming every column, one row per record.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> cells);
};

// Shortest representation that round-trips a double exactly.
std::string format_real(double v);
std::string format_int(long v);

std::string render_csv(const CsvTable& table);

// --- binary arrays -------------------------------------------------------------

// Flat array file layout (all integers little-endian):
//   bytes 0..7   magic "DMARRAY1"
//   bytes 8..15  dtype, space-padded ASCII ("f8      " or "c16     ")
//   bytes 16..19 uint32 ndims
//   then uint64 shape[ndims], then the payload (row-major, little-endian).
struct BinaryArray {
  std::string dtype;             // "f8" (real) or "c16" (complex double)
  std::vector<uint64_t> shape;
  std::vector<double> reals;     // payload when dtype == "f8"
  std::vector<cplx> complexes;   // payload when dtype == "c16"
  uint64_t element_count() const {
    uint64_t n = 1;
    for (auto s : shape) n *= s;
    return n;
  }
};

std::string encode_binary_array(const BinaryArray& a);
BinaryArray decode_binary_array(const std::string& bytes);

// --- filesystem ----------------------------------------------------------------

// Writes bytes to `path` atomically: temp file in the same directory, fsync,
// rename. Throws std::runtime_error on any failure (no partial artifacts).
void write_file_atomic(const std::string& path, const std::string& bytes);
std::string read_file(const std::string& path);

void write_csv_atomic(const std::string& path, const CsvTable& table);
void write_binary_atomic(const std::string& path, const BinaryArray& a);

}  // namespace dm::io
