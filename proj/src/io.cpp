#include "dm/io.hpp"

#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace dm::io {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, ',')) out.push_back(trim(cur));
  return out;
}

double parse_real(const std::string& key, const std::string& s) {
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: key '" + key + "' has non-numeric value '" +
                                s + "'");
  }
}

long parse_int(const std::string& key, const std::string& s) {
  try {
    size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: key '" + key + "' has non-integer value '" +
                                s + "'");
  }
}

// little-endian scalar append (host is little-endian on every supported
// target; memcpy keeps it alias-safe)
template <class T>
void put(std::string& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

template <class T>
T take(const std::string& in, size_t& off) {
  if (off + sizeof(T) > in.size())
    throw std::runtime_error("binary array: truncated file");
  T v;
  std::memcpy(&v, in.data() + off, sizeof(T));
  off += sizeof(T);
  return v;
}

}  // namespace

// --- Config -------------------------------------------------------------------

std::string Config::get_str(const std::string& key) const {
  auto it = kv.find(key);
  if (it == kv.end())
    throw std::invalid_argument("config: missing required key '" + key + "'");
  return it->second;
}
std::string Config::get_str(const std::string& key, const std::string& dflt) const {
  auto it = kv.find(key);
  return it == kv.end() ? dflt : it->second;
}
double Config::get_real(const std::string& key) const {
  return parse_real(key, get_str(key));
}
double Config::get_real(const std::string& key, double dflt) const {
  auto it = kv.find(key);
  return it == kv.end() ? dflt : parse_real(key, it->second);
}
long Config::get_int(const std::string& key) const {
  return parse_int(key, get_str(key));
}
long Config::get_int(const std::string& key, long dflt) const {
  auto it = kv.find(key);
  return it == kv.end() ? dflt : parse_int(key, it->second);
}
bool Config::get_bool(const std::string& key) const {
  const std::string v = get_str(key);
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw std::invalid_argument("config: key '" + key + "' has non-boolean value '" +
                              v + "'");
}
bool Config::get_bool(const std::string& key, bool dflt) const {
  return has(key) ? get_bool(key) : dflt;
}
std::vector<double> Config::get_real_list(const std::string& key) const {
  std::vector<double> out;
  for (const auto& tok : split_list(get_str(key))) out.push_back(parse_real(key, tok));
  return out;
}
std::vector<double> Config::get_real_list(const std::string& key,
                                          const std::vector<double>& dflt) const {
  return has(key) ? get_real_list(key) : dflt;
}
std::vector<long> Config::get_int_list(const std::string& key) const {
  std::vector<long> out;
  for (const auto& tok : split_list(get_str(key))) out.push_back(parse_int(key, tok));
  return out;
}
std::vector<long> Config::get_int_list(const std::string& key,
                                       const std::vector<long>& dflt) const {
  return has(key) ? get_int_list(key) : dflt;
}

Config parse_config_text(const std::string& text) {
  Config cfg;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  " is not 'key = value': " + t);
    const std::string key = trim(t.substr(0, eq));
    const std::string val = trim(t.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("config: empty key on line " +
                                  std::to_string(lineno));
    cfg.kv[key] = val;
  }
  return cfg;
}

Config load_config(const std::string& path) {
  return parse_config_text(read_file(path));
}

void apply_override(Config& cfg, const std::string& spec) {
  const size_t eq = spec.find('=');
  if (eq == std::string::npos || eq == 0)
    throw std::invalid_argument("override must be key=value: " + spec);
  cfg.kv[trim(spec.substr(0, eq))] = trim(spec.substr(eq + 1));
}

std::string dump_config(const Config& cfg) {
  std::string out;
  for (const auto& [k, v] : cfg.kv) {
    out += k;
    out += " = ";
    out += v;
    out += '\n';
  }
  return out;
}

// --- CSV ----------------------------------------------------------------------

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header.size())
    throw std::invalid_argument("csv: row width " + std::to_string(cells.size()) +
                                " != header width " + std::to_string(header.size()));
  rows.push_back(std::move(cells));
}

std::string format_real(double v) {
  // shortest decimal form that parses back to the same double
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::stod(buf) == v) return buf;
  }
  return buf;
}

std::string format_int(long v) { return std::to_string(v); }

std::string render_csv(const CsvTable& table) {
  std::string out;
  auto emit_row = [&out](const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  emit_row(table.header);
  for (const auto& r : table.rows) emit_row(r);
  return out;
}

// --- binary arrays -------------------------------------------------------------

std::string encode_binary_array(const BinaryArray& a) {
  if (a.dtype != "f8" && a.dtype != "c16")
    throw std::invalid_argument("binary array: dtype must be f8 or c16");
  const uint64_t n = a.element_count();
  const size_t have = a.dtype == "f8" ? a.reals.size() : a.complexes.size();
  if (have != n)
    throw std::invalid_argument("binary array: payload size does not match shape");
  std::string out;
  out.append("DMARRAY1", 8);
  std::string dt = a.dtype;
  dt.resize(8, ' ');
  out += dt;
  put<uint32_t>(out, (uint32_t)a.shape.size());
  for (auto s : a.shape) put<uint64_t>(out, s);
  if (a.dtype == "f8") {
    for (double v : a.reals) put<double>(out, v);
  } else {
    for (const cplx& v : a.complexes) {
      put<double>(out, v.real());
      put<double>(out, v.imag());
    }
  }
  return out;
}

BinaryArray decode_binary_array(const std::string& bytes) {
  size_t off = 0;
  if (bytes.size() < 20 || bytes.compare(0, 8, "DMARRAY1") != 0)
    throw std::runtime_error("binary array: bad magic");
  off = 8;
  std::string dt = bytes.substr(off, 8);
  off += 8;
  while (!dt.empty() && dt.back() == ' ') dt.pop_back();
  BinaryArray a;
  a.dtype = dt;
  const uint32_t nd = take<uint32_t>(bytes, off);
  if (nd > 16) throw std::runtime_error("binary array: implausible rank");
  for (uint32_t i = 0; i < nd; ++i) a.shape.push_back(take<uint64_t>(bytes, off));
  const uint64_t n = a.element_count();
  if (a.dtype == "f8") {
    a.reals.reserve(n);
    for (uint64_t i = 0; i < n; ++i) a.reals.push_back(take<double>(bytes, off));
  } else if (a.dtype == "c16") {
    a.complexes.reserve(n);
    for (uint64_t i = 0; i < n; ++i) {
      const double re = take<double>(bytes, off);
      const double im = take<double>(bytes, off);
      a.complexes.emplace_back(re, im);
    }
  } else {
    throw std::runtime_error("binary array: unknown dtype '" + a.dtype + "'");
  }
  if (off != bytes.size()) throw std::runtime_error("binary array: trailing bytes");
  return a;
}

// --- filesystem ----------------------------------------------------------------

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& bytes) {
  const size_t slash = path.find_last_of('/');
  const std::string dir = slash == std::string::npos ? "." : path.substr(0, slash);
  const std::string tmp = dir + "/.tmp_" + std::to_string(::getpid()) + "_" +
                          (slash == std::string::npos ? path : path.substr(slash + 1));
  {
    std::FILE* f = std::fopen(tmp.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot open for writing: " + tmp);
    const size_t n = bytes.empty() ? 0 : std::fwrite(bytes.data(), 1, bytes.size(), f);
    const bool ok = n == bytes.size() && std::fflush(f) == 0 && ::fsync(fileno(f)) == 0;
    std::fclose(f);
    if (!ok) {
      std::remove(tmp.c_str());
      throw std::runtime_error("short write: " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("rename failed: " + tmp + " -> " + path + " (" +
                             std::strerror(errno) + ")");
  }
}

void write_csv_atomic(const std::string& path, const CsvTable& table) {
  write_file_atomic(path, render_csv(table));
}

void write_binary_atomic(const std::string& path, const BinaryArray& a) {
  write_file_atomic(path, encode_binary_array(a));
}

}  // namespace dm::io
