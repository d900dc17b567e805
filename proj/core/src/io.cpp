#include "induced/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace induced {

namespace {

using nlohmann::json;

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& tok, std::size_t lineNo) {
  const char* begin = tok.c_str();
  const char* end = begin + tok.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end > begin && (end[-1] == ' ' || end[-1] == '\t')) --end;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    throw ParseError("not a number: '" + tok + "'", lineNo);
  return value;
}

Instance ingest_csv(std::istream& in) {
  std::string line;
  std::size_t lineNo = 0;
  if (!std::getline(in, line)) throw ParseError("empty file", 1);
  ++lineNo;
  const std::vector<std::string> header = split_csv_row(line);
  const int d = static_cast<int>(header.size());
  for (int i = 0; i < d; ++i) {
    const std::string expect = "x" + std::to_string(i);
    if (header[i] != expect)
      throw ParseError("bad header column '" + header[i] + "', expected '" + expect + "'", 1);
  }
  std::vector<double> coords;
  while (std::getline(in, line)) {
    ++lineNo;
    if (line.empty()) continue;
    const std::vector<std::string> row = split_csv_row(line);
    if (static_cast<int>(row.size()) != d)
      throw ParseError("ragged row: " + std::to_string(row.size()) + " fields, expected " +
                           std::to_string(d),
                       lineNo);
    for (const std::string& tok : row) coords.push_back(parse_double(tok, lineNo));
  }
  if (coords.empty()) throw ParseError("no data rows", lineNo);
  Instance inst;
  inst.points = PointSet(d, std::move(coords));
  return inst;
}

Instance ingest_json(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("json: ") + e.what());
  }
  if (!j.contains("dim") || !j.contains("points"))
    throw ParseError("json: missing 'dim' or 'points'");
  const int d = j["dim"].get<int>();
  if (d <= 0) throw ParseError("json: dim must be positive");
  std::vector<double> coords;
  for (const auto& row : j["points"]) {
    if (static_cast<int>(row.size()) != d)
      throw ParseError("json: point of length " + std::to_string(row.size()) + ", expected dim " +
                       std::to_string(d));
    for (const auto& v : row) coords.push_back(v.get<double>());
  }
  if (coords.empty()) throw ParseError("json: empty point list");
  Instance inst;
  inst.points = PointSet(d, std::move(coords));
  if (j.contains("query") && !j["query"].is_null()) {
    Vec q;
    for (const auto& v : j["query"]) q.push_back(v.get<double>());
    if (static_cast<int>(q.size()) != d) throw ParseError("json: query length mismatch");
    inst.query = std::move(q);
  }
  if (j.contains("seed")) inst.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("generator")) inst.generator = j["generator"].get<std::string>();
  return inst;
}

bool json_extension(const std::string& path) {
  return path.size() >= 5 && path.substr(path.size() - 5) == ".json";
}

bool looks_like_json(const std::string& path) {
  if (json_extension(path)) return true;
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") return false;
  std::ifstream f(path);
  char ch = 0;
  while (f.get(ch) && (ch == ' ' || ch == '\n' || ch == '\t' || ch == '\r')) {
  }
  return ch == '{';
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  // Shortest representation that round-trips is fine; %.17g always does.
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Instance ingest_stream(std::istream& in, FileFormat format) {
  if (format == FileFormat::Csv) return ingest_csv(in);
  if (format == FileFormat::Json) return ingest_json(in);
  throw ParseError("ingest_stream: format must be explicit");
}

Instance ingest(const std::string& path, FileFormat format) {
  if (format == FileFormat::Auto)
    format = looks_like_json(path) ? FileFormat::Json : FileFormat::Csv;
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open '" + path + "'");
  return ingest_stream(f, format);
}

void write_instance(std::ostream& out, const Instance& inst, FileFormat format) {
  const PointSet& S = inst.points;
  if (format == FileFormat::Csv) {
    for (int c = 0; c < S.dim(); ++c) out << (c ? "," : "") << "x" << c;
    out << "\n";
    for (int id = 0; id < S.size(); ++id) {
      const auto row = S[id];
      for (int c = 0; c < S.dim(); ++c) out << (c ? "," : "") << format_double(row[c]);
      out << "\n";
    }
    return;
  }
  json j;
  j["schema"] = 1;
  j["dim"] = S.dim();
  j["n"] = S.size();
  if (inst.seed) j["seed"] = *inst.seed;
  if (inst.generator) j["generator"] = *inst.generator;
  json pts = json::array();
  for (int id = 0; id < S.size(); ++id) {
    json row = json::array();
    for (double v : S[id]) row.push_back(v);
    pts.push_back(std::move(row));
  }
  j["points"] = std::move(pts);
  if (inst.query) {
    json q = json::array();
    for (double v : *inst.query) q.push_back(v);
    j["query"] = std::move(q);
  }
  out << j.dump(2) << "\n";
}

void write_instance_file(const std::string& path, const Instance& inst, FileFormat format) {
  if (format == FileFormat::Auto) format = json_extension(path) ? FileFormat::Json : FileFormat::Csv;
  std::ofstream f(path);
  if (!f) throw ParseError("cannot open '" + path + "' for writing");
  write_instance(f, inst, format);
}

}  // namespace induced
