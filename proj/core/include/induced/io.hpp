#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "induced/types.hpp"

// Instance files and result records.  CSV: header x0,...,x{d-1}, one point
// per row.  JSON: {"dim": d, "points": [[...]], "query": [...]} plus optional
// metadata.  Doubles are serialized with full precision so write/read
// round-trips are exact.

namespace induced {

struct Instance {
  PointSet points;
  std::optional<Vec> query;
  // Optional generator metadata, echoed back on write when present.
  std::optional<std::uint64_t> seed;
  std::optional<std::string> generator;
};

enum class FileFormat { Csv, Json, Auto };

Instance ingest(const std::string& path, FileFormat format = FileFormat::Auto);
Instance ingest_stream(std::istream& in, FileFormat format);

void write_instance(std::ostream& out, const Instance& inst, FileFormat format);
void write_instance_file(const std::string& path, const Instance& inst, FileFormat format);

// Full-precision decimal rendering that parses back to the identical double.
std::string format_double(double v);

}  // namespace induced
