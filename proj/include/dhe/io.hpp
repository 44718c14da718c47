#pragma once

// Deterministic text output: floats rendered with 17 significant digits so
// doubles round-trip losslessly and identical configs produce byte-identical
// files, and artifact files written to a temporary name and renamed into
// place so a failed run never leaves a partial output.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "dhe/errors.hpp"

namespace dhe {

class IoError : public Error {
public:
  explicit IoError(const std::string& what) : Error(what) {}
};

/// Lossless round-trip rendering of a double.
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Write-then-rename file sink. Nothing appears at the final path until
// commit(); an abandoned instance removes its temporary.
class AtomicFile {
public:
  explicit AtomicFile(const std::filesystem::path& path)
      : path_(path), tmp_(path.string() + ".tmp") {
    out_.open(tmp_, std::ios::binary | std::ios::trunc);
    if (!out_) throw IoError("cannot open " + tmp_.string() + " for writing");
  }

  ~AtomicFile() {
    if (!committed_) {
      out_.close();
      std::error_code ec;
      std::filesystem::remove(tmp_, ec);
    }
  }

  AtomicFile(const AtomicFile&) = delete;
  AtomicFile& operator=(const AtomicFile&) = delete;

  std::ostream& stream() { return out_; }

  void commit() {
    out_.flush();
    if (!out_) throw IoError("write failed for " + tmp_.string());
    out_.close();
    std::error_code ec;
    std::filesystem::rename(tmp_, path_, ec);
    if (ec) throw IoError("cannot rename " + tmp_.string() + " to " + path_.string() + ": " +
                          ec.message());
    committed_ = true;
  }

private:
  std::filesystem::path path_;
  std::filesystem::path tmp_;
  std::ofstream out_;
  bool committed_ = false;
};

}  // namespace dhe
