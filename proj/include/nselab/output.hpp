#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace nselab {

// %.17g; non-finite values as nan, inf, -inf.
std::string format_double(double v);

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
  CsvWriter& cell(double v);
  CsvWriter& cell(long long v);
  CsvWriter& cell(int v) { return cell(static_cast<long long>(v)); }
  CsvWriter& cell(const std::string& v);
  void end_row();

 private:
  std::ofstream out_;
  std::size_t columns_ = 0, current_ = 0;
};

// Pretty-printed with a trailing newline; NaN becomes null.
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

// Hex SHA-1 of "blob <size>\0<bytes>" (the git object id of the content).
std::string git_blob_sha1(const std::string& bytes);
std::string git_blob_sha1_file(const std::filesystem::path& path);

// manifest.json in dir: command, resolved config, seed, per-file {path, bytes,
// sha1} for every listed file, content_sha1 over all of that, and created.
void write_manifest(const std::filesystem::path& dir, const std::string& command, const nlohmann::json& config,
                    const std::vector<std::string>& files);

}  // namespace nselab
