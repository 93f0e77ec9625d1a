#ifndef SLOWLIGHT_CSVIO_HPP
#define SLOWLIGHT_CSVIO_HPP

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace slowlight {

// CSV with '#'-prefixed header lines. Written to a temp file first and
// renamed into place so interrupted runs never leave partial outputs.
class CsvWriter {
 public:
  CsvWriter(std::filesystem::path path,
            const std::vector<std::pair<std::string, std::string>>& header,
            const std::vector<std::string>& columns)
      : final_path_(std::move(path)), tmp_path_(final_path_.string() + ".tmp") {
    std::filesystem::create_directories(final_path_.parent_path().empty()
                                            ? "."
                                            : final_path_.parent_path().string());
    out_.open(tmp_path_);
    if (!out_) throw std::runtime_error("cannot open output file: " + tmp_path_.string());
    out_.precision(12);
    for (const auto& [k, v] : header) out_ << "# " << k << " = " << v << "\n";
    out_ << "# ";
    for (std::size_t i = 0; i < columns.size(); ++i)
      out_ << (i ? "," : "") << columns[i];
    out_ << "\n";
  }

  template <typename... Ts>
  void row(Ts... vals) {
    bool first = true;
    ((out_ << (first ? "" : ","), first = false, out_ << vals), ...);
    out_ << "\n";
  }

  void close() {
    if (out_.is_open()) {
      out_.close();
      std::filesystem::rename(tmp_path_, final_path_);
    }
  }

  ~CsvWriter() {
    try {
      close();
    } catch (...) {
    }
  }

 private:
  std::filesystem::path final_path_;
  std::filesystem::path tmp_path_;
  std::ofstream out_;
};

inline void write_key_values(const std::filesystem::path& path,
                             const std::vector<std::pair<std::string, std::string>>& kv) {
  const std::filesystem::path tmp(path.string() + ".tmp");
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot open output file: " + tmp.string());
    for (const auto& [k, v] : kv) out << k << " = " << v << "\n";
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace slowlight

#endif
