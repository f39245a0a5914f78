#pragma once

#include <string>
#include <vector>

namespace yqc {

// Locale-independent shortest round-trip formatting; empty cell for NaN.
std::string format_number(double value);

// CSV with LF line endings, '.' decimal, UTF-8. File output goes to a
// temporary name and is renamed atomically on close.
class CsvWriter {
 public:
  // path empty -> stdout
  CsvWriter(std::string path, const std::vector<std::string>& header);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void row(const std::vector<std::string>& cells);
  void close();  // finalize + atomic rename

 private:
  std::string path_;
  std::string tmp_path_;
  std::string buffer_;
  size_t columns_ = 0;
  bool open_ = true;
};

void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace yqc
