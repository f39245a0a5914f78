#include "yqc/table_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "yqc/errors.hpp"

namespace yqc {

std::string format_number(double value) {
  if (std::isnan(value)) return "";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(std::string path, const std::vector<std::string>& header)
    : path_(std::move(path)) {
  if (!path_.empty()) tmp_path_ = path_ + ".tmp";
  columns_ = header.size();
  row(header);
}

CsvWriter::~CsvWriter() {
  if (open_) {
    try {
      close();
    } catch (...) {
    }
  }
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (!open_) throw Error("CsvWriter: writer already closed");
  if (cells.size() != columns_)
    throw Error("CsvWriter: row width does not match the header");
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) buffer_ += ',';
    buffer_ += cells[i];
  }
  buffer_ += '\n';
}

void CsvWriter::close() {
  if (!open_) return;
  open_ = false;
  if (path_.empty()) {
    std::cout << buffer_;
    std::cout.flush();
    return;
  }
  write_text_atomic(path_, buffer_);
}

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + tmp + "' for writing");
    out << content;
    if (!out) throw Error("write failed for '" + tmp + "'");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace yqc
