#pragma once

#include <cstdio>
#include <filesystem>
#include <string>

namespace rovodef {

inline constexpr const char* csv_format_version = "# rovodef-csv v1";

// CSV writer with atomic commit: rows go to "<path>.tmp" and the file is
// renamed into place by commit(). A writer destroyed without commit removes
// the partial file, so failed runs never leave truncated output behind.
class CsvWriter {
public:
    explicit CsvWriter(std::filesystem::path path);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void line(const std::string& text);          // raw line (headers, comments)
    void linef(const char* fmt, ...);            // printf-style row
    void commit();

private:
    std::filesystem::path path_;
    std::filesystem::path tmp_;
    std::FILE* f_ = nullptr;
    bool committed_ = false;
};

}  // namespace rovodef
