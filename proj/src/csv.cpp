#include "rovodef/csv.hpp"

#include <cstdarg>
#include <system_error>

#include "rovodef/errors.hpp"

namespace rovodef {

CsvWriter::CsvWriter(std::filesystem::path path) : path_(std::move(path)) {
    tmp_ = path_;
    tmp_ += ".tmp";
    if (!path_.parent_path().empty()) {
        std::error_code ec;
        std::filesystem::create_directories(path_.parent_path(), ec);
    }
    f_ = std::fopen(tmp_.string().c_str(), "wb");
    if (!f_) throw config_error("cannot open output file for writing: " + tmp_.string());
}

CsvWriter::~CsvWriter() {
    if (f_) std::fclose(f_);
    if (!committed_) {
        std::error_code ec;
        std::filesystem::remove(tmp_, ec);
    }
}

void CsvWriter::line(const std::string& text) {
    if (!f_) throw config_error("csv writer already committed: " + path_.string());
    std::fputs(text.c_str(), f_);
    std::fputc('\n', f_);
}

void CsvWriter::linef(const char* fmt, ...) {
    if (!f_) throw config_error("csv writer already committed: " + path_.string());
    va_list ap;
    va_start(ap, fmt);
    std::vfprintf(f_, fmt, ap);
    va_end(ap);
    std::fputc('\n', f_);
}

void CsvWriter::commit() {
    if (committed_) return;
    const bool ok = std::fflush(f_) == 0;
    const bool closed = std::fclose(f_) == 0;
    f_ = nullptr;
    if (!ok || !closed) throw config_error("write failure on " + tmp_.string());
    std::error_code ec;
    std::filesystem::rename(tmp_, path_, ec);
    if (ec)
        throw config_error("cannot move " + tmp_.string() + " into place: " + ec.message());
    committed_ = true;
}

}  // namespace rovodef
