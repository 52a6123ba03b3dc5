#include "weylflow/output.hpp"

#include <cstdio>
#include <fstream>

#include <openssl/evp.h>

#include "weylflow/errors.hpp"

namespace weylflow {

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error("digest", "SHA-256 computation failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 15];
    }
    return out;
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::comment(const std::string& line) { comments_.push_back(line); }

CsvTable& CsvTable::row() {
    rows_.emplace_back();
    return *this;
}

CsvTable& CsvTable::add(double x) {
    rows_.back().push_back(format_double(x));
    return *this;
}

CsvTable& CsvTable::add(long x) {
    rows_.back().push_back(std::to_string(x));
    return *this;
}

CsvTable& CsvTable::add(const std::string& s) {
    rows_.back().push_back(s);
    return *this;
}

std::string CsvTable::str() const {
    std::string out;
    for (const auto& c : comments_) out += "# " + c + "\n";
    for (std::size_t i = 0; i < columns_.size(); ++i) out += (i ? "," : "") + columns_[i];
    out += "\n";
    for (const auto& r : rows_) {
        for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + r[i];
        out += "\n";
    }
    return out;
}

OutputDirectory::OutputDirectory(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw ConfigError("cannot create output directory " + dir_.string() + ": " + ec.message());
}

void OutputDirectory::write(const std::string& name, const std::string& content) {
    std::ofstream out(dir_ / name, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out) throw ConfigError("cannot write " + (dir_ / name).string());
    files_.push_back({name, sha256_hex(content), content.size()});
}

void OutputDirectory::write_json(const std::string& name, const nlohmann::ordered_json& doc) {
    write(name, doc.dump(2) + "\n");
}

nlohmann::ordered_json OutputDirectory::file_list() const {
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& f : files_) list.push_back({{"name", f.name}, {"sha256", f.sha256}, {"bytes", f.bytes}});
    return list;
}

}  // namespace weylflow
