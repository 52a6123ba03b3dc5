#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace weylflow {

/// %.17g; round-trips every double.
std::string format_double(double x);

/// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns);
    /// Header comment lines (written as "# ...") before the column row.
    void comment(const std::string& line);
    CsvTable& row();
    CsvTable& add(double x);
    CsvTable& add(long x);
    CsvTable& add(int x) { return add(static_cast<long>(x)); }
    CsvTable& add(const std::string& s);
    std::string str() const;

private:
    std::vector<std::string> columns_;
    std::vector<std::string> comments_;
    std::vector<std::vector<std::string>> rows_;
};

struct WrittenFile {
    std::string name;
    std::string sha256;
    std::size_t bytes = 0;
};

/// Collects the files of one run and writes the manifest last.
class OutputDirectory {
public:
    explicit OutputDirectory(std::filesystem::path dir);

    const std::filesystem::path& path() const { return dir_; }
    void write(const std::string& name, const std::string& content);
    void write_json(const std::string& name, const nlohmann::ordered_json& doc);
    const std::vector<WrittenFile>& files() const { return files_; }
    nlohmann::ordered_json file_list() const;

private:
    std::filesystem::path dir_;
    std::vector<WrittenFile> files_;
};

}  // namespace weylflow
