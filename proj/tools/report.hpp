#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "konus/core.hpp"
#include "konus/forecast.hpp"

namespace konus::cli {

/// Shortest decimal that reads back to the same double.
std::string format_number(double v);

using Row = std::vector<std::string>;

/// Parameters of one invocation. `argv` is what `replay` re-executes.
struct RunManifest {
    std::string command;
    std::vector<std::string> argv;
    std::vector<std::string> inputs;
    std::optional<std::uint64_t> seed;
    std::optional<double> omega;
    std::optional<std::size_t> trials;
    std::optional<double> tolerance;
};

class OutputDir {
public:
    explicit OutputDir(std::filesystem::path dir);

    const std::filesystem::path& path() const noexcept { return dir_; }
    void write_csv(const std::string& name, const Row& header, const std::vector<Row>& rows);
    void write_text(const std::string& name, const std::string& text);
    /// Period-by-good table in the layout read by load_trade_statistics.
    void write_matrix(const std::string& name, const Matrix<double>& values, const std::vector<std::string>& rows,
                      const std::vector<std::string>& columns);
    void write_polytope(const std::string& stem, const Polytope& poly, const std::vector<std::string>& goods);
    /// Writes manifest.json listing everything written so far.
    void write_manifest(RunManifest manifest);

private:
    void write_file(const std::string& name, const std::string& contents);

    std::filesystem::path dir_;
    std::vector<std::string> written_;
};

/// --out if given, else $KONUS_OUT, else ./konus-out.
std::filesystem::path resolve_output_dir(const std::string& flag);

std::string toolkit_version();

}  // namespace konus::cli
