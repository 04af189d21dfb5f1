#include "report.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace konus::cli {

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::string csv_line(const Row& row) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) line += ',';
        line += csv_cell(row[i]);
    }
    return line + '\n';
}

}  // namespace

OutputDir::OutputDir(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw InputError("cannot create output directory " + dir_.string() + ": " + ec.message());
}

void OutputDir::write_file(const std::string& name, const std::string& contents) {
    const auto path = dir_ / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + path.string());
    out << contents;
    if (!out) throw InputError("write failed for " + path.string());
    written_.push_back(name);
}

void OutputDir::write_csv(const std::string& name, const Row& header, const std::vector<Row>& rows) {
    std::string text = csv_line(header);
    for (const auto& r : rows) text += csv_line(r);
    write_file(name, text);
}

void OutputDir::write_text(const std::string& name, const std::string& text) { write_file(name, text); }

void OutputDir::write_matrix(const std::string& name, const Matrix<double>& values,
                             const std::vector<std::string>& rows, const std::vector<std::string>& columns) {
    Row header{"period"};
    header.insert(header.end(), columns.begin(), columns.end());
    std::vector<Row> body;
    for (std::size_t t = 0; t < values.rows(); ++t) {
        Row r{rows[t]};
        for (double v : values.row(t)) r.push_back(format_number(v));
        body.push_back(std::move(r));
    }
    write_csv(name, header, body);
}

void OutputDir::write_polytope(const std::string& stem, const Polytope& poly, const std::vector<std::string>& goods) {
    Row header{"label"};
    header.insert(header.end(), goods.begin(), goods.end());
    header.insert(header.end(), {"sense", "rhs"});
    std::vector<Row> rows;
    for (const auto& c : poly.constraints) {
        Row r{c.label};
        for (double v : c.coeffs) r.push_back(format_number(v));
        r.push_back(c.sense == Sense::Equal ? "=" : ">=");
        r.push_back(format_number(c.rhs));
        rows.push_back(std::move(r));
    }
    write_csv(stem + "_constraints.csv", header, rows);
    if (!poly.vertices_enumerated) return;
    Row vheader{"vertex"};
    vheader.insert(vheader.end(), goods.begin(), goods.end());
    std::vector<Row> vrows;
    for (std::size_t v = 0; v < poly.vertices.size(); ++v) {
        Row r{std::to_string(v + 1)};
        for (double x : poly.vertices[v]) r.push_back(format_number(x));
        vrows.push_back(std::move(r));
    }
    write_csv(stem + "_vertices.csv", vheader, vrows);
}

void OutputDir::write_manifest(RunManifest m) {
    nlohmann::ordered_json j;
    j["command"] = m.command;
    j["argv"] = m.argv;
    j["inputs"] = m.inputs;
    j["seed"] = m.seed ? nlohmann::ordered_json(*m.seed) : nlohmann::ordered_json(nullptr);
    j["omega"] = m.omega ? nlohmann::ordered_json(*m.omega) : nlohmann::ordered_json(nullptr);
    j["trials"] = m.trials ? nlohmann::ordered_json(*m.trials) : nlohmann::ordered_json(nullptr);
    j["tolerance"] = m.tolerance ? nlohmann::ordered_json(*m.tolerance) : nlohmann::ordered_json(nullptr);
    j["output_dir"] = dir_.string();
    j["outputs"] = written_;
    j["version"] = toolkit_version();
    std::string text = j.dump(2) + "\n";
    const auto path = dir_ / "manifest.json";
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + path.string());
    out << text;
}

std::filesystem::path resolve_output_dir(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("KONUS_OUT"); env && *env) return env;
    return "konus-out";
}

std::string toolkit_version() { return KONUS_VERSION; }

}  // namespace konus::cli
