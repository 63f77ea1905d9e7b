#include "bekk/io.hpp"

#include "bekk/error.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

namespace bekk {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& pointer, const std::string& what) {
    throw Error(ErrorCode::Parse, "spec schema error at " + (pointer.empty() ? std::string("/") : pointer) + ": " + what);
}

std::size_t read_count(const json& doc, const std::string& key) {
    if (!doc.contains(key)) schema_error("/" + key, "missing field");
    const json& v = doc.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) schema_error("/" + key, "expected a non-negative integer");
    return v.get<std::size_t>();
}

Matrix read_matrix(const json& v, const std::string& pointer) {
    if (!v.is_array() || v.empty()) schema_error(pointer, "expected a non-empty array of rows");
    const std::size_t rows = v.size();
    std::size_t cols = 0;
    for (std::size_t r = 0; r < rows; ++r) {
        const std::string row_ptr = pointer + "/" + std::to_string(r);
        if (!v[r].is_array() || v[r].empty()) schema_error(row_ptr, "expected a non-empty array of numbers");
        if (r == 0) cols = v[r].size();
        if (v[r].size() != cols) schema_error(row_ptr, "row length differs from row 0");
    }
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            const json& x = v[r][c];
            if (!x.is_number()) schema_error(pointer + "/" + std::to_string(r) + "/" + std::to_string(c), "expected a number");
            m(r, c) = x.get<double>();
        }
    return m;
}

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string format_double(double v) {
    char buf[40];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf, static_cast<std::size_t>(n));
}

}  // namespace

ModelSpec parse_spec(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::Parse, std::string("spec is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) schema_error("", "expected a JSON object");

    ModelSpec spec;
    spec.d = read_count(doc, "d");
    spec.l = read_count(doc, "l");
    if (!doc.contains("A") || !doc["A"].is_array()) schema_error("/A", "expected an array of matrices");
    for (std::size_t i = 0; i < doc["A"].size(); ++i) spec.A.push_back(read_matrix(doc["A"][i], "/A/" + std::to_string(i)));
    if (!doc.contains("C")) schema_error("/C", "missing field");
    spec.C = read_matrix(doc["C"], "/C");
    if (doc.contains("A0") && !doc["A0"].is_null()) spec.A0 = read_matrix(doc["A0"], "/A0");
    return validate_spec(spec);
}

ModelSpec load_spec(const std::filesystem::path& file) {
    return parse_spec(read_file(file));
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

json spec_to_json(const ModelSpec& spec) {
    json a = json::array();
    for (const Matrix& m : spec.A) a.push_back(matrix_to_json(m));
    return json{{"d", spec.d},
                {"l", spec.l},
                {"A", std::move(a)},
                {"C", matrix_to_json(spec.C)},
                {"A0", spec.A0 ? matrix_to_json(*spec.A0) : json(nullptr)}};
}

std::string spec_digest(const ModelSpec& spec) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(spec_to_json(spec).dump())));
    return buf;
}

void write_file_atomic(const std::filesystem::path& file, std::string_view contents) {
    std::filesystem::path tmp = file;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::Io, "cannot open " + tmp.string() + " for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) throw Error(ErrorCode::Io, "write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, file, ec);
    if (ec) throw Error(ErrorCode::Io, "cannot rename " + tmp.string() + " to " + file.string() + ": " + ec.message());
}

std::string read_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + file.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string path_to_csv(const PathSample& path) {
    std::string out = "t";
    for (std::size_t i = 1; i <= path.d; ++i) out += ",x" + std::to_string(i);
    out += '\n';
    for (std::size_t t = 0; t < path.T; ++t) {
        out += std::to_string(t + 1);
        for (std::size_t i = 0; i < path.d; ++i) {
            out += ',';
            out += format_double(path.at(t, i));
        }
        out += '\n';
    }
    return out;
}

PathSample path_from_csv(std::string_view text) {
    std::size_t pos = 0;
    std::size_t line_no = 0;
    auto next_line = [&](std::string_view& line) {
        if (pos >= text.size()) return false;
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        line = text.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        pos = end + 1;
        ++line_no;
        return true;
    };
    auto split = [](std::string_view line) {
        std::vector<std::string_view> fields;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        return fields;
    };

    std::string_view line;
    if (!next_line(line)) throw Error(ErrorCode::Parse, "path CSV is empty");
    const auto header = split(line);
    if (header.size() < 2 || header[0] != "t") throw Error(ErrorCode::Parse, "path CSV header must be t,x1,...,xd");
    const std::size_t d = header.size() - 1;
    for (std::size_t i = 1; i <= d; ++i)
        if (header[i] != "x" + std::to_string(i))
            throw Error(ErrorCode::Parse, "path CSV header column " + std::to_string(i + 1) + " must be x" + std::to_string(i));

    std::vector<double> data;
    while (next_line(line)) {
        if (line.empty()) continue;
        const auto fields = split(line);
        if (fields.size() != d + 1)
            throw Error(ErrorCode::Parse, "path CSV line " + std::to_string(line_no) + ": expected " +
                                              std::to_string(d + 1) + " fields");
        for (std::size_t i = 1; i <= d; ++i) {
            const std::string field(fields[i]);
            char* end = nullptr;
            const double v = std::strtod(field.c_str(), &end);
            if (field.empty() || end != field.c_str() + field.size())
                throw Error(ErrorCode::Parse, "path CSV line " + std::to_string(line_no) + ": bad number '" + field + "'");
            data.push_back(v);
        }
    }
    if (data.empty()) throw Error(ErrorCode::Parse, "path CSV has no data rows");
    return make_path(d, std::move(data));
}

json path_metadata(const PathSample& path) {
    return json{{"tool_version", kToolVersion}, {"seed", path.seed},       {"burnin", path.burnin},
                {"T", path.T},                  {"d", path.d},             {"spec_digest", path.spec_digest},
                {"diverged", path.diverged},    {"diverged_at", path.diverged_at}};
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
    std::filesystem::path p = csv;
    p += ".meta.json";
    return p;
}

PathSample load_path(const std::filesystem::path& csv) {
    PathSample path = path_from_csv(read_file(csv));
    const auto meta_file = sidecar_path(csv);
    if (std::filesystem::exists(meta_file)) {
        try {
            const json meta = json::parse(read_file(meta_file));
            path.seed = meta.value("seed", std::uint64_t{0});
            path.burnin = meta.value("burnin", std::size_t{0});
            path.spec_digest = meta.value("spec_digest", std::string{});
            path.diverged = meta.value("diverged", false);
            path.diverged_at = meta.value("diverged_at", std::size_t{0});
        } catch (const json::exception& e) {
            throw Error(ErrorCode::Parse, "bad path metadata " + meta_file.string() + ": " + e.what());
        }
    }
    return path;
}

}  // namespace bekk
