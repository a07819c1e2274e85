#include "sqgt/serialize.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sqgt {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json code_fields(const CodeMatrix& code) {
    ordered_json j;
    j["q"] = code.alphabet_size();
    j["n"] = code.rows();
    j["N"] = code.cols();
    j["layout"] = "tests-by-subjects";
    ordered_json rows = ordered_json::array();
    for (int r = 0; r < code.rows(); ++r) {
        ordered_json row = ordered_json::array();
        for (int c = 0; c < code.cols(); ++c) row.push_back(code.at(r, c));
        rows.push_back(std::move(row));
    }
    j["matrix"] = std::move(rows);
    return j;
}

CodeMatrix code_from_fields(const ordered_json& j) {
    const int q = j.at("q").get<int>();
    const int n = j.at("n").get<int>();
    const int N = j.at("N").get<int>();
    if (j.contains("layout") && j.at("layout").get<std::string>() != "tests-by-subjects")
        throw ValidationError("code file: unsupported layout");
    const auto& rows = j.at("matrix");
    if (static_cast<int>(rows.size()) != n)
        throw ValidationError("code file: row count does not match n");
    std::vector<int> entries;
    entries.reserve(static_cast<size_t>(n) * N);
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != N)
            throw ValidationError("code file: column count does not match N");
        for (const auto& e : row) entries.push_back(e.get<int>());
    }
    return CodeMatrix(n, N, q, std::move(entries));
}

ordered_json parse(const std::string& text) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed JSON: ") + e.what());
    }
}

// Re-home nlohmann type/missing-key errors as validation errors.
template <typename Fn>
auto checked_fields(Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("bad field in JSON: ") + e.what());
    }
}

}  // namespace

std::string to_json(const CodeMatrix& code) { return code_fields(code).dump(2) + "\n"; }

std::string to_json(const Quantizer& quantizer) {
    ordered_json j;
    j["Q"] = quantizer.num_levels();
    if (quantizer.is_equidistant())
        j["eta"] = quantizer.step();
    else
        j["thresholds"] = quantizer.thresholds();
    return j.dump(2) + "\n";
}

std::string to_json(const Syndrome& syndrome) {
    ordered_json j;
    j["outcomes"] = syndrome.values;
    return j.dump(2) + "\n";
}

std::string to_json(const DisjunctReport& report) {
    ordered_json j;
    j["disjunct"] = report.is_disjunct;
    if (report.witness) {
        ordered_json w;
        w["codeword"] = report.witness->codeword;
        w["covering"] = report.witness->covering;
        j["witness"] = std::move(w);
    } else {
        j["witness"] = nullptr;
    }
    return j.dump(2) + "\n";
}

std::string to_json(const ConcatCode& code) {
    ordered_json j = code_fields(code.code);
    j["K"] = code.num_blocks;
    j["block_size"] = code.block_size;
    j["eta"] = code.step;
    j["u"] = code.defect_bound;
    return j.dump(2) + "\n";
}

CodeMatrix code_from_json(const std::string& text) {
    return checked_fields([&] { return code_from_fields(parse(text)); });
}

Quantizer quantizer_from_json(const std::string& text) {
    return checked_fields([&] {
        ordered_json j = parse(text);
        const int Q = j.at("Q").get<int>();
        if (j.contains("eta")) return Quantizer::equidistant(Q, j.at("eta").get<long long>());
        auto thresholds = j.at("thresholds").get<std::vector<long long>>();
        Quantizer quantizer(std::move(thresholds));
        if (quantizer.num_levels() != Q)
            throw ValidationError("quantizer file: Q does not match threshold count");
        return quantizer;
    });
}

Syndrome syndrome_from_json(const std::string& text) {
    return checked_fields([&] {
        ordered_json j = parse(text);
        Syndrome s(j.at("outcomes").get<std::vector<int>>());
        for (int v : s.values)
            if (v < 0) throw ValidationError("syndrome file: negative outcome " + std::to_string(v));
        return s;
    });
}

ConcatCode concat_from_json(const std::string& text) {
    return checked_fields([&] {
        ordered_json j = parse(text);
        ConcatCode out;
        out.code = code_from_fields(j);
        out.num_blocks = j.at("K").get<int>();
        out.block_size = j.at("block_size").get<int>();
        out.step = j.at("eta").get<long long>();
        out.defect_bound = j.at("u").get<int>();
        if (out.num_blocks < 1 || out.block_size < 1 ||
            out.num_blocks * out.block_size != out.code.cols())
            throw ValidationError("concat file: K * block_size does not match N");
        if (out.step < 1 || out.defect_bound < 1)
            throw ValidationError("concat file: eta and u must be >= 1");
        // Recover the binary base from block 1 (scaled by eta).
        std::vector<int> base_entries;
        base_entries.reserve(static_cast<size_t>(out.code.rows()) * out.block_size);
        for (int r = 0; r < out.code.rows(); ++r)
            for (int c = 0; c < out.block_size; ++c) {
                const int e = out.code.at(r, c);
                if (e % out.step != 0 || e / out.step > 1)
                    throw ValidationError(
                        "concat file: first block is not eta times a binary code");
                base_entries.push_back(static_cast<int>(e / out.step));
            }
        out.base = CodeMatrix(out.code.rows(), out.block_size, 2, std::move(base_entries));
        // The remaining blocks must be the scaled copies the decoder expects.
        for (int j_block = 2; j_block <= out.num_blocks; ++j_block) {
            const long long mult = out.step * block_multiplier(out.defect_bound, j_block);
            for (int r = 0; r < out.code.rows(); ++r)
                for (int c = 0; c < out.block_size; ++c) {
                    const long long expected = mult * out.base.at(r, c);
                    if (out.code.at(r, (j_block - 1) * out.block_size + c) != expected)
                        throw ValidationError("concat file: block " + std::to_string(j_block) +
                                              " is not the expected multiple of the base");
                }
        }
        return out;
    });
}

std::string code_to_csv(const CodeMatrix& code) {
    std::ostringstream os;
    for (int r = 0; r < code.rows(); ++r) {
        for (int c = 0; c < code.cols(); ++c) {
            if (c > 0) os << ',';
            os << code.at(r, c);
        }
        os << '\n';
    }
    return os.str();
}

CodeMatrix code_from_csv(const std::string& text, int alphabet_size) {
    std::vector<std::vector<int>> rows;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<int> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            try {
                row.push_back(std::stoi(cell));
            } catch (const std::exception&) {
                throw ValidationError("code CSV: bad cell '" + cell + "'");
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ValidationError("code CSV: empty file");
    const size_t cols = rows.front().size();
    std::vector<int> entries;
    int max_entry = 0;
    for (const auto& row : rows) {
        if (row.size() != cols) throw ValidationError("code CSV: ragged rows");
        for (int e : row) {
            entries.push_back(e);
            max_entry = std::max(max_entry, e);
        }
    }
    const int q = alphabet_size > 0 ? alphabet_size : std::max(2, max_entry + 1);
    return CodeMatrix(static_cast<int>(rows.size()), static_cast<int>(cols), q,
                      std::move(entries));
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ValidationError("cannot open for writing: " + path);
    os << contents;
    if (!os) throw ValidationError("failed writing: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ValidationError("cannot open: " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

CodeMatrix load_code(const std::string& path, int alphabet_size) {
    const std::string text = read_file(path);
    if (ends_with(path, ".csv")) return code_from_csv(text, alphabet_size);
    return code_from_json(text);
}

LoadedCode load_any_code(const std::string& path, int alphabet_size) {
    const std::string text = read_file(path);
    LoadedCode out;
    if (ends_with(path, ".csv")) {
        out.code = code_from_csv(text, alphabet_size);
        return out;
    }
    ordered_json j = parse(text);
    if (j.contains("K")) {
        out.concat = concat_from_json(text);
        out.code = out.concat->code;
    } else {
        out.code = checked_fields([&] { return code_from_fields(j); });
    }
    return out;
}

}  // namespace sqgt
