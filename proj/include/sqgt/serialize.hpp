#pragma once

#include <string>

#include "sqgt/construct.hpp"

namespace sqgt {

// JSON text forms. Layout is fixed so identical values serialize to
// identical bytes.
std::string to_json(const CodeMatrix& code);
std::string to_json(const Quantizer& quantizer);
std::string to_json(const Syndrome& syndrome);
std::string to_json(const DisjunctReport& report);
std::string to_json(const ConcatCode& code);

CodeMatrix code_from_json(const std::string& text);
Quantizer quantizer_from_json(const std::string& text);
Syndrome syndrome_from_json(const std::string& text);
ConcatCode concat_from_json(const std::string& text);

/// Headerless CSV, one row per test.
std::string code_to_csv(const CodeMatrix& code);
/// Parses CSV; alphabet_size 0 infers the minimal alphabet max(2, 1+max entry).
CodeMatrix code_from_csv(const std::string& text, int alphabet_size = 0);

// File helpers. Loading a code dispatches on extension (.json / .csv) and
// load_any_code accepts plain and concatenated code files alike.
void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);
CodeMatrix load_code(const std::string& path, int alphabet_size = 0);

struct LoadedCode {
    CodeMatrix code;
    std::optional<ConcatCode> concat;  // set when the file carries block structure
};
LoadedCode load_any_code(const std::string& path, int alphabet_size = 0);

}  // namespace sqgt
