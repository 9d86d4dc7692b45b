#pragma once

#include "tuplecert/interpretation.hpp"
#include "tuplecert/trs.hpp"

#include <fstream>
#include <sstream>
#include <string>

namespace testutil {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string data_path(const std::string& name) {
    return std::string(TUPLECERT_DATA_DIR) + "/" + name;
}

inline tuplecert::Trs load_trs(const std::string& name) {
    return tuplecert::parse_trs(read_file(data_path(name)));
}

inline tuplecert::Interpretation load_interp(const std::string& name, const tuplecert::Trs& trs) {
    return tuplecert::parse_interpretation(read_file(data_path(name)), trs);
}

// Builds a term from the rule-side syntax, e.g. "add (s 0) 0".
inline tuplecert::Term term(const tuplecert::Trs& trs, const std::string& text) {
    std::string src;
    // Reuse the rule parser with a vacuous right-hand side.
    (void)trs;
    throw std::logic_error("unused");
}

} // namespace testutil
