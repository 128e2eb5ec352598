#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "socv/ast.hpp"
#include "socv/lexer.hpp"

namespace socv {

// Parses a whole token stream (as produced by `tokenize`) into a Program.
// Stops at the first syntax error with a CompileError listing the expected
// tokens.
Program parse_program(std::vector<Token> tokens, std::shared_ptr<const std::string> file = nullptr);

// tokenize + parse_program.
Program parse_source(std::string_view source, std::string file_name = "<input>");

// Reads and parses a `.soc` file. Throws CompileError (with a spanless
// diagnostic) when the file cannot be read.
Program parse_file(const std::string& path);

// Canonical source rendering. Parsing the output yields the same AST
// (modulo spans and expression ids).
std::string pretty_print(const Program& p);
std::string pretty_print(const Expr& e);

}  // namespace socv
