#pragma once

#include "logcouple/json_io.hpp"
#include "logcouple/term.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace logcouple::cli {

/// Named elements and representations kept across REPL lines.
struct Session {
    Env elements;
    std::map<std::string, NaryRep> reps;
};

enum ExitCode { ok = 0, invalid_input = 1, discrepancy = 2 };

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, Session& session, std::ostream& out, std::ostream& err);

/// Line-oriented interactive loop over `in`.
int repl(std::istream& in, std::ostream& out, std::ostream& err, bool prompt);

/// Splits a line into words, honoring single and double quotes.
std::vector<std::string> split_words(const std::string& line);

}  // namespace logcouple::cli
