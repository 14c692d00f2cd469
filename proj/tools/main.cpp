#include "cli.hpp"

#include <iostream>
#include <unistd.h>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.size() == 1 && args[0] == "repl")
        return logcouple::cli::repl(std::cin, std::cout, std::cerr, isatty(STDIN_FILENO));
    logcouple::cli::Session session;
    return logcouple::cli::run(args, session, std::cout, std::cerr);
}
