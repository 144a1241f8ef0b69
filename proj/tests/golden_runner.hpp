#pragma once

// Runs the commands listed in golden/commands.txt through the CLI entry point.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cli.hpp"

namespace golden {

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;

    // What a golden file records: stdout, then stderr when there is any.
    std::string transcript() const { return err.empty() ? out : out + "--- stderr\n" + err; }
};

inline Outcome invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    Outcome o;
    o.code = fotrans::cli::run(args, out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

// Whitespace separated, double quotes group.
inline std::vector<std::string> split_args(const std::string& line) {
    std::vector<std::string> out;
    std::string current;
    bool quoted = false, pending = false;
    for (char c : line) {
        if (c == '"') {
            quoted = !quoted;
            pending = true;
        } else if (!quoted && (c == ' ' || c == '\t')) {
            if (pending) out.push_back(current);
            current.clear();
            pending = false;
        } else {
            current += c;
            pending = true;
        }
    }
    if (pending) out.push_back(current);
    return out;
}

inline std::string replace_all(std::string s, const std::string& from, const std::string& to) {
    for (auto pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) s.replace(pos, from.size(), to);
    return s;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

struct Case {
    std::string name;
    int code = 0;
    std::vector<std::string> args;
};

/// Lines "name exit-code args..."; @DATA@ expands to data_dir.
inline std::vector<Case> manifest(const std::string& golden_dir, const std::string& data_dir) {
    std::ifstream in(golden_dir + "/commands.txt");
    if (!in) throw std::runtime_error("cannot read " + golden_dir + "/commands.txt");
    std::vector<Case> cases;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_args(replace_all(line, "@DATA@", data_dir));
        if (fields.size() < 3) throw std::runtime_error("malformed manifest line: " + line);
        cases.push_back(Case{fields[0], std::stoi(fields[1]), {fields.begin() + 2, fields.end()}});
    }
    return cases;
}

}  // namespace golden
