// Copyright 2026 The ratioest Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ratioest/replay_file.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "ratioest/error.hpp"

namespace ratioest {

namespace {

bool is_bit(char c) { return c == '0' || c == '1'; }

}  // namespace

std::vector<ObservationPair> read_replay(std::istream& in)
{
    std::vector<ObservationPair> pairs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (line.size() != 3 || !is_bit(line[0]) || line[1] != ' ' || !is_bit(line[2])) {
            throw InvalidConfig("replay line " + std::to_string(line_no) +
                                ": expected \"b b\" with b in {0,1}, got \"" + line + "\"");
        }
        pairs.push_back({static_cast<std::uint8_t>(line[0] - '0'),
                         static_cast<std::uint8_t>(line[2] - '0')});
    }
    return pairs;
}

std::vector<ObservationPair> read_replay_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidConfig("cannot open replay file " + path.string());
    }
    return read_replay(in);
}

void write_replay(std::ostream& out, std::span<const ObservationPair> pairs)
{
    std::string buf;
    buf.reserve(pairs.size() * 4);
    for (const ObservationPair& p : pairs) {
        buf.push_back(p.first != 0 ? '1' : '0');
        buf.push_back(' ');
        buf.push_back(p.second != 0 ? '1' : '0');
        buf.push_back('\n');
    }
    out << buf;
}

void write_replay_file(const std::filesystem::path& path, std::span<const ObservationPair> pairs)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InvalidConfig("cannot write replay file " + path.string());
    }
    write_replay(out, pairs);
    if (!out) {
        throw InvalidConfig("write failed for " + path.string());
    }
}

}  // namespace ratioest
