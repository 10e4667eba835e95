// Copyright 2026 The ratioest Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "ratioest/population.hpp"

namespace ratioest {

/// Text format for recorded observation pairs: one pair per line written as
/// "b b" with b in {0,1}. Lines starting with '#' and blank lines are
/// skipped; LF and CRLF endings are both accepted.
std::vector<ObservationPair> read_replay(std::istream& in);
std::vector<ObservationPair> read_replay_file(const std::filesystem::path& path);

void write_replay(std::ostream& out, std::span<const ObservationPair> pairs);
void write_replay_file(const std::filesystem::path& path, std::span<const ObservationPair> pairs);

}  // namespace ratioest
