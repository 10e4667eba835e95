// Copyright 2026 The ratioest Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ratioest/target.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace ratioest {

std::string_view to_string(ParamKind kind) noexcept
{
    switch (kind) {
    case ParamKind::RR:
        return "rr";
    case ParamKind::LRR:
        return "lrr";
    case ParamKind::OR:
        return "or";
    case ParamKind::LOR:
        return "lor";
    }
    return "?";
}

std::optional<TargetParameter> parse_target(std::string_view name)
{
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    for (ParamKind kind : {ParamKind::RR, ParamKind::LRR, ParamKind::OR, ParamKind::LOR}) {
        if (lower == to_string(kind)) {
            return TargetParameter{kind};
        }
    }
    return std::nullopt;
}

}  // namespace ratioest
