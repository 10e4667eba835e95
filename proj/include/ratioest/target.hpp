// Copyright 2026 The ratioest Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string_view>

namespace ratioest {

enum class ParamKind { RR, LRR, OR, LOR };

/// The quantity being estimated. The success offset `alpha` and the accuracy
/// constant `c` are fixed by the kind.
class TargetParameter {
public:
    constexpr explicit TargetParameter(ParamKind kind) noexcept : kind_(kind) {}

    constexpr ParamKind kind() const noexcept { return kind_; }

    /// 1 for RR/OR, 0 for LRR/LOR.
    constexpr int alpha() const noexcept
    {
        return (kind_ == ParamKind::RR || kind_ == ParamKind::OR) ? 1 : 0;
    }

    /// 1 for RR/OR, 5/4 for LRR/LOR.
    constexpr double c() const noexcept { return alpha() == 1 ? 1.0 : 1.25; }

    /// RR and LRR use the coin-flip transform, OR and LOR the paired one.
    constexpr bool uses_risk_transform() const noexcept
    {
        return kind_ == ParamKind::RR || kind_ == ParamKind::LRR;
    }

    constexpr bool is_logarithmic() const noexcept { return alpha() == 0; }

    friend constexpr bool operator==(TargetParameter, TargetParameter) = default;

private:
    ParamKind kind_;
};

inline constexpr TargetParameter kRR{ParamKind::RR};
inline constexpr TargetParameter kLRR{ParamKind::LRR};
inline constexpr TargetParameter kOR{ParamKind::OR};
inline constexpr TargetParameter kLOR{ParamKind::LOR};

/// Lower-case name: "rr", "lrr", "or", "lor".
std::string_view to_string(ParamKind kind) noexcept;
inline std::string_view to_string(TargetParameter param) noexcept
{
    return to_string(param.kind());
}

/// Case-insensitive inverse of to_string.
std::optional<TargetParameter> parse_target(std::string_view name);

}  // namespace ratioest
