// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "chain/address.hpp"

namespace rlab::chain {

enum class OpKind {
    kIntrinsic,
    kCallBase,
    kStorageWrite,
    kArith,
};

/// Flat per-instruction cost table. Not opcode-accurate.
struct GasSchedule {
    Gas intrinsic = 21000;
    Gas call_base = 700;
    Gas storage_write = 100;
    Gas arith = 5;

    Gas cost(OpKind kind) const;

    /// `key = value` lines; keys: intrinsic, call_base, sstore, arith.
    /// Blank lines and `#` comments are ignored; missing keys keep defaults.
    static GasSchedule parse(std::string_view text);
    static GasSchedule load(const std::filesystem::path& path);

    std::string to_config() const;

    friend bool operator==(const GasSchedule&, const GasSchedule&) = default;
};

}  // namespace rlab::chain
