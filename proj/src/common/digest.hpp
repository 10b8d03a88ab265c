// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace rlab {

using Hash32 = std::array<std::uint8_t, 32>;

Hash32 sha256(std::span<const std::uint8_t> bytes);
Hash32 sha256(std::string_view text);

std::string to_hex(std::span<const std::uint8_t> bytes);

/// Incremental builder for digests over heterogeneous fields.
class DigestInput {
  public:
    DigestInput& add(std::string_view field);
    DigestInput& add(std::uint64_t field);
    DigestInput& add(std::span<const std::uint8_t> field);

    Hash32 finish() const { return sha256(buffer_); }

  private:
    std::string buffer_;
};

}  // namespace rlab
