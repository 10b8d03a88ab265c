// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "common/digest.hpp"

#include <openssl/sha.h>

namespace rlab {

Hash32 sha256(std::span<const std::uint8_t> bytes) {
    Hash32 out{};
    SHA256(bytes.data(), bytes.size(), out.data());
    return out;
}

Hash32 sha256(std::string_view text) {
    return sha256(std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        out.push_back(kDigits[b >> 4]);
        out.push_back(kDigits[b & 0xf]);
    }
    return out;
}

// Fields are length-prefixed so ("ab","c") and ("a","bc") never collide.
DigestInput& DigestInput::add(std::string_view field) {
    add(static_cast<std::uint64_t>(field.size()));
    buffer_.append(field);
    return *this;
}

DigestInput& DigestInput::add(std::uint64_t field) {
    for (int i = 0; i < 8; ++i) buffer_.push_back(static_cast<char>((field >> (8 * i)) & 0xff));
    return *this;
}

DigestInput& DigestInput::add(std::span<const std::uint8_t> field) {
    return add(std::string_view(reinterpret_cast<const char*>(field.data()), field.size()));
}

}  // namespace rlab
