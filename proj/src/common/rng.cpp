// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "common/rng.hpp"

#include <limits>

#include "common/error.hpp"

namespace rlab {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

Rng::Rng(std::uint64_t seed) : seed_(seed) {
    std::uint64_t s = seed;
    for (auto& word : state_) {
        s = splitmix64(s);
        word = s;
    }
}

std::uint64_t Rng::next() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

std::uint64_t Rng::uniform(std::uint64_t bound) {
    if (bound == 0) throw Error(ErrorCode::kInvalidArgument, "Rng::uniform bound must be positive");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t draw = next();
    while (draw >= limit) draw = next();
    return draw % bound;
}

std::uint64_t Rng::uniform_between(std::uint64_t lo, std::uint64_t hi) {
    if (hi < lo) throw Error(ErrorCode::kInvalidArgument, "Rng::uniform_between empty range");
    if (lo == 0 && hi == std::numeric_limits<std::uint64_t>::max()) return next();
    return lo + uniform(hi - lo + 1);
}

double Rng::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

Rng Rng::child(std::string_view label) const {
    return Rng(splitmix64(seed_ ^ splitmix64(fnv1a64(label))));
}

Rng Rng::child(std::uint64_t index) const {
    return Rng(splitmix64(seed_ + 0x632be59bd9b4e019ULL * (index + 1)));
}

}  // namespace rlab
