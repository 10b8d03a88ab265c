// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>

namespace rlab {

/// Seeded xoshiro256** stream with label-derived child streams.
///
/// Children depend only on (seed, label), never on how far the parent has
/// advanced, so units of work can derive their streams independently and in
/// any order. Bounded draws use rejection sampling rather than the standard
/// distributions so output is identical across standard library versions.
class Rng {
  public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next();

    /// Uniform on [0, bound). bound must be > 0.
    std::uint64_t uniform(std::uint64_t bound);

    /// Uniform on [lo, hi], inclusive.
    std::uint64_t uniform_between(std::uint64_t lo, std::uint64_t hi);

    /// Uniform on [0, 1) with 53 bits of precision.
    double uniform01();

    bool bernoulli(double p) { return uniform01() < p; }

    Rng child(std::string_view label) const;
    Rng child(std::uint64_t index) const;

    template <typename T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(uniform(i));
            std::swap(items[i - 1], items[j]);
        }
    }

  private:
    std::uint64_t seed_;
    std::array<std::uint64_t, 4> state_{};
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a64(std::string_view text);

}  // namespace rlab
