#pragma once

#include <cstdint>
#include <string_view>

namespace plotbench {

// splitmix64; used wherever byte-identical output across platforms is part of
// the contract (std:: distributions are not bit-stable across libraries).
class Rng {
 public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1) with 53-bit resolution
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double low, double high) { return low + (high - low) * next_double(); }

    // uniform integer in [low, high] inclusive
    std::int64_t uniform_int(std::int64_t low, std::int64_t high) {
        const std::uint64_t span = static_cast<std::uint64_t>(high - low) + 1;
        return low + static_cast<std::int64_t>(next_u64() % span);
    }

 private:
    std::uint64_t state_;
};

// FNV-1a, for deriving sub-seeds and keying canned responses.
inline std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 0xCBF29CE484222325ull) {
    std::uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

}  // namespace plotbench
