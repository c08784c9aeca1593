#pragma once

#include <cstdint>

namespace homcat {

// splitmix64 stream. <random> distributions are implementation-defined, so the
// verify suites and tests roll their own to stay byte-identical everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform-ish in [0, n); modulo bias is irrelevant at test scale
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

    // inclusive range
    long range(long lo, long hi)
    {
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool flip() { return (next() & 1u) != 0; }

private:
    std::uint64_t state_;
};

} // namespace homcat
