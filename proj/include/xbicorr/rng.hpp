#pragma once

#include <cstdint>
#include <random>

namespace xbicorr {

// Seeded generator with a fully specified output sequence: mt19937_64 for
// bits, explicit Box-Muller for normals. Distribution code is hand-rolled so
// streams do not depend on the standard library's implementation-defined
// std::normal_distribution.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform on the open interval (0, 1).
    double uniform() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; the second draw of each pair is cached.
    double normal();

    std::uint64_t raw() { return engine_(); }

    // Derives a well-separated substream seed from a master seed and an
    // index (splitmix64 finalizer). Used to give each Monte Carlo
    // replication its own stream so parallel and serial runs agree.
    static std::uint64_t substream(std::uint64_t master, std::uint64_t index);

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace xbicorr
