#include "cgfl/rng.hpp"

#include <cmath>
#include <numbers>

namespace cgfl {

double Rng::normal() {
    // Box-Muller; the second deviate is discarded so draws are positionally
    // stable regardless of how many values earlier callers consumed.
    double u1 = next_double();
    const double u2 = next_double();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view component) {
    // FNV-1a over the label, mixed with the global seed through splitmix64.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : component) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::uint64_t s = global_seed ^ h;
    return splitmix64(s);
}

}  // namespace cgfl
