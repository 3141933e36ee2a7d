#ifndef RTP_GF2_64_HPP
#define RTP_GF2_64_HPP

// GF(2^64) with modulus x^64 + x^4 + x^3 + x + 1. Addition is XOR,
// multiplication is carry-less followed by reduction.

#include <cstdint>

#if defined(__PCLMUL__) && defined(__SSE2__)
#include <wmmintrin.h>
#endif

namespace rtp::gf {

struct Wide {
    std::uint64_t hi;
    std::uint64_t lo;
};

// Portable shift-and-xor carry-less product.
constexpr Wide clmul_portable(std::uint64_t a, std::uint64_t b) {
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;
    for (int i = 0; i < 64; ++i) {
        if ((b >> i) & 1U) {
            lo ^= a << i;
            if (i != 0) {
                hi ^= a >> (64 - i);
            }
        }
    }
    return {hi, lo};
}

inline Wide clmul(std::uint64_t a, std::uint64_t b) {
#if defined(__PCLMUL__) && defined(__SSE2__)
    const __m128i x = _mm_set_epi64x(0, static_cast<long long>(a));
    const __m128i y = _mm_set_epi64x(0, static_cast<long long>(b));
    const __m128i p = _mm_clmulepi64_si128(x, y, 0x00);
    return {static_cast<std::uint64_t>(_mm_cvtsi128_si64(_mm_unpackhi_epi64(p, p))),
            static_cast<std::uint64_t>(_mm_cvtsi128_si64(p))};
#else
    return clmul_portable(a, b);
#endif
}

// hi * x^64 == hi * (x^4 + x^3 + x + 1) (mod the field polynomial).
constexpr std::uint64_t reduce(Wide w) {
    const std::uint64_t h = w.hi;
    // Bits of h * (x^4 + x^3 + x + 1) that spill past x^63.
    const std::uint64_t spill = (h >> 60) ^ (h >> 61) ^ (h >> 63);
    const std::uint64_t folded = h ^ (h << 1) ^ (h << 3) ^ (h << 4);
    const std::uint64_t spill_folded = spill ^ (spill << 1) ^ (spill << 3) ^ (spill << 4);
    return w.lo ^ folded ^ spill_folded;
}

constexpr std::uint64_t mul_portable(std::uint64_t a, std::uint64_t b) { return reduce(clmul_portable(a, b)); }

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) { return reduce(clmul(a, b)); }

constexpr std::uint64_t add(std::uint64_t a, std::uint64_t b) { return a ^ b; }

}  // namespace rtp::gf

#endif  // RTP_GF2_64_HPP
