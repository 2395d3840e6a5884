#pragma once

#include <cstdint>
#include <vector>

#include "smf/algebra/scalar.hpp"

namespace smf::ntt
{
    using u64 = std::uint64_t;
    using u128 = unsigned __int128;

    inline u64 pow_mod(u64 b, u64 e, u64 m)
    {
        u64 r = 1;
        b %= m;
        while (e)
        {
            if (e & 1)
                r = static_cast<u64>(static_cast<u128>(r) * b % m);
            b = static_cast<u64>(static_cast<u128>(b) * b % m);
            e >>= 1;
        }
        return r;
    }

    /// In-place iterative transform modulo a prime p = c 2^k + 1 with primitive root g.
    inline void transform(std::vector<u64> &a, u64 p, u64 g, bool invert)
    {
        size_t n = a.size();
        for (size_t i = 1, j = 0; i < n; ++i)
        {
            size_t bit = n >> 1;
            for (; j & bit; bit >>= 1)
                j ^= bit;
            j ^= bit;
            if (i < j)
                std::swap(a[i], a[j]);
        }
        for (size_t len = 2; len <= n; len <<= 1)
        {
            u64 w = pow_mod(g, (p - 1) / len, p);
            if (invert)
                w = pow_mod(w, p - 2, p);
            for (size_t i = 0; i < n; i += len)
            {
                u64 wn = 1;
                for (size_t j = 0; j < len / 2; ++j)
                {
                    u64 u = a[i + j];
                    u64 v = a[i + j + len / 2] * wn % p;
                    a[i + j] = u + v < p ? u + v : u + v - p;
                    a[i + j + len / 2] = u >= v ? u - v : u + p - v;
                    wn = wn * w % p;
                }
            }
        }
        if (invert)
        {
            u64 inv = pow_mod(n, p - 2, p);
            for (auto &x : a)
                x = x * inv % p;
        }
    }

    /// Truncated product of residue sequences modulo a prime ell < 2^31, via three-prime NTT and CRT.
    inline std::vector<u64> multiply_mod(const std::vector<u64> &a, const std::vector<u64> &b, u64 ell, size_t N)
    {
        static constexpr u64 P[3] = {998244353ULL, 167772161ULL, 469762049ULL};
        static constexpr u64 G[3] = {3, 3, 3};
        size_t na = std::min(a.size(), N), nb = std::min(b.size(), N);
        if (na == 0 || nb == 0)
            return std::vector<u64>(N, 0);
        size_t sz = 1;
        while (sz < na + nb)
            sz <<= 1;
        if (sz > (size_t(1) << 23))
            throw ComputationError("ntt: transform length exceeds the supported size");
        std::vector<u64> res[3];
        for (int t = 0; t < 3; ++t)
        {
            std::vector<u64> fa(sz, 0), fb(sz, 0);
            for (size_t i = 0; i < na; ++i)
                fa[i] = a[i] % P[t];
            for (size_t i = 0; i < nb; ++i)
                fb[i] = b[i] % P[t];
            transform(fa, P[t], G[t], false);
            transform(fb, P[t], G[t], false);
            for (size_t i = 0; i < sz; ++i)
                fa[i] = fa[i] * fb[i] % P[t];
            transform(fa, P[t], G[t], true);
            res[t] = std::move(fa);
        }
        // Garner reconstruction of the exact coefficient, then reduction mod ell.
        const u64 p0 = P[0], p1 = P[1], p2 = P[2];
        const u64 inv_p0_mod_p1 = pow_mod(p0, p1 - 2, p1);
        const u64 p01_mod_p2 = static_cast<u64>(static_cast<u128>(p0) * p1 % p2);
        const u64 inv_p01_mod_p2 = pow_mod(p01_mod_p2, p2 - 2, p2);
        std::vector<u64> out(N, 0);
        for (size_t i = 0; i < N && i < sz; ++i)
        {
            u64 x0 = res[0][i];
            u64 x1 = (res[1][i] + p1 - x0 % p1) % p1 * inv_p0_mod_p1 % p1;
            u128 v01 = static_cast<u128>(x0) + static_cast<u128>(x1) * p0;
            u64 x2 = static_cast<u64>((static_cast<u128>(res[2][i]) + p2 - static_cast<u64>(v01 % p2)) % p2 * inv_p01_mod_p2 % p2);
            u128 v = v01 + static_cast<u128>(x2) * p0 * p1;
            out[i] = static_cast<u64>(v % ell);
        }
        return out;
    }
} // namespace smf::ntt
