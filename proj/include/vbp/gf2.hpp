#pragma once

#include <cstdint>
#include <map>
#include <mutex>

#include "vbp/errors.hpp"

namespace vbp {

namespace gf2detail {

inline int polyDegree(std::uint64_t p) {
    int d = -1;
    while (p) {
        ++d;
        p >>= 1;
    }
    return d;
}

inline std::uint64_t polyMod(std::uint64_t a, std::uint64_t m) {
    int dm = polyDegree(m);
    for (int d = polyDegree(a); d >= dm; d = polyDegree(a)) a ^= m << (d - dm);
    return a;
}

inline std::uint64_t polyMulMod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    std::uint64_t r = 0;
    a = polyMod(a, m);
    while (b) {
        if (b & 1) r ^= a;
        b >>= 1;
        a <<= 1;
        a = polyMod(a, m);
    }
    return r;
}

inline std::uint64_t polyGcd(std::uint64_t a, std::uint64_t b) {
    while (b) {
        std::uint64_t r = polyMod(a, b);
        a = b;
        b = r;
    }
    return a;
}

// x^(2^e) mod m by e squarings.
inline std::uint64_t polyPow2Exp(int e, std::uint64_t m) {
    std::uint64_t r = polyMod(2, m);  // the polynomial x
    for (int i = 0; i < e; ++i) r = polyMulMod(r, r, m);
    return r;
}

// Deterministic irreducibility test over GF(2) (Rabin): p of degree q is
// irreducible iff x^(2^q) = x mod p and gcd(x^(2^(q/r)) - x, p) = 1 for
// every prime r dividing q.
inline bool isIrreducible(std::uint64_t p, int q) {
    if ((p & 1) == 0) return false;  // divisible by x
    if (polyPow2Exp(q, p) != polyMod(2, p)) return false;
    int rest = q;
    for (int r = 2; r * r <= rest; ++r) {
        if (rest % r) continue;
        while (rest % r == 0) rest /= r;
        std::uint64_t h = polyPow2Exp(q / r, p) ^ polyMod(2, p);
        if (polyGcd(p, h) != 1) return false;
    }
    if (rest > 1 && rest < q) {
        std::uint64_t h = polyPow2Exp(q / rest, p) ^ polyMod(2, p);
        if (polyGcd(p, h) != 1) return false;
    }
    return true;
}

// Numerically-least (equivalently lexicographically-least coefficient
// string) irreducible polynomial of degree q, cached per q.
inline std::uint64_t irreduciblePoly(int q) {
    static std::map<int, std::uint64_t> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(q);
    if (it != cache.end()) return it->second;
    for (std::uint64_t cand = (1ULL << q) | 1;; cand += 2)
        if (isIrreducible(cand, q)) {
            cache[q] = cand;
            return cand;
        }
}

}  // namespace gf2detail

// GF(2^q) with residues in machine words: addition is XOR, multiplication
// is carry-less multiplication reduced modulo the least irreducible
// polynomial of degree q. In characteristic 2 every element has a unique
// square root, reachable by q-1 squarings.
class GF2Field {
public:
    explicit GF2Field(int q) : q_(q) {
        if (q < 1 || q > 32) throw StructuralError("field degree must be in [1,32]");
        mod_ = gf2detail::irreduciblePoly(q);
        mask_ = (1ULL << q) - 1;
    }

    int degree() const { return q_; }
    std::uint64_t modulus() const { return mod_; }
    std::uint64_t elementMask() const { return mask_; }
    std::uint64_t size() const { return 1ULL << q_; }

    static std::uint64_t add(std::uint64_t a, std::uint64_t b) { return a ^ b; }

    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t r = 0;
        while (b) {
            if (b & 1) r ^= a;
            b >>= 1;
            a <<= 1;
            if (a >> q_ & 1) a ^= mod_;
        }
        return r;
    }

    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    std::uint64_t inv(std::uint64_t a) const {
        if (a == 0) throw StructuralError("inverse of zero");
        return pow(a, size() - 2);
    }

    std::uint64_t sqrt(std::uint64_t a) const {
        for (int i = 0; i + 1 < q_; ++i) a = mul(a, a);
        return a;
    }

private:
    int q_;
    std::uint64_t mod_;
    std::uint64_t mask_;
};

}  // namespace vbp
