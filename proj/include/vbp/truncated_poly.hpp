#pragma once

#include <gmp.h>
#include <gmpxx.h>

#include <cstddef>
#include <vector>

#include "vbp/rational.hpp"

namespace vbp {

// Dense univariate polynomial over arbitrary-precision integers, truncated
// beyond a fixed degree cap. All arithmetic silently drops terms above the
// cap, which is exactly what the weight-target engines need: only the
// coefficient at the target degree is ever read.
class TruncPoly {
public:
    TruncPoly() : coeffs_(1) {}
    explicit TruncPoly(int cap) : coeffs_(static_cast<std::size_t>(cap) + 1) {}

    int cap() const { return static_cast<int>(coeffs_.size()) - 1; }

    const Integer& operator[](int i) const { return coeffs_[i]; }
    Integer& operator[](int i) { return coeffs_[i]; }

    bool isZero() const {
        for (const auto& c : coeffs_)
            if (mpz_sgn(c.get_mpz_t()) != 0) return false;
        return true;
    }

    void clear() {
        for (auto& c : coeffs_) c = 0;
    }

    void negate() {
        for (auto& c : coeffs_) mpz_neg(c.get_mpz_t(), c.get_mpz_t());
    }

    void add(const TruncPoly& a) {
        for (int i = 0; i <= cap(); ++i)
            mpz_add(coeffs_[i].get_mpz_t(), coeffs_[i].get_mpz_t(),
                    a.coeffs_[i].get_mpz_t());
    }

    void sub(const TruncPoly& a) {
        for (int i = 0; i <= cap(); ++i)
            mpz_sub(coeffs_[i].get_mpz_t(), coeffs_[i].get_mpz_t(),
                    a.coeffs_[i].get_mpz_t());
    }

    // this += a * b, truncated at the cap. The fused mpz_addmul avoids
    // allocating temporaries in what is by far the hottest loop.
    void addMul(const TruncPoly& a, const TruncPoly& b) {
        int t = cap();
        for (int i = 0; i <= t; ++i) {
            if (mpz_sgn(a.coeffs_[i].get_mpz_t()) == 0) continue;
            int jmax = t - i;
            for (int j = 0; j <= jmax; ++j) {
                if (mpz_sgn(b.coeffs_[j].get_mpz_t()) == 0) continue;
                mpz_addmul(coeffs_[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(),
                           b.coeffs_[j].get_mpz_t());
            }
        }
    }

    // this += a * b * (-1)
    void subMul(const TruncPoly& a, const TruncPoly& b) {
        int t = cap();
        for (int i = 0; i <= t; ++i) {
            if (mpz_sgn(a.coeffs_[i].get_mpz_t()) == 0) continue;
            int jmax = t - i;
            for (int j = 0; j <= jmax; ++j) {
                if (mpz_sgn(b.coeffs_[j].get_mpz_t()) == 0) continue;
                mpz_submul(coeffs_[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(),
                           b.coeffs_[j].get_mpz_t());
            }
        }
    }

    // Largest coefficient size in bits; used for overflow sanity bounds.
    std::size_t maxBits() const {
        std::size_t best = 0;
        for (const auto& c : coeffs_) {
            if (mpz_sgn(c.get_mpz_t()) == 0) continue;
            std::size_t b = mpz_sizeinbase(c.get_mpz_t(), 2);
            if (b > best) best = b;
        }
        return best;
    }

    bool operator==(const TruncPoly& other) const { return coeffs_ == other.coeffs_; }

private:
    std::vector<Integer> coeffs_;
};

}  // namespace vbp
