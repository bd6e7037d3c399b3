// Copyright 2026 qecmit Contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QECMIT_PAULI_HPP
#define QECMIT_PAULI_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qecmit {

/// Single-qubit Pauli as (x, z) bits: 0 = I, 1 = X, 2 = Z, 3 = Y.
enum class Pauli : uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

inline bool pauli_x(Pauli p) {
    return ((uint8_t)p & 1) != 0;
}
inline bool pauli_z(Pauli p) {
    return ((uint8_t)p & 2) != 0;
}
inline Pauli make_pauli(bool x, bool z) {
    return (Pauli)((uint8_t)x | ((uint8_t)z << 1));
}
inline char pauli_char(Pauli p) {
    static const char chars[4] = {'_', 'X', 'Z', 'Y'};
    return chars[(uint8_t)p];
}

inline size_t num_words(size_t n) {
    return (n + 63) / 64;
}

namespace detail {

/// Multiplies the Pauli (x1, z1) in place by (x2, z2) on the right, word by word.
/// Qubits with x = z = 1 are read as Y. Returns the exponent k of the scalar i^k
/// picked up by the product, modulo 4.
inline uint8_t mul_words(uint64_t *x1, uint64_t *z1, const uint64_t *x2, const uint64_t *z2, size_t words) {
    int plus = 0;
    int minus = 0;
    for (size_t w = 0; w < words; w++) {
        uint64_t a = x1[w], b = z1[w], c = x2[w], d = z2[w];
        uint64_t anti = (a & d) ^ (b & c);
        // X*Y, Y*Z and Z*X give +i; the reversed orders give -i.
        uint64_t p = (a & ~b & c & d) | (a & b & ~c & d) | (~a & b & c & ~d);
        plus += std::popcount(p);
        minus += std::popcount(anti & ~p);
        x1[w] = a ^ c;
        z1[w] = b ^ d;
    }
    return (uint8_t)((plus - minus) & 3);
}

inline bool anticommute_words(const uint64_t *x1, const uint64_t *z1, const uint64_t *x2, const uint64_t *z2, size_t words) {
    uint64_t acc = 0;
    for (size_t w = 0; w < words; w++) {
        acc ^= (x1[w] & z2[w]) ^ (z1[w] & x2[w]);
    }
    return (std::popcount(acc) & 1) != 0;
}

}  // namespace detail

/// n-qubit Pauli operator i^phase * P_0 (x) ... (x) P_{n-1}, with Y = iXZ.
class PauliString {
   public:
    PauliString() = default;
    explicit PauliString(size_t n) : n_(n), xs_(num_words(n), 0), zs_(num_words(n), 0) {
    }

    /// Parses strings like "+XZ_Y", "-iXX", "ZIZ". '_' and 'I' both mean identity.
    static PauliString from_str(const std::string &text) {
        size_t pos = 0;
        uint8_t phase = 0;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            if (text[pos] == '-') {
                phase = 2;
            }
            pos++;
        }
        if (pos < text.size() && text[pos] == 'i') {
            phase = (uint8_t)((phase + 1) & 3);
            pos++;
        }
        PauliString p(text.size() - pos);
        for (size_t q = 0; pos < text.size(); pos++, q++) {
            switch (text[pos]) {
                case 'I':
                case '_':
                    break;
                case 'X':
                    p.set(q, Pauli::X);
                    break;
                case 'Y':
                    p.set(q, Pauli::Y);
                    break;
                case 'Z':
                    p.set(q, Pauli::Z);
                    break;
                default:
                    throw std::invalid_argument("PauliString: bad character in '" + text + "'");
            }
        }
        p.phase_ = phase;
        return p;
    }

    static PauliString single(size_t n, size_t q, Pauli p) {
        PauliString r(n);
        r.set(q, p);
        return r;
    }

    size_t num_qubits() const {
        return n_;
    }
    size_t words() const {
        return xs_.size();
    }
    uint8_t phase() const {
        return phase_;
    }
    void set_phase(uint8_t log_i) {
        phase_ = log_i & 3;
    }
    bool is_hermitian() const {
        return (phase_ & 1) == 0;
    }
    bool sign() const {
        return phase_ == 2;
    }

    bool x(size_t q) const {
        return (xs_[q >> 6] >> (q & 63)) & 1;
    }
    bool z(size_t q) const {
        return (zs_[q >> 6] >> (q & 63)) & 1;
    }
    Pauli get(size_t q) const {
        check(q);
        return make_pauli(x(q), z(q));
    }
    void set(size_t q, Pauli p) {
        check(q);
        uint64_t m = uint64_t{1} << (q & 63);
        xs_[q >> 6] = pauli_x(p) ? (xs_[q >> 6] | m) : (xs_[q >> 6] & ~m);
        zs_[q >> 6] = pauli_z(p) ? (zs_[q >> 6] | m) : (zs_[q >> 6] & ~m);
    }

    uint64_t *xs() {
        return xs_.data();
    }
    uint64_t *zs() {
        return zs_.data();
    }
    const uint64_t *xs() const {
        return xs_.data();
    }
    const uint64_t *zs() const {
        return zs_.data();
    }

    size_t weight() const {
        size_t w = 0;
        for (size_t k = 0; k < xs_.size(); k++) {
            w += std::popcount(xs_[k] | zs_[k]);
        }
        return w;
    }
    bool is_identity() const {
        return weight() == 0;
    }
    std::vector<size_t> support() const {
        std::vector<size_t> out;
        for (size_t q = 0; q < n_; q++) {
            if (x(q) || z(q)) {
                out.push_back(q);
            }
        }
        return out;
    }

    bool commutes(const PauliString &other) const {
        same_size(other);
        return !detail::anticommute_words(xs(), zs(), other.xs(), other.zs(), words());
    }

    /// this = this * rhs
    PauliString &operator*=(const PauliString &rhs) {
        same_size(rhs);
        uint8_t k = detail::mul_words(xs(), zs(), rhs.xs(), rhs.zs(), words());
        phase_ = (uint8_t)((phase_ + rhs.phase_ + k) & 3);
        return *this;
    }
    PauliString operator*(const PauliString &rhs) const {
        PauliString r = *this;
        r *= rhs;
        return r;
    }

    bool operator==(const PauliString &other) const {
        return n_ == other.n_ && phase_ == other.phase_ && xs_ == other.xs_ && zs_ == other.zs_;
    }
    bool operator!=(const PauliString &other) const {
        return !(*this == other);
    }
    /// Equality ignoring the scalar phase.
    bool same_up_to_phase(const PauliString &other) const {
        return n_ == other.n_ && xs_ == other.xs_ && zs_ == other.zs_;
    }

    /// Copy with `n` qubits; added qubits are identity, removed qubits must be identity.
    PauliString resized(size_t n) const {
        PauliString r(n);
        for (size_t q = 0; q < n_; q++) {
            Pauli p = get(q);
            if (q >= n) {
                if (p != Pauli::I) {
                    throw std::invalid_argument("PauliString::resized would drop a non-identity factor");
                }
                continue;
            }
            r.set(q, p);
        }
        r.phase_ = phase_;
        return r;
    }

    std::string str() const {
        static const char *prefixes[4] = {"+", "+i", "-", "-i"};
        std::string s = prefixes[phase_];
        for (size_t q = 0; q < n_; q++) {
            s += pauli_char(get(q));
        }
        return s;
    }

   private:
    void check(size_t q) const {
        if (q >= n_) {
            throw std::out_of_range("PauliString: qubit index out of range");
        }
    }
    void same_size(const PauliString &other) const {
        if (n_ != other.n_) {
            throw std::invalid_argument("PauliString: size mismatch");
        }
    }

    size_t n_ = 0;
    uint8_t phase_ = 0;
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
};

}  // namespace qecmit

#endif
