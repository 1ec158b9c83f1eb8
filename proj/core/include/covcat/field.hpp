// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace covcat {

/// Field elements are GMP rationals. Over a prime field the stored value is
/// always the integer representative in [0, p).
using Scalar = mpq_class;
using Vector = std::vector<Scalar>;

/// The ground field: the rationals or a prime field F_p. All arithmetic goes
/// through a Field so that prime-field values stay reduced.
class Field {
public:
    enum class Kind { Rationals, PrimeField };

    static Field rationals() { return Field{}; }
    /// Throws std::invalid_argument when `p` is not prime.
    static Field prime(std::uint64_t p);

    [[nodiscard]] Kind kind() const { return kind_; }
    /// 0 for the rationals.
    [[nodiscard]] std::uint64_t characteristic() const { return p_; }

    [[nodiscard]] Scalar normalize(const Scalar& a) const;
    [[nodiscard]] Scalar from_int(long value) const { return normalize(Scalar(value)); }
    [[nodiscard]] Scalar zero() const { return Scalar(0); }
    [[nodiscard]] Scalar one() const { return Scalar(1); }

    [[nodiscard]] Scalar add(const Scalar& a, const Scalar& b) const;
    [[nodiscard]] Scalar sub(const Scalar& a, const Scalar& b) const;
    [[nodiscard]] Scalar mul(const Scalar& a, const Scalar& b) const;
    [[nodiscard]] Scalar neg(const Scalar& a) const;
    /// Throws std::domain_error on zero.
    [[nodiscard]] Scalar inv(const Scalar& a) const;
    [[nodiscard]] Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

    [[nodiscard]] static bool is_zero(const Scalar& a) { return sgn(a) == 0; }

    /// Accepts "n" or "n/d" with optional sign. Throws std::invalid_argument.
    [[nodiscard]] Scalar parse(std::string_view text) const;
    /// Canonical text: "n" for integers, "n/d" otherwise.
    [[nodiscard]] static std::string format(const Scalar& a);

    /// "Q" or "F_p".
    [[nodiscard]] std::string describe() const;

    friend bool operator==(const Field& a, const Field& b) {
        return a.kind_ == b.kind_ && a.p_ == b.p_;
    }

private:
    Field() = default;
    Field(Kind kind, std::uint64_t p) : kind_(kind), p_(p) {}

    Kind kind_ = Kind::Rationals;
    std::uint64_t p_ = 0;
};

[[nodiscard]] Vector zero_vector(const Field& field, std::size_t n);
[[nodiscard]] bool is_zero_vector(const Vector& v);
/// a + scale * b, reduced in `field`.
[[nodiscard]] Vector axpy(const Field& field, const Vector& a, const Scalar& scale, const Vector& b);

}  // namespace covcat
