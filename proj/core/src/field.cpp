// SPDX-License-Identifier: Apache-2.0
#include "covcat/field.hpp"

#include <stdexcept>

namespace covcat {

Field Field::prime(std::uint64_t p) {
    if (p < 2) {
        throw std::invalid_argument("field characteristic must be a prime, got " + std::to_string(p));
    }
    mpz_class candidate(std::to_string(p));
    if (mpz_probab_prime_p(candidate.get_mpz_t(), 40) == 0) {
        throw std::invalid_argument("field characteristic must be a prime, got " + std::to_string(p));
    }
    return Field(Kind::PrimeField, p);
}

Scalar Field::normalize(const Scalar& a) const {
    if (kind_ == Kind::Rationals) {
        Scalar r = a;
        r.canonicalize();
        return r;
    }
    const mpz_class modulus(std::to_string(p_));
    mpz_class den = a.get_den() % modulus;
    if (den == 0) {
        throw std::domain_error("denominator " + a.get_den().get_str() + " is zero in " + describe());
    }
    mpz_class den_inv;
    mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t());
    mpz_class value = (a.get_num() * den_inv) % modulus;
    if (value < 0) {
        value += modulus;
    }
    return Scalar(value);
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
    Scalar r = a + b;
    return kind_ == Kind::Rationals ? r : normalize(r);
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
    Scalar r = a - b;
    return kind_ == Kind::Rationals ? r : normalize(r);
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
    Scalar r = a * b;
    return kind_ == Kind::Rationals ? r : normalize(r);
}

Scalar Field::neg(const Scalar& a) const {
    Scalar r = -a;
    return kind_ == Kind::Rationals ? r : normalize(r);
}

Scalar Field::inv(const Scalar& a) const {
    if (is_zero(a)) {
        throw std::domain_error("division by zero");
    }
    if (kind_ == Kind::Rationals) {
        return Scalar(1) / a;
    }
    const mpz_class modulus(std::to_string(p_));
    mpz_class r;
    mpz_class num = a.get_num();
    mpz_invert(r.get_mpz_t(), num.get_mpz_t(), modulus.get_mpz_t());
    return Scalar(r);
}

Scalar Field::parse(std::string_view text) const {
    const std::string s(text);
    const auto bad = [&] { return std::invalid_argument("malformed coefficient \"" + s + "\""); };
    if (s.empty()) {
        throw bad();
    }
    const auto digits_ok = [](std::string_view part) {
        std::size_t start = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
        if (start >= part.size()) {
            return false;
        }
        for (std::size_t i = start; i < part.size(); ++i) {
            if (part[i] < '0' || part[i] > '9') {
                return false;
            }
        }
        return true;
    };
    const auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!digits_ok(num) || !digits_ok(den) || den[0] == '-' || den[0] == '+') {
        throw bad();
    }
    if (num[0] == '+') {
        num.erase(0, 1);
    }
    mpz_class n(num), d(den);
    if (d == 0) {
        throw std::invalid_argument("zero denominator in \"" + s + "\"");
    }
    return normalize(Scalar(n, d));
}

std::string Field::format(const Scalar& a) {
    return a.get_str();
}

std::string Field::describe() const {
    return kind_ == Kind::Rationals ? "Q" : "F_" + std::to_string(p_);
}

Vector zero_vector(const Field& field, std::size_t n) {
    return Vector(n, field.zero());
}

bool is_zero_vector(const Vector& v) {
    for (const auto& x : v) {
        if (!Field::is_zero(x)) {
            return false;
        }
    }
    return true;
}

Vector axpy(const Field& field, const Vector& a, const Scalar& scale, const Vector& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("axpy: length mismatch");
    }
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = field.add(a[i], field.mul(scale, b[i]));
    }
    return r;
}

}  // namespace covcat
