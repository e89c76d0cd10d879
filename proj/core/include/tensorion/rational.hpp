#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace tensorion {

// Exact rational number in lowest terms with positive denominator.
//
// Values whose numerator and denominator fit in int64 live inline; anything
// larger is promoted to a GMP rational. The representation is canonical:
// a value is stored inline whenever it fits, so equality can compare fields.
class Rational {
public:
    Rational() noexcept = default;
    Rational(std::int64_t n);  // NOLINT(google-explicit-constructor)
    Rational(int n) : Rational(static_cast<std::int64_t>(n)) {}  // NOLINT
    Rational(std::int64_t num, std::int64_t den);
    explicit Rational(const mpq_class& q);

    Rational(const Rational& other);
    Rational(Rational&& other) noexcept = default;
    Rational& operator=(const Rational& other);
    Rational& operator=(Rational&& other) noexcept = default;
    ~Rational() = default;

    // Parses "p", "-p" or "p/q"; throws std::invalid_argument on bad input.
    static Rational parse(std::string_view text);

    [[nodiscard]] bool is_zero() const noexcept { return !big_ && num_ == 0; }
    [[nodiscard]] bool is_one() const noexcept { return !big_ && num_ == 1 && den_ == 1; }
    [[nodiscard]] bool is_integer() const;
    [[nodiscard]] int sign() const noexcept;
    [[nodiscard]] bool is_small() const noexcept { return !big_; }

    [[nodiscard]] mpq_class to_mpq() const;
    [[nodiscard]] mpz_class numerator() const;
    [[nodiscard]] mpz_class denominator() const;
    [[nodiscard]] std::string str() const;
    [[nodiscard]] double to_double() const;

    Rational operator-() const;
    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);

    // *this += a * b without materializing the temporary when inline.
    void add_product(const Rational& a, const Rational& b);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

    friend bool operator==(const Rational& a, const Rational& b) noexcept;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    friend std::ostream& operator<<(std::ostream& os, const Rational& q);

private:
    void assign_big(mpq_class&& q);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::unique_ptr<mpq_class> big_;
};

Rational abs(const Rational& q);

}  // namespace tensorion
