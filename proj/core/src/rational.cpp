#include "tensorion/rational.hpp"

#include <climits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace tensorion {
namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr i128 kMax = INT64_MAX;
constexpr i128 kMin = -static_cast<i128>(INT64_MAX);  // INT64_MIN is never stored

bool fits(i128 v) { return v >= kMin && v <= kMax; }

u128 uabs(i128 v) { return v < 0 ? -static_cast<u128>(v) : static_cast<u128>(v); }

u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

mpz_class to_mpz(i128 v) {
    u128 u = uabs(v);
    mpz_class r(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
    r <<= 64;
    r += static_cast<unsigned long>(static_cast<std::uint64_t>(u));
    if (v < 0) r = -r;
    return r;
}

bool fits_int64(const mpz_class& z) {
    return mpz_fits_slong_p(z.get_mpz_t()) != 0 && z != mpz_class(LONG_MIN);
}

}  // namespace

Rational::Rational(std::int64_t n) : num_(n), den_(1) {
    if (n == INT64_MIN) {
        // Promote rather than store the asymmetric value inline.
        big_ = std::make_unique<mpq_class>(to_mpz(n), 1);
        num_ = 0;
    }
}

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    mpq_class q(to_mpz(num), to_mpz(den));
    q.canonicalize();
    assign_big(std::move(q));
}

Rational::Rational(const mpq_class& q) {
    mpq_class c(q);
    c.canonicalize();
    assign_big(std::move(c));
}

Rational::Rational(const Rational& other)
    : num_(other.num_), den_(other.den_),
      big_(other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr) {}

Rational& Rational::operator=(const Rational& other) {
    if (this == &other) return *this;
    num_ = other.num_;
    den_ = other.den_;
    if (other.big_) {
        big_ = std::make_unique<mpq_class>(*other.big_);
    } else {
        big_.reset();
    }
    return *this;
}

void Rational::assign_big(mpq_class&& q) {
    if (fits_int64(q.get_num()) && fits_int64(q.get_den())) {
        num_ = q.get_num().get_si();
        den_ = q.get_den().get_si();
        big_.reset();
    } else {
        num_ = 0;
        den_ = 1;
        big_ = std::make_unique<mpq_class>(std::move(q));
    }
}

namespace {

// Stores n/d (d > 0) in lowest terms into the inline fields when possible.
bool store_small(i128 n, i128 d, std::int64_t& num, std::int64_t& den) {
    if (n == 0) {
        num = 0;
        den = 1;
        return true;
    }
    u128 g = gcd128(uabs(n), static_cast<u128>(d));
    if (g > 1) {
        n /= static_cast<i128>(g);
        d /= static_cast<i128>(g);
    }
    if (!fits(n) || !fits(d)) return false;
    num = static_cast<std::int64_t>(n);
    den = static_cast<std::int64_t>(d);
    return true;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
    auto bad = [&] { return std::invalid_argument("Rational: cannot parse '" + std::string(text) + "'"); };
    if (text.empty()) throw bad();
    auto valid_int = [](std::string_view s) {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') return false;
        }
        return true;
    };
    auto slash = text.find('/');
    std::string_view num_part = text.substr(0, slash);
    std::string_view den_part = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_int(num_part) || !valid_int(den_part) || den_part[0] == '-' || den_part[0] == '+') throw bad();
    auto strip_plus = [](std::string_view s) { return s[0] == '+' ? s.substr(1) : s; };
    mpz_class n(std::string(strip_plus(num_part)), 10);
    mpz_class d(std::string(den_part), 10);
    if (d == 0) throw bad();
    mpq_class q(n, d);
    q.canonicalize();
    Rational r;
    r.assign_big(std::move(q));
    return r;
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const noexcept {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::to_mpq() const {
    if (big_) return *big_;
    return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

mpz_class Rational::numerator() const { return big_ ? big_->get_num() : mpz_class(static_cast<long>(num_)); }

mpz_class Rational::denominator() const { return big_ ? big_->get_den() : mpz_class(static_cast<long>(den_)); }

std::string Rational::str() const {
    if (big_) {
        if (big_->get_den() == 1) return big_->get_num().get_str();
        return big_->get_num().get_str() + "/" + big_->get_den().get_str();
    }
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

double Rational::to_double() const { return big_ ? big_->get_d() : static_cast<double>(num_) / static_cast<double>(den_); }

Rational Rational::operator-() const {
    Rational r;
    if (big_) {
        r.assign_big(mpq_class(-*big_));
    } else {
        r.num_ = -num_;
        r.den_ = den_;
    }
    return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
    if (!big_ && !rhs.big_) {
        if (den_ == 1 && rhs.den_ == 1) {
            std::int64_t s;
            if (!__builtin_add_overflow(num_, rhs.num_, &s) && s != INT64_MIN) {
                num_ = s;
                return *this;
            }
        }
        i128 n;
        i128 d;
        if (den_ == rhs.den_) {
            n = static_cast<i128>(num_) + rhs.num_;
            d = den_;
        } else {
            n = static_cast<i128>(num_) * rhs.den_ + static_cast<i128>(rhs.num_) * den_;
            d = static_cast<i128>(den_) * rhs.den_;
        }
        if (store_small(n, d, num_, den_)) return *this;
        mpq_class q(to_mpz(n), to_mpz(d));
        q.canonicalize();
        assign_big(std::move(q));
        return *this;
    }
    assign_big(mpq_class(to_mpq() + rhs.to_mpq()));
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
    if (!big_ && !rhs.big_) {
        if (num_ == 0 || rhs.num_ == 0) {
            num_ = 0;
            den_ = 1;
            return *this;
        }
        if (den_ == 1 && rhs.den_ == 1) {
            std::int64_t p;
            if (!__builtin_mul_overflow(num_, rhs.num_, &p) && p != INT64_MIN) {
                num_ = p;
                return *this;
            }
        }
        auto ua = static_cast<std::uint64_t>(num_ < 0 ? -num_ : num_);
        auto uc = static_cast<std::uint64_t>(rhs.num_ < 0 ? -rhs.num_ : rhs.num_);
        auto g1 = static_cast<std::int64_t>(std::gcd(ua, static_cast<std::uint64_t>(rhs.den_)));
        auto g2 = static_cast<std::int64_t>(std::gcd(uc, static_cast<std::uint64_t>(den_)));
        i128 n = static_cast<i128>(num_ / g1) * (rhs.num_ / g2);
        i128 d = static_cast<i128>(den_ / g2) * (rhs.den_ / g1);
        if (fits(n) && fits(d)) {
            num_ = static_cast<std::int64_t>(n);
            den_ = static_cast<std::int64_t>(d);
            return *this;
        }
        assign_big(mpq_class(to_mpz(n), to_mpz(d)));
        return *this;
    }
    assign_big(mpq_class(to_mpq() * rhs.to_mpq()));
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) throw std::domain_error("Rational: division by zero");
    if (!rhs.big_) {
        Rational inv;
        inv.num_ = rhs.num_ < 0 ? -rhs.den_ : rhs.den_;
        inv.den_ = rhs.num_ < 0 ? -rhs.num_ : rhs.num_;
        return *this *= inv;
    }
    assign_big(mpq_class(to_mpq() / rhs.to_mpq()));
    return *this;
}

void Rational::add_product(const Rational& a, const Rational& b) {
    if (a.is_zero() || b.is_zero()) return;
    if (!big_ && !a.big_ && !b.big_ && den_ == 1 && a.den_ == 1 && b.den_ == 1) {
        std::int64_t p;
        std::int64_t s;
        if (!__builtin_mul_overflow(a.num_, b.num_, &p) && !__builtin_add_overflow(num_, p, &s) &&
            s != INT64_MIN) {
            num_ = s;
            return;
        }
    }
    Rational t(a);
    t *= b;
    *this += t;
}

bool operator==(const Rational& a, const Rational& b) noexcept {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        i128 l = static_cast<i128>(a.num_) * b.den_;
        i128 r = static_cast<i128>(b.num_) * a.den_;
        return l <=> r;
    }
    int c = cmp(a.to_mpq(), b.to_mpq());
    return c <=> 0;
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

Rational abs(const Rational& q) { return q.sign() < 0 ? -q : q; }

}  // namespace tensorion
