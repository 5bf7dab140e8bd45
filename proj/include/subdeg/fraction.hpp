#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace subdeg {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational, always reduced, denominator > 0.
class Fraction {
public:
    Fraction() : num_(0), den_(1) {}
    Fraction(long long n) : num_(n), den_(1) {}
    Fraction(BigInt n) : num_(std::move(n)), den_(1) {}
    Fraction(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }
    Fraction(long long n, long long d) : num_(n), den_(d) { reduce(); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    Fraction operator+(const Fraction& o) const {
        return Fraction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    Fraction operator-(const Fraction& o) const {
        return Fraction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    Fraction operator*(const Fraction& o) const {
        return Fraction(num_ * o.num_, den_ * o.den_);
    }
    Fraction operator/(const Fraction& o) const {
        if (o.num_ == 0) throw std::domain_error("division by zero fraction");
        return Fraction(num_ * o.den_, den_ * o.num_);
    }
    Fraction operator-() const {
        Fraction r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    Fraction& operator+=(const Fraction& o) { return *this = *this + o; }
    Fraction& operator-=(const Fraction& o) { return *this = *this - o; }
    Fraction& operator*=(const Fraction& o) { return *this = *this * o; }

    bool operator==(const Fraction& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Fraction& o) const { return !(*this == o); }
    bool operator<(const Fraction& o) const { return num_ * o.den_ < o.num_ * den_; }
    bool operator<=(const Fraction& o) const { return num_ * o.den_ <= o.num_ * den_; }
    bool operator>(const Fraction& o) const { return o < *this; }
    bool operator>=(const Fraction& o) const { return o <= *this; }

    bool is_integer() const { return den_ == 1; }

    std::string str() const {
        if (den_ == 1) return num_.str();
        return num_.str() + "/" + den_.str();
    }

    // Decimal rendering with `sig` significant digits, integer arithmetic only
    // so output is identical on every platform. Display use only.
    std::string decimal(int sig = 10) const {
        if (num_ == 0) return "0";
        BigInt a = num_ < 0 ? BigInt(-num_) : num_;
        BigInt b = den_;
        int exp = 0;
        while (a < b) { a *= 10; --exp; }
        while (a >= b * 10) { b *= 10; ++exp; }
        std::string digits;
        for (int i = 0; i < sig; ++i) {
            BigInt d = a / b;
            digits += static_cast<char>('0' + static_cast<int>(d));
            a = (a - d * b) * 10;
        }
        // round half up on the next digit
        if (a / b >= 5) {
            int i = sig - 1;
            while (i >= 0) {
                if (digits[i] != '9') { ++digits[i]; break; }
                digits[i] = '0';
                --i;
            }
            if (i < 0) { digits.insert(digits.begin(), '1'); digits.pop_back(); ++exp; }
        }
        while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
        std::string sign = num_ < 0 ? "-" : "";
        if (exp >= 0 && exp <= 9) {
            std::string out;
            if (static_cast<int>(digits.size()) <= exp) digits.append(exp + 1 - digits.size(), '0');
            out = digits.substr(0, exp + 1);
            if (digits.size() > static_cast<size_t>(exp) + 1) out += "." + digits.substr(exp + 1);
            return sign + out;
        }
        if (exp < 0 && exp >= -4) {
            std::string out = "0.";
            out.append(-exp - 1, '0');
            out += digits;
            return sign + out;
        }
        std::string out(1, digits[0]);
        if (digits.size() > 1) out += "." + digits.substr(1);
        out += "e" + std::to_string(exp);
        return sign + out;
    }

private:
    void reduce() {
        if (den_ == 0) throw std::domain_error("zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        if (num_ == 0) { den_ = 1; return; }
        BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
        num_ /= g;
        den_ /= g;
    }

    BigInt num_;
    BigInt den_;
};

} // namespace subdeg
