#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "fpsg/errors.hpp"

namespace fpsg {

// Arbitrary-precision rational, always canonical: gcd(|num|, den) = 1,
// den > 0, zero is 0/1.
class Rational {
public:
	Rational() : v_(0) {}
	Rational(long n) : v_(n) {} // NOLINT: implicit by design
	Rational(long num, long den) {
		if (den == 0)
			throw Error("zero divisor");
		v_ = mpq_class(num, den);
		v_.canonicalize();
	}
	explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

	// Accepts "p", "p/q", optional leading sign on p, q unsigned.
	static Rational parse(std::string_view s) {
		std::size_t i = 0;
		auto digits = [&](std::size_t from) {
			std::size_t j = from;
			while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
				++j;
			return j;
		};
		if (i < s.size() && (s[i] == '+' || s[i] == '-'))
			++i;
		std::size_t num_end = digits(i);
		if (num_end == i)
			throw Error("cannot parse rational '" + std::string(s) + "'");
		std::size_t j = num_end;
		if (j < s.size()) {
			if (s[j] != '/' || digits(j + 1) != s.size() || j + 1 == s.size())
				throw Error("cannot parse rational '" + std::string(s) + "'");
		}
		// mpq_set_str rejects a leading '+'
		mpq_class v(std::string(s[0] == '+' ? s.substr(1) : s), 10);
		if (v.get_den() == 0)
			throw Error("zero divisor");
		v.canonicalize();
		return Rational(std::move(v));
	}

	// "p/q", with "/q" omitted when q = 1.
	std::string str() const {
		if (v_.get_den() == 1)
			return v_.get_num().get_str();
		return v_.get_num().get_str() + "/" + v_.get_den().get_str();
	}

	bool is_zero() const { return sgn(v_) == 0; }
	bool is_one() const { return v_ == 1; }
	int sign() const { return sgn(v_); }
	const mpq_class &raw() const { return v_; }

	Rational operator-() const { return Rational(mpq_class(-v_)); }

	Rational &operator+=(const Rational &o) {
		v_ += o.v_;
		return *this;
	}
	Rational &operator-=(const Rational &o) {
		v_ -= o.v_;
		return *this;
	}
	Rational &operator*=(const Rational &o) {
		v_ *= o.v_;
		return *this;
	}
	Rational &operator/=(const Rational &o) {
		if (o.is_zero())
			throw Error("zero divisor");
		v_ /= o.v_;
		return *this;
	}

	friend Rational operator+(Rational a, const Rational &b) { return a += b; }
	friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
	friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
	friend Rational operator/(Rational a, const Rational &b) { return a /= b; }

	friend bool operator==(const Rational &a, const Rational &b) { return a.v_ == b.v_; }
	friend bool operator!=(const Rational &a, const Rational &b) { return a.v_ != b.v_; }
	friend bool operator<(const Rational &a, const Rational &b) { return a.v_ < b.v_; }

	Rational pow(unsigned long e) const {
		mpq_class out;
		mpz_pow_ui(mpq_numref(out.get_mpq_t()), mpq_numref(v_.get_mpq_t()), e);
		mpz_pow_ui(mpq_denref(out.get_mpq_t()), mpq_denref(v_.get_mpq_t()), e);
		return Rational(std::move(out));
	}

private:
	mpq_class v_;
};

} // namespace fpsg
