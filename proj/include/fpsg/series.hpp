#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fpsg/field_elem.hpp"

namespace fpsg {

// Group element of the truncated composition group: the series
// r + c_1 r^2 + ... + c_N r^(N+1). The unit leading coefficient is implicit.
// Product convention throughout: (f*g)(r) = f(g(r)).
class Series {
public:
	explicit Series(std::size_t order) : c_(check_order(order)) {}

	static Series identity(std::size_t order) { return Series(order); }

	static Series from_coeffs(std::vector<FieldElem> coeffs) {
		check_order(coeffs.size());
		Series s(coeffs.size());
		s.c_ = std::move(coeffs);
		return s;
	}

	std::size_t order() const { return c_.size(); }

	// 1-based: coeff(i) multiplies r^(i+1).
	const FieldElem &coeff(std::size_t i) const { return c_.at(i - 1); }
	void set_coeff(std::size_t i, FieldElem v) { c_.at(i - 1) = std::move(v); }
	const std::vector<FieldElem> &coeffs() const { return c_; }

	bool is_identity() const {
		for (const auto &c : c_)
			if (!c.is_zero())
				return false;
		return true;
	}

	friend bool operator==(const Series &a, const Series &b) = default;

	std::string str() const {
		std::string out = "[";
		for (std::size_t i = 0; i < c_.size(); ++i)
			out += (i ? ", " : "") + c_[i].str();
		return out + "]";
	}

private:
	static std::size_t check_order(std::size_t order) {
		if (order < 1)
			throw Error("order must be at least 1");
		return order;
	}

	std::vector<FieldElem> c_;
};

namespace detail {

// Dense polynomial in r, index = power of r, truncated everywhere.
using RPoly = std::vector<FieldElem>;

// Full polynomial g(r) = r + c_1 r^2 + ...; index N+1 is the top degree.
inline RPoly rpoly_of(const Series &s) {
	RPoly p(s.order() + 2);
	p[1] = FieldElem(Rational(1));
	for (std::size_t i = 1; i <= s.order(); ++i)
		p[i + 1] = s.coeff(i);
	return p;
}

inline Series series_of(const RPoly &p, std::size_t order) {
	Series out(order);
	for (std::size_t i = 1; i <= order; ++i)
		if (i + 1 < p.size())
			out.set_coeff(i, p[i + 1]);
	return out;
}

// a*b with every degree above maxdeg dropped. One accumulator per output
// degree keeps canonicalization out of the inner loop.
inline RPoly rpoly_mul_trunc(const RPoly &a, const RPoly &b, std::size_t maxdeg) {
	RPoly out(maxdeg + 1);
	for (std::size_t m = 0; m <= maxdeg; ++m) {
		TermAccumulator acc;
		for (std::size_t d = 0; d < a.size() && d <= m; ++d) {
			if (a[d].is_zero())
				continue;
			std::size_t e = m - d;
			if (e < b.size() && !b[e].is_zero())
				acc.add_product(a[d], b[e]);
		}
		if (!acc.empty())
			out[m] = acc.take();
	}
	return out;
}

inline RPoly rpoly_derivative(const RPoly &a) {
	if (a.size() <= 1)
		return RPoly(1);
	RPoly out(a.size() - 1);
	for (std::size_t d = 1; d < a.size(); ++d)
		out[d - 1] = a[d].scaled(Rational(static_cast<long>(d)));
	return out;
}

// Powers f^1..f^(count) truncated at maxdeg; shared by compose and inverse.
inline std::vector<RPoly> rpoly_powers(const RPoly &f, std::size_t count,
                                       std::size_t maxdeg) {
	std::vector<RPoly> pows;
	pows.reserve(count);
	pows.push_back(f);
	for (std::size_t j = 2; j <= count; ++j)
		pows.push_back(rpoly_mul_trunc(pows.back(), f, maxdeg));
	return pows;
}

} // namespace detail

// f(g(r)) truncated at the common order.
inline Series compose(const Series &f, const Series &g) {
	if (f.order() != g.order())
		throw Error("order mismatch");
	const std::size_t n = f.order();
	const std::size_t maxdeg = n + 1;

	// f(g) = g + sum_i f_i g^(i+1); powers only up to the last nonzero f_i.
	std::size_t top = 0;
	for (std::size_t i = 1; i <= n; ++i)
		if (!f.coeff(i).is_zero())
			top = i;

	detail::RPoly gp = detail::rpoly_of(g);
	std::vector<TermAccumulator> acc(maxdeg + 1);
	for (std::size_t d = 0; d <= maxdeg; ++d)
		acc[d].add(gp[d]);
	detail::RPoly pow = gp;
	for (std::size_t i = 1; i <= top; ++i) {
		pow = detail::rpoly_mul_trunc(pow, gp, maxdeg);
		if (f.coeff(i).is_zero())
			continue;
		for (std::size_t d = 0; d <= maxdeg; ++d)
			if (!pow[d].is_zero())
				acc[d].add_product(pow[d], f.coeff(i));
	}
	detail::RPoly out(maxdeg + 1);
	for (std::size_t d = 0; d <= maxdeg; ++d)
		out[d] = acc[d].take();
	return detail::series_of(out, n);
}

inline Series operator*(const Series &f, const Series &g) { return compose(f, g); }

// Compositional inverse by triangular back-substitution against the powers
// of f: the unknown coefficient g_i enters degree i+1 of g(f) with unit
// multiplier.
inline Series inverse(const Series &f) {
	const std::size_t n = f.order();
	const std::size_t maxdeg = n + 1;
	auto pows = detail::rpoly_powers(detail::rpoly_of(f), n + 1, maxdeg);
	Series g(n);
	for (std::size_t i = 1; i <= n; ++i) {
		// 0 = [r^(i+1)] g(f) = f_i + sum_{j<i} g_j [f^(j+1)]_(i+1) + g_i
		FieldElem acc = f.coeff(i);
		for (std::size_t j = 1; j < i; ++j) {
			const FieldElem &p = pows[j][i + 1];
			if (!g.coeff(j).is_zero() && !p.is_zero())
				acc += g.coeff(j) * p;
		}
		g.set_coeff(i, -acc);
	}
	return g;
}

inline Series power(const Series &f, long n) {
	Series base = n < 0 ? inverse(f) : f;
	unsigned long e = n < 0 ? -static_cast<unsigned long>(n) : static_cast<unsigned long>(n);
	Series out = Series::identity(f.order());
	while (e) {
		if (e & 1ul)
			out = compose(out, base);
		e >>= 1ul;
		if (e)
			base = compose(base, base);
	}
	return out;
}

// g^(-1) * f * g.
inline Series conjugate(const Series &f, const Series &g) {
	return compose(compose(inverse(g), f), g);
}

// f * g * f^(-1) * g^(-1).
inline Series commutator(const Series &f, const Series &g) {
	return compose(compose(compose(f, g), inverse(f)), inverse(g));
}

// Smallest index with a nonzero coefficient; nullopt for the identity.
inline std::optional<std::size_t> ord(const Series &f) {
	for (std::size_t i = 1; i <= f.order(); ++i)
		if (!f.coeff(i).is_zero())
			return i;
	return std::nullopt;
}

// First M coefficients; realizes the quotient onto the order-M truncation.
inline Series truncate(const Series &f, std::size_t M) {
	if (M > f.order())
		throw Error("cannot extend");
	Series out(M);
	for (std::size_t i = 1; i <= M; ++i)
		out.set_coeff(i, f.coeff(i));
	return out;
}

} // namespace fpsg
