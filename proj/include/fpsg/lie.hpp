#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fpsg/series.hpp"

namespace fpsg {

// Element of the Lie algebra of formal vector fields: coefficients a_1..a_N
// against the basis e_j = -x^(j+1) d/dx (the basis itself is never
// materialized). Bracket: [e_i, e_j] = (i-j) e_(i+j).
class VectorField {
public:
	explicit VectorField(std::size_t order) : c_(check_order(order)) {}

	static VectorField zero(std::size_t order) { return VectorField(order); }

	static VectorField from_coeffs(std::vector<FieldElem> coeffs) {
		check_order(coeffs.size());
		VectorField v(coeffs.size());
		v.c_ = std::move(coeffs);
		return v;
	}

	// a_j * e_j alone.
	static VectorField basis(std::size_t order, std::size_t j, FieldElem a = FieldElem(1)) {
		VectorField v(order);
		v.set_coeff(j, std::move(a));
		return v;
	}

	std::size_t order() const { return c_.size(); }
	const FieldElem &coeff(std::size_t j) const { return c_.at(j - 1); }
	void set_coeff(std::size_t j, FieldElem v) { c_.at(j - 1) = std::move(v); }
	const std::vector<FieldElem> &coeffs() const { return c_; }

	bool is_zero() const {
		for (const auto &c : c_)
			if (!c.is_zero())
				return false;
		return true;
	}

	std::optional<std::size_t> ord() const {
		for (std::size_t j = 1; j <= order(); ++j)
			if (!coeff(j).is_zero())
				return j;
		return std::nullopt;
	}

	VectorField scaled(const FieldElem &a) const {
		VectorField out(order());
		for (std::size_t j = 1; j <= order(); ++j)
			if (!coeff(j).is_zero())
				out.set_coeff(j, coeff(j) * a);
		return out;
	}

	friend VectorField operator*(const FieldElem &a, const VectorField &v) {
		return v.scaled(a);
	}

	friend VectorField operator+(const VectorField &a, const VectorField &b) {
		if (a.order() != b.order())
			throw Error("order mismatch");
		VectorField out(a.order());
		for (std::size_t j = 1; j <= a.order(); ++j)
			out.set_coeff(j, a.coeff(j) + b.coeff(j));
		return out;
	}
	friend VectorField operator-(const VectorField &a, const VectorField &b) {
		if (a.order() != b.order())
			throw Error("order mismatch");
		VectorField out(a.order());
		for (std::size_t j = 1; j <= a.order(); ++j)
			out.set_coeff(j, a.coeff(j) - b.coeff(j));
		return out;
	}
	VectorField operator-() const {
		VectorField out(order());
		for (std::size_t j = 1; j <= order(); ++j)
			out.set_coeff(j, -coeff(j));
		return out;
	}

	friend bool operator==(const VectorField &a, const VectorField &b) = default;

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

// [a, b]_n = sum_{i+j=n} a_i b_j (i - j), truncated at N.
inline VectorField bracket(const VectorField &a, const VectorField &b) {
	if (a.order() != b.order())
		throw Error("order mismatch");
	const std::size_t n = a.order();
	VectorField out(n);
	for (std::size_t m = 2; m <= n; ++m) {
		TermAccumulator acc;
		for (std::size_t i = 1; i < m; ++i) {
			std::size_t j = m - i;
			if (i == j || a.coeff(i).is_zero() || b.coeff(j).is_zero())
				continue;
			long w = static_cast<long>(i) - static_cast<long>(j);
			acc.add_product(a.coeff(i).scaled(Rational(w)), b.coeff(j));
		}
		if (!acc.empty())
			out.set_coeff(m, acc.take());
	}
	return out;
}

namespace detail {

// F(r) = sum_j a_j r^(j+1), the right-hand side of the flow equation.
inline RPoly flow_rhs(const VectorField &a) {
	RPoly f(a.order() + 2);
	for (std::size_t j = 1; j <= a.order(); ++j)
		f[j + 1] = a.coeff(j);
	return f;
}

} // namespace detail

// Exponential map: integrates dv/dx = sum_j a_j v^(j+1), v(0) = r, order by
// order in x and evaluates at x = 1. The x^k Taylor coefficient satisfies
// k V_k = F * V_(k-1)', so each step is one truncated multiplication; V_k has
// r-order > k and the sum closes after N steps.
inline Series exp(const VectorField &a) {
	const std::size_t n = a.order();
	const std::size_t maxdeg = n + 1;
	detail::RPoly f = detail::flow_rhs(a);
	detail::RPoly v(maxdeg + 1);
	v[1] = FieldElem(1);
	std::vector<TermAccumulator> acc(maxdeg + 1);
	acc[1].add(v[1]);
	for (std::size_t k = 1; k <= n; ++k) {
		v = detail::rpoly_mul_trunc(f, detail::rpoly_derivative(v), maxdeg);
		bool all_zero = true;
		for (std::size_t d = 0; d <= maxdeg; ++d) {
			if (v[d].is_zero())
				continue;
			v[d] = v[d].div_int(static_cast<long>(k));
			acc[d].add(v[d]);
			all_zero = false;
		}
		if (all_zero)
			break;
	}
	detail::RPoly out(maxdeg + 1);
	for (std::size_t d = 0; d <= maxdeg; ++d)
		out[d] = acc[d].take();
	return detail::series_of(out, n);
}

// Second, independent route to the exponential: the coefficient of r^(i+1) is
// the sum over compositions i_1 + ... + i_k = i of
//   c_(i_1) ... c_(i_k) / k!  *  prod_{j<k} (i_1 + ... + i_j + 1),
// the product being empty for k = 1. Exponential in i; used to cross-validate
// exp on small orders.
inline Series exp_formula(const VectorField &a) {
	const std::size_t n = a.order();
	std::vector<TermAccumulator> acc(n + 1);

	// Depth-first over compositions, extending by one part at a time and
	// carrying weight/k! incrementally.
	struct Frame {
		std::size_t sum;
		std::size_t k;
		Rational weight; // prod (partial sums + 1) / k!
		FieldElem prod;
	};
	std::vector<Frame> stack;
	for (std::size_t p = 1; p <= n; ++p)
		if (!a.coeff(p).is_zero())
			stack.push_back({p, 1, Rational(1), a.coeff(p)});
	while (!stack.empty()) {
		Frame fr = std::move(stack.back());
		stack.pop_back();
		acc[fr.sum].add_scaled(fr.prod, fr.weight);
		for (std::size_t p = 1; p + fr.sum <= n; ++p) {
			if (a.coeff(p).is_zero())
				continue;
			Rational w = fr.weight * Rational(static_cast<long>(fr.sum) + 1,
			                                  static_cast<long>(fr.k) + 1);
			stack.push_back({fr.sum + p, fr.k + 1, std::move(w), fr.prod * a.coeff(p)});
		}
	}

	Series out(n);
	for (std::size_t i = 1; i <= n; ++i)
		if (!acc[i].empty())
			out.set_coeff(i, acc[i].take());
	return out;
}

// Inverse of exp. Solves the flow H(x) = exp(x log h) from the functional
// equation H(x+1) = H(x) o h: the coefficient of r^(i+1) in H is a polynomial
// w_i(x) of degree <= i with w_i(0) = 0 and
//   w_i(x+1) - w_i(x) = h_i + sum_{j<i} w_j(x) [h^(j+1)]_(i+1),
// a discrete difference equation solved top-down; then (log h)_i = w_i'(0).
// Triangular in i, one powers-table of h in total.
inline VectorField log(const Series &h) {
	const std::size_t n = h.order();
	const std::size_t maxdeg = n + 1;
	auto pows = detail::rpoly_powers(detail::rpoly_of(h), n + 1, maxdeg);

	// Pascal triangle for the difference-equation solve.
	std::vector<std::vector<Rational>> binom(n + 1);
	for (std::size_t d = 0; d <= n; ++d) {
		binom[d].resize(d + 1);
		binom[d][0] = Rational(1);
		binom[d][d] = Rational(1);
		for (std::size_t e = 1; e < d; ++e)
			binom[d][e] = binom[d - 1][e - 1] + binom[d - 1][e];
	}

	VectorField a(n);
	std::vector<std::vector<FieldElem>> w(n + 1); // w[i][d] = coeff of x^d, d in 1..i
	for (std::size_t i = 1; i <= n; ++i) {
		// Right-hand side R(x), degree <= i-1.
		std::vector<TermAccumulator> racc(i);
		racc[0].add(h.coeff(i));
		for (std::size_t j = 1; j < i; ++j) {
			const FieldElem &c = pows[j][i + 1]; // [h^(j+1)]_(i+1)
			if (c.is_zero())
				continue;
			for (std::size_t d = 1; d <= j; ++d)
				if (!w[j][d].is_zero())
					racc[d].add_product(w[j][d], c);
		}
		std::vector<FieldElem> r(i);
		for (std::size_t d = 0; d < i; ++d)
			r[d] = racc[d].take();

		// Solve w(x+1) - w(x) = R(x), w(0) = 0: match degrees downward, the
		// x^(d-1) coefficient of the left side is d * beta_d plus corrections
		// from higher solved betas.
		std::vector<FieldElem> beta(i + 1);
		for (std::size_t d = i; d >= 1; --d) {
			beta[d] = r[d - 1].div_int(static_cast<long>(d));
			// (x+1)^d - x^d contributes binom(d, e) x^e for e < d.
			for (std::size_t e = 0; e + 1 < d; ++e)
				r[e] -= beta[d].scaled(binom[d][e]);
		}
		w[i] = std::move(beta);
		a.set_coeff(i, w[i][1]);
	}
	return a;
}

// h^alpha = exp(alpha * log h); the one-parameter subgroup through h at a
// possibly symbolic exponent.
inline Series flow(const Series &h, const FieldElem &alpha) {
	return exp(log(h).scaled(alpha));
}

// lambda with a = lambda * b, when it exists with lambda a polynomial (or
// rational constant); nullopt otherwise. Both zero is indeterminate. When the
// fields are proportional only over the fraction field (the ratio exists but
// is not a polynomial), the optional diagnostic says so; the embedding
// constructions never produce that case.
inline std::optional<FieldElem> proportional(const VectorField &a, const VectorField &b,
                                             std::string *diagnostic = nullptr) {
	if (a.order() != b.order())
		throw Error("order mismatch");
	if (b.is_zero()) {
		if (a.is_zero())
			throw Error("indeterminate");
		return std::nullopt;
	}
	auto j = b.ord();
	auto lambda = a.coeff(*j).divided_by(b.coeff(*j));
	if (!lambda) {
		if (diagnostic) {
			bool cross = true;
			for (std::size_t i = 1; i <= a.order() && cross; ++i)
				for (std::size_t k = i + 1; k <= a.order() && cross; ++k)
					cross = a.coeff(i) * b.coeff(k) == a.coeff(k) * b.coeff(i);
			if (cross)
				*diagnostic = "proportional only over the fraction field: the "
				              "coefficient ratio is not a polynomial";
		}
		return std::nullopt;
	}
	for (std::size_t i = 1; i <= a.order(); ++i)
		if (!(a.coeff(i) == *lambda * b.coeff(i)))
			return std::nullopt;
	return lambda;
}

// Whether f and g commute at the truncation order. The direct commutator is
// ground truth; the Lie-algebra proportionality shortcut cross-checks the
// direction that truncation cannot excuse.
inline bool commute(const Series &f, const Series &g) {
	bool direct = commutator(f, g).is_identity();
	if (!f.is_identity() && !g.is_identity()) {
		auto lambda = proportional(log(f), log(g));
		if (lambda && !direct)
			throw InternalError("proportional fields with non-commuting exponentials");
	}
	return direct;
}

// lambda with g = flow(h, lambda), else nullopt. h must not be the identity.
inline std::optional<FieldElem> centralizer_member(const Series &g, const Series &h) {
	if (h.is_identity())
		throw Error("trivial base");
	return proportional(log(g), log(h));
}

} // namespace fpsg
