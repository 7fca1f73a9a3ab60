#pragma once

// Shared test helpers: seeded generators for random algebra elements and
// independent oracle implementations (naive substitution, Lagrange inversion,
// literal Picard iteration, exp-based triangular log) used to freeze expected
// values. The oracles deliberately avoid the library's algorithms.

#include <fpsg/fpsg.hpp>

#include <random>
#include <string>
#include <vector>

namespace testutil {

using namespace fpsg;

struct Rng {
	std::mt19937_64 g;
	explicit Rng(std::uint64_t seed) : g(seed) {}

	long intin(long lo, long hi) {
		return std::uniform_int_distribution<long>(lo, hi)(g);
	}
	bool chance(double p) {
		return std::uniform_real_distribution<double>(0.0, 1.0)(g) < p;
	}
};

inline Rational rand_rational(Rng &rng, long max_num = 9, long max_den = 4) {
	return Rational(rng.intin(-max_num, max_num), rng.intin(1, max_den));
}

inline Rational rand_nonzero_rational(Rng &rng, long max_num = 9, long max_den = 4) {
	Rational r = rand_rational(rng, max_num, max_den);
	while (r.is_zero())
		r = rand_rational(rng, max_num, max_den);
	return r;
}

inline FieldElem rand_field_elem(Rng &rng, const std::vector<SymbolId> &syms,
                                 int max_deg, int max_terms) {
	FieldElem out;
	int terms = static_cast<int>(rng.intin(1, max_terms));
	for (int t = 0; t < terms; ++t) {
		Monomial m;
		int deg = static_cast<int>(rng.intin(0, max_deg));
		for (int d = 0; d < deg && !syms.empty(); ++d) {
			SymbolId s = syms[static_cast<std::size_t>(
			    rng.intin(0, static_cast<long>(syms.size()) - 1))];
			m = m * Monomial::var(s);
		}
		out += FieldElem::term(rand_rational(rng), m);
	}
	return out;
}

inline FieldElem rand_nonzero_field_elem(Rng &rng, const std::vector<SymbolId> &syms,
                                         int max_deg, int max_terms) {
	FieldElem f = rand_field_elem(rng, syms, max_deg, max_terms);
	while (f.is_zero())
		f = rand_field_elem(rng, syms, max_deg, max_terms);
	return f;
}

// Rational-coefficient series, each coefficient nonzero with probability p.
inline Series rand_series(Rng &rng, std::size_t order, double p = 0.8) {
	Series s(order);
	for (std::size_t i = 1; i <= order; ++i)
		if (rng.chance(p))
			s.set_coeff(i, FieldElem(rand_rational(rng)));
	return s;
}

inline Series rand_nonidentity_series(Rng &rng, std::size_t order) {
	Series s = rand_series(rng, order);
	while (s.is_identity())
		s = rand_series(rng, order);
	return s;
}

inline VectorField rand_vector_field(Rng &rng, std::size_t order, double p = 0.8) {
	VectorField v(order);
	for (std::size_t j = 1; j <= order; ++j)
		if (rng.chance(p))
			v.set_coeff(j, FieldElem(rand_rational(rng)));
	return v;
}

inline VectorField rand_vector_field_sym(Rng &rng, std::size_t order,
                                         const std::vector<SymbolId> &syms,
                                         double p = 0.6) {
	VectorField v(order);
	for (std::size_t j = 1; j <= order; ++j)
		if (rng.chance(p))
			v.set_coeff(j, rand_field_elem(rng, syms, 2, 2));
	return v;
}

// ---- oracles ----------------------------------------------------------

// f(g(r)) by schoolbook full-degree substitution, truncating only at the end.
inline Series naive_compose(const Series &f, const Series &g) {
	const std::size_t n = f.order();
	const std::size_t full = (n + 1) * (n + 1) + 1;
	std::vector<FieldElem> gp(full), acc(full), pw(full);
	gp[1] = FieldElem(1);
	for (std::size_t i = 1; i <= n; ++i)
		gp[i + 1] = g.coeff(i);
	auto mul = [&](const std::vector<FieldElem> &a, const std::vector<FieldElem> &b) {
		std::vector<FieldElem> out(full);
		for (std::size_t d = 0; d < full; ++d)
			for (std::size_t e = 0; d + e < full; ++e)
				if (!a[d].is_zero() && !b[e].is_zero())
					out[d + e] += a[d] * b[e];
		return out;
	};
	acc = gp;
	pw = gp;
	for (std::size_t i = 1; i <= n; ++i) {
		pw = mul(pw, gp);
		if (f.coeff(i).is_zero())
			continue;
		for (std::size_t d = 0; d < full; ++d)
			if (!pw[d].is_zero())
				acc[d] += pw[d] * f.coeff(i);
	}
	Series out(n);
	for (std::size_t i = 1; i <= n; ++i)
		out.set_coeff(i, acc[i + 1]);
	return out;
}

// Compositional inverse of a rational-coefficient series via the Lagrange
// inversion formula: [r^n] g = (1/n) [w^(n-1)] (w / f(w))^n.
inline Series lagrange_inverse(const Series &f) {
	const std::size_t n = f.order();
	auto coeff_rat = [&](std::size_t i) { return f.coeff(i).constant_value(); };
	// p = w/f(w) = 1 / (1 + f_1 w + ... + f_N w^N), computed to degree n.
	std::vector<Rational> denom(n + 1), p(n + 1);
	denom[0] = Rational(1);
	for (std::size_t i = 1; i <= n; ++i)
		denom[i] = coeff_rat(i);
	p[0] = Rational(1);
	for (std::size_t k = 1; k <= n; ++k) {
		Rational acc(0);
		for (std::size_t j = 1; j <= k; ++j)
			acc += denom[j] * p[k - j];
		p[k] = -acc;
	}
	auto mul_trunc = [&](const std::vector<Rational> &a, const std::vector<Rational> &b) {
		std::vector<Rational> out(n + 1);
		for (std::size_t d = 0; d <= n; ++d)
			for (std::size_t e = 0; d + e <= n; ++e)
				out[d + e] += a[d] * b[e];
		return out;
	};
	Series g(n);
	std::vector<Rational> q = p; // p^m
	for (std::size_t m = 1; m <= n + 1; ++m) {
		if (m >= 2) {
			// [r^m] g = (1/m) [w^(m-1)] p^m, and [r^m] g = g_(m-1).
			g.set_coeff(m - 1, FieldElem(q[m - 1] / Rational(static_cast<long>(m))));
		}
		if (m <= n)
			q = mul_trunc(q, p);
	}
	return g;
}

// Literal Picard iteration for the flow equation dv/dx = sum a_j v^(j+1),
// v(0) = r: v_(k+1) = r + integral of F(v_k), evaluated at x = 1 after N
// iterations. Coefficients are polynomials in x stored densely.
inline Series picard_exp(const VectorField &a) {
	const std::size_t n = a.order();
	const std::size_t rdeg = n + 1;   // powers of r: 1..n+1
	const std::size_t xdeg = n;       // powers of x: 0..n
	using XPoly = std::vector<FieldElem>;
	using Rep = std::vector<XPoly>; // index = power of r

	auto zero_rep = [&] { return Rep(rdeg + 1, XPoly(xdeg + 1)); };
	auto mul = [&](const Rep &u, const Rep &v) {
		Rep out = zero_rep();
		for (std::size_t d = 1; d <= rdeg; ++d)
			for (std::size_t e = 1; d + e <= rdeg; ++e)
				for (std::size_t xa = 0; xa <= xdeg; ++xa)
					for (std::size_t xb = 0; xa + xb <= xdeg; ++xb)
						if (!u[d][xa].is_zero() && !v[e][xb].is_zero())
							out[d + e][xa + xb] += u[d][xa] * v[e][xb];
		return out;
	};

	Rep v = zero_rep();
	v[1][0] = FieldElem(1);
	for (std::size_t iter = 0; iter < n; ++iter) {
		// F(v) = sum_j a_j v^(j+1)
		Rep rhs = zero_rep();
		Rep pw = v;
		for (std::size_t j = 1; j <= n; ++j) {
			pw = mul(pw, v);
			if (a.coeff(j).is_zero())
				continue;
			for (std::size_t d = 1; d <= rdeg; ++d)
				for (std::size_t x = 0; x <= xdeg; ++x)
					if (!pw[d][x].is_zero())
						rhs[d][x] += pw[d][x] * a.coeff(j);
		}
		// v <- r + integral_0^x rhs
		Rep next = zero_rep();
		next[1][0] = FieldElem(1);
		for (std::size_t d = 1; d <= rdeg; ++d)
			for (std::size_t x = 0; x < xdeg; ++x)
				if (!rhs[d][x].is_zero())
					next[d][x + 1] = rhs[d][x].div_int(static_cast<long>(x) + 1);
		v = std::move(next);
	}

	Series out(n);
	for (std::size_t i = 1; i <= n; ++i) {
		FieldElem c;
		for (std::size_t x = 0; x <= xdeg; ++x)
			c += v[i + 1][x];
		out.set_coeff(i, c);
	}
	return out;
}

// Triangular solve of exp(a) = h using the library exp itself: coefficient i
// of exp(a) is a_i plus terms in a_1..a_(i-1).
inline VectorField naive_log(const Series &h) {
	const std::size_t n = h.order();
	VectorField a(n);
	for (std::size_t i = 1; i <= n; ++i) {
		Series e = fpsg::exp(a);
		a.set_coeff(i, h.coeff(i) - e.coeff(i));
	}
	return a;
}

// Freely reduced word over the given generators: exponents +-1, never a
// letter followed by its inverse.
inline Word rand_reduced_word(Rng &rng, const std::vector<std::string> &gens,
                              std::size_t len) {
	std::vector<Word::Letter> letters;
	for (std::size_t i = 0; i < len; ++i) {
		for (;;) {
			std::string g = gens[static_cast<std::size_t>(
			    rng.intin(0, static_cast<long>(gens.size()) - 1))];
			long e = rng.chance(0.5) ? 1 : -1;
			if (!letters.empty() && letters.back().gen == g &&
			    letters.back().exp == -e)
				continue;
			letters.push_back({std::move(g), e});
			break;
		}
	}
	return Word(std::move(letters));
}

// Every freely reduced word of length exactly len (no letter followed by its
// inverse), as +-1 letter sequences.
inline void enumerate_reduced_words(const std::vector<std::string> &gens,
                                    std::size_t len, std::vector<Word> &out) {
	std::vector<Word::Letter> cur;
	auto rec = [&](auto &&self, std::size_t depth) -> void {
		if (depth == len) {
			out.push_back(Word(cur));
			return;
		}
		for (const auto &g : gens)
			for (long e : {1L, -1L}) {
				if (!cur.empty() && cur.back().gen == g && cur.back().exp == -e)
					continue;
				cur.push_back({g, e});
				self(self, depth + 1);
				cur.pop_back();
			}
	};
	rec(rec, 0);
}

// RAII guard for the global term budget.
struct MaxTermsGuard {
	std::size_t saved;
	explicit MaxTermsGuard(std::size_t n) : saved(FieldElem::max_terms()) {
		FieldElem::set_max_terms(n);
	}
	~MaxTermsGuard() { FieldElem::set_max_terms(saved); }
};

} // namespace testutil
