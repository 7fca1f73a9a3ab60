#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fpsg/errors.hpp"
#include "fpsg/rational.hpp"
#include "fpsg/symbols.hpp"

namespace fpsg {

// Power product of symbols: ascending (id, exponent) pairs, exponents > 0.
class Monomial {
public:
	using Factor = std::pair<SymbolId, std::uint32_t>;

	Monomial() = default;

	static Monomial one() { return Monomial(); }

	static Monomial var(SymbolId id, std::uint32_t exp = 1) {
		Monomial m;
		if (exp > 0) {
			m.factors_.emplace_back(id, exp);
			m.degree_ = exp;
		}
		return m;
	}

	bool is_one() const { return factors_.empty(); }
	std::uint64_t degree() const { return degree_; }
	const std::vector<Factor> &factors() const { return factors_; }

	std::uint32_t exponent(SymbolId id) const {
		for (const auto &[s, e] : factors_)
			if (s == id)
				return e;
		return 0;
	}

	Monomial operator*(const Monomial &o) const {
		Monomial out;
		out.factors_.reserve(factors_.size() + o.factors_.size());
		auto a = factors_.begin(), ae = factors_.end();
		auto b = o.factors_.begin(), be = o.factors_.end();
		while (a != ae && b != be) {
			if (a->first < b->first)
				out.factors_.push_back(*a++);
			else if (b->first < a->first)
				out.factors_.push_back(*b++);
			else {
				out.factors_.emplace_back(a->first, a->second + b->second);
				++a, ++b;
			}
		}
		out.factors_.insert(out.factors_.end(), a, ae);
		out.factors_.insert(out.factors_.end(), b, be);
		out.degree_ = degree_ + o.degree_;
		return out;
	}

	// Exact quotient this / o, or nullopt when some exponent of o exceeds ours.
	std::optional<Monomial> divided_by(const Monomial &o) const {
		Monomial out;
		auto a = factors_.begin(), ae = factors_.end();
		for (const auto &[s, e] : o.factors_) {
			while (a != ae && a->first < s)
				out.factors_.push_back(*a++);
			if (a == ae || a->first != s || a->second < e)
				return std::nullopt;
			if (a->second > e)
				out.factors_.emplace_back(s, a->second - e);
			++a;
		}
		out.factors_.insert(out.factors_.end(), a, ae);
		out.degree_ = degree_ - o.degree_;
		return out;
	}

	friend bool operator==(const Monomial &a, const Monomial &b) {
		return a.factors_ == b.factors_;
	}

private:
	std::vector<Factor> factors_;
	std::uint64_t degree_ = 0;
};

// Graded lexicographic order: total degree first, ties broken by the exponent
// vector read in ascending symbol id (s0 before s1, larger exponent wins).
inline int grlex_cmp(const Monomial &a, const Monomial &b) {
	if (a.degree() != b.degree())
		return a.degree() < b.degree() ? -1 : 1;
	auto ia = a.factors().begin(), ea = a.factors().end();
	auto ib = b.factors().begin(), eb = b.factors().end();
	while (ia != ea && ib != eb) {
		if (ia->first < ib->first)
			return 1; // a has a positive exponent where b has zero
		if (ib->first < ia->first)
			return -1;
		if (ia->second != ib->second)
			return ia->second < ib->second ? -1 : 1;
		++ia, ++ib;
	}
	if (ia != ea)
		return 1;
	if (ib != eb)
		return -1;
	return 0;
}

struct GrlexGreater {
	bool operator()(const Monomial &a, const Monomial &b) const {
		return grlex_cmp(a, b) > 0;
	}
};

namespace detail {
inline std::atomic<std::size_t> &max_terms_slot() {
	static std::atomic<std::size_t> v{200000};
	return v;
}
} // namespace detail

// Element of Q[s0, s1, ...]: terms in strictly descending graded-lex order,
// no zero coefficients. The canonical form makes equality representational.
class FieldElem {
public:
	using Term = std::pair<Monomial, Rational>;

	FieldElem() = default; // zero
	FieldElem(Rational c) { // NOLINT: implicit by design
		if (!c.is_zero())
			terms_.emplace_back(Monomial::one(), std::move(c));
	}
	FieldElem(long n) : FieldElem(Rational(n)) {} // NOLINT

	static FieldElem var(const Symbol &s) { return var(s.id); }
	static FieldElem var(SymbolId id) {
		FieldElem f;
		f.terms_.emplace_back(Monomial::var(id), Rational(1));
		return f;
	}
	static FieldElem term(Rational c, Monomial m) {
		FieldElem f;
		if (!c.is_zero())
			f.terms_.emplace_back(std::move(m), std::move(c));
		return f;
	}

	// Trusts the input: strictly descending grlex, no zero coefficients.
	static FieldElem from_sorted_terms(std::vector<Term> terms) {
		check_budget(terms.size());
		FieldElem f;
		f.terms_ = std::move(terms);
		return f;
	}

	bool is_zero() const { return terms_.empty(); }
	bool is_constant() const {
		return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one());
	}
	Rational constant_value() const {
		if (terms_.empty())
			return Rational(0);
		if (!is_constant())
			throw Error("not a constant");
		return terms_[0].second;
	}

	std::size_t term_count() const { return terms_.size(); }
	std::uint64_t degree() const {
		return terms_.empty() ? 0 : terms_.front().first.degree();
	}
	const std::vector<Term> &terms() const { return terms_; }

	void collect_symbols(std::set<SymbolId> &out) const {
		for (const auto &[m, c] : terms_)
			for (const auto &[s, e] : m.factors())
				out.insert(s);
	}

	friend FieldElem operator+(const FieldElem &a, const FieldElem &b) {
		return merge(a, b, false);
	}
	friend FieldElem operator-(const FieldElem &a, const FieldElem &b) {
		return merge(a, b, true);
	}
	FieldElem operator-() const {
		FieldElem out;
		out.terms_.reserve(terms_.size());
		for (const auto &[m, c] : terms_)
			out.terms_.emplace_back(m, -c);
		return out;
	}

	friend FieldElem operator*(const FieldElem &a, const FieldElem &b);

	FieldElem &operator+=(const FieldElem &o) { return *this = *this + o; }
	FieldElem &operator-=(const FieldElem &o) { return *this = *this - o; }
	FieldElem &operator*=(const FieldElem &o) { return *this = *this * o; }

	FieldElem scaled(const Rational &c) const {
		if (c.is_zero())
			return FieldElem();
		FieldElem out;
		out.terms_.reserve(terms_.size());
		for (const auto &[m, q] : terms_)
			out.terms_.emplace_back(m, q * c);
		return out;
	}

	// Divides every coefficient by a nonzero integer.
	FieldElem div_int(long k) const {
		if (k == 0)
			throw Error("zero divisor");
		return scaled(Rational(1, k));
	}

	FieldElem pow(unsigned e) const {
		FieldElem out(Rational(1));
		FieldElem base = *this;
		while (e) {
			if (e & 1u)
				out = out * base;
			e >>= 1u;
			if (e)
				base = base * base;
		}
		return out;
	}

	// Exact value at a point covering every symbol that occurs.
	Rational evaluate(const std::map<SymbolId, Rational> &assignment) const {
		Rational out(0);
		for (const auto &[m, c] : terms_) {
			Rational t = c;
			for (const auto &[s, e] : m.factors()) {
				auto it = assignment.find(s);
				if (it == assignment.end())
					throw Error("unassigned symbol s" + std::to_string(s));
				t *= it->second.pow(e);
			}
			out += t;
		}
		return out;
	}

	// Exact polynomial quotient this / d, or nullopt when d does not divide.
	// Single-divisor reduction by the leading term; exactness makes the
	// remainder vanish precisely when d | this.
	std::optional<FieldElem> divided_by(const FieldElem &d) const {
		if (d.is_zero())
			throw Error("zero divisor");
		const auto &[dm, dc] = d.terms_.front();
		FieldElem rem = *this;
		std::vector<Term> quot;
		while (!rem.is_zero()) {
			const auto &[rm, rc] = rem.terms_.front();
			auto qm = rm.divided_by(dm);
			if (!qm)
				return std::nullopt;
			Rational qc = rc / dc;
			quot.emplace_back(*qm, qc);
			rem = rem - d.mul_term(*qm, qc);
		}
		// Quotient terms come out in strictly descending order because the
		// leading monomial of rem strictly decreases.
		return from_sorted_terms(std::move(quot));
	}

	friend bool operator==(const FieldElem &a, const FieldElem &b) {
		return a.terms_ == b.terms_;
	}

	std::string str() const {
		if (terms_.empty())
			return "0";
		std::string out;
		bool first = true;
		for (const auto &[m, c] : terms_) {
			Rational a = c.sign() < 0 ? -c : c;
			out += first ? (c.sign() < 0 ? "-" : "") : (c.sign() < 0 ? " - " : " + ");
			first = false;
			std::string mono;
			for (const auto &[s, e] : m.factors()) {
				if (!mono.empty())
					mono += "*";
				mono += "s" + std::to_string(s);
				if (e > 1)
					mono += "^" + std::to_string(e);
			}
			if (mono.empty())
				out += a.str();
			else if (a.is_one())
				out += mono;
			else
				out += a.str() + "*" + mono;
		}
		return out;
	}

	// Term budget shared by every FieldElem operation.
	static void set_max_terms(std::size_t n) { detail::max_terms_slot() = n; }
	static std::size_t max_terms() { return detail::max_terms_slot(); }
	static void check_budget(std::size_t n) {
		if (n > max_terms())
			throw BlowupError("blowup: polynomial exceeds " +
			                  std::to_string(max_terms()) + " terms");
	}

private:
	FieldElem mul_term(const Monomial &m, const Rational &c) const {
		FieldElem out;
		out.terms_.reserve(terms_.size());
		for (const auto &[tm, tc] : terms_)
			out.terms_.emplace_back(tm * m, tc * c);
		return out;
	}

	static FieldElem merge(const FieldElem &a, const FieldElem &b, bool negate_b) {
		FieldElem out;
		out.terms_.reserve(a.terms_.size() + b.terms_.size());
		auto ia = a.terms_.begin(), ea = a.terms_.end();
		auto ib = b.terms_.begin(), eb = b.terms_.end();
		while (ia != ea && ib != eb) {
			int cmp = grlex_cmp(ia->first, ib->first);
			if (cmp > 0) {
				out.terms_.push_back(*ia++);
			} else if (cmp < 0) {
				out.terms_.emplace_back(ib->first, negate_b ? -ib->second : ib->second);
				++ib;
			} else {
				Rational c = negate_b ? ia->second - ib->second : ia->second + ib->second;
				if (!c.is_zero())
					out.terms_.emplace_back(ia->first, std::move(c));
				++ia, ++ib;
			}
		}
		out.terms_.insert(out.terms_.end(), ia, ea);
		for (; ib != eb; ++ib)
			out.terms_.emplace_back(ib->first, negate_b ? -ib->second : ib->second);
		check_budget(out.terms_.size());
		return out;
	}

	friend class TermAccumulator;

	std::vector<Term> terms_;
};

// Accumulates sums of term products into canonical form once, instead of
// paying a merge per partial product. The workhorse behind polynomial and
// series multiplication.
class TermAccumulator {
public:
	void add(const FieldElem &a) {
		for (const auto &[m, c] : a.terms())
			bump(m, c);
	}

	void add_scaled(const FieldElem &a, const Rational &c) {
		if (c.is_zero())
			return;
		for (const auto &[m, q] : a.terms())
			bump(m, q * c);
	}

	void add_product(const FieldElem &a, const FieldElem &b) {
		for (const auto &[ma, ca] : a.terms())
			for (const auto &[mb, cb] : b.terms())
				bump(ma * mb, ca * cb);
	}

	bool empty() const { return acc_.empty(); }

	FieldElem take() {
		std::vector<FieldElem::Term> terms;
		terms.reserve(acc_.size());
		for (auto &[m, c] : acc_)
			if (!c.is_zero())
				terms.emplace_back(m, std::move(c));
		acc_.clear();
		return FieldElem::from_sorted_terms(std::move(terms));
	}

private:
	void bump(const Monomial &m, const Rational &c) {
		auto [it, inserted] = acc_.try_emplace(m, c);
		if (!inserted)
			it->second += c;
		FieldElem::check_budget(acc_.size());
	}
	void bump(Monomial &&m, Rational &&c) {
		auto [it, inserted] = acc_.try_emplace(std::move(m), std::move(c));
		if (!inserted)
			it->second += c;
		FieldElem::check_budget(acc_.size());
	}

	std::map<Monomial, Rational, GrlexGreater> acc_;
};

inline FieldElem operator*(const FieldElem &a, const FieldElem &b) {
	if (a.is_zero() || b.is_zero())
		return FieldElem();
	if (b.is_constant())
		return a.scaled(b.constant_value());
	if (a.is_constant())
		return b.scaled(a.constant_value());
	TermAccumulator acc;
	acc.add_product(a, b);
	return acc.take();
}

} // namespace fpsg
