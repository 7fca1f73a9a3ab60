#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fpsg/lie.hpp"
#include "fpsg/word.hpp"

namespace fpsg {

// One construction step of an embedding chain. Records everything needed to
// rebuild the chain deterministically at any order: consumed symbol ids,
// defining words over the previously existing generators, and introduced
// names. The base field is stored sparsely so it extends to any order.
struct StepRecord {
	enum class Kind { OneParamBase, FreeProduct, Amalgam, CentralizerExt };

	Kind kind;
	std::vector<SymbolId> symbols;
	std::vector<std::pair<std::string, Word>> gens; // introduced name -> source word
	Word u;                                         // Amalgam / CentralizerExt
	std::vector<std::pair<std::size_t, FieldElem>> base_field; // OneParamBase

	friend bool operator==(const StepRecord &, const StepRecord &) = default;
};

// Rational point for every symbol of a registry, derived from a seed.
// Substituting it certifies nonzero polynomials: a nonzero value at any point
// proves the polynomial is nonzero. Values are nonzero integers with
// magnitude up to 10^6; the mapping avoids std::uniform_int_distribution so
// a seed produces identical assignments on every platform.
inline std::map<SymbolId, Rational> sample_assignment(std::uint64_t seed,
                                                      const SymbolRegistry &reg) {
	std::mt19937_64 rng(seed);
	std::map<SymbolId, Rational> out;
	for (const auto &sym : reg.symbols()) {
		long v = 0;
		while (v == 0)
			v = static_cast<long>(rng() % 2000001ul) - 1000000l;
		out.emplace(sym.id, Rational(v));
	}
	return out;
}

// An embedding chain: symbol registry, truncation order, named generators,
// and the ordered step records that produced them. Immutable: every step
// returns a new chain.
class Chain {
public:
	Chain() = default;

	static Chain one_param_base(std::size_t order, const VectorField &a,
	                            const std::string &name) {
		if (a.is_zero())
			throw Error("trivial base");
		if (a.order() != order)
			throw Error("order mismatch");
		std::set<SymbolId> syms;
		for (const auto &c : a.coeffs())
			c.collect_symbols(syms);
		if (!syms.empty())
			throw Error("base field must have constant coefficients");

		Chain chain;
		chain.order_ = order;
		StepRecord rec;
		rec.kind = StepRecord::Kind::OneParamBase;
		rec.gens.emplace_back(name, Word());
		for (std::size_t j = 1; j <= a.order(); ++j)
			if (!a.coeff(j).is_zero())
				rec.base_field.emplace_back(j, a.coeff(j));
		chain.steps_.push_back(rec);
		chain.add_generator(name, exp(a));
		return chain;
	}

	// Adjoins conjugated copies of the partner generators: with fresh s, t,
	// c = exp(s e_1 + s^2 e_2) and every partner word value W gains a copy
	// (c^t)^-1 W c^t under its new name. The extended chain generates the
	// free product of the old group with the partner subgroup.
	Chain free_product_step(const std::vector<std::pair<std::string, Word>> &partners) const {
		return free_product_step_impl(partners, nullptr);
	}

	// Amalgamated product over the centralizer of u: the partner copies are
	// conjugated by u^s for a fresh s, which fixes the centralizer of u
	// pointwise. c := u itself. Membership of u in the partner subgroup and
	// equality of its centralizers there are the caller's obligations,
	// recorded, not verified.
	Chain amalgam_step(const std::vector<std::pair<std::string, Word>> &partners,
	                   const Word &u) const {
		return amalgam_step_impl(partners, u, nullptr);
	}

	// Extension of the centralizer of u: adjoins T = u^s for a fresh s.
	// T commutes with u exactly, realizing the relations [c, T] = 1 for
	// c in the centralizer of u.
	Chain centralizer_extension_step(const Word &u, const std::string &name) const {
		return centralizer_extension_step_impl(u, name, nullptr);
	}

	// Product of generator powers under the series group law.
	Series eval_word(const Word &w) const {
		require_nonempty();
		Series out = Series::identity(order_);
		for (const auto &l : w.letters()) {
			if (l.exp == 0)
				continue;
			out = compose(out, power(generator(l.gen), l.exp));
		}
		return out;
	}

	// The genus-2k orientable surface group: F_2k built by 2k-1 free-product
	// steps over one one-parameter base, then a single amalgam over
	// u = [a_1, b_1] ... [a_k, b_k] with the full generator set as partner.
	// The relator prod [a_i, b_i] * (prod [a_i', b_i'])^-1 maps to the
	// identity exactly.
	static Chain surface_group(std::size_t k, std::size_t order) {
		if (k < 1)
			throw Error("k must be at least 1");
		auto gen_name = [&](const char *base, std::size_t i) {
			return k == 1 ? std::string(base) : std::string(base) + std::to_string(i);
		};
		Chain chain = one_param_base(order, VectorField::basis(order, 1), gen_name("A", 1));
		const std::string seed_gen = gen_name("A", 1);
		chain = chain.free_product_step({{gen_name("B", 1), Word::letter(seed_gen)}});
		for (std::size_t i = 2; i <= k; ++i) {
			chain = chain.free_product_step({{gen_name("A", i), Word::letter(seed_gen)}});
			chain = chain.free_product_step({{gen_name("B", i), Word::letter(seed_gen)}});
		}
		Word u;
		for (std::size_t i = 1; i <= k; ++i)
			u = u * Word::commutator(Word::letter(gen_name("A", i)),
			                         Word::letter(gen_name("B", i)));
		std::vector<std::pair<std::string, Word>> partners;
		for (std::size_t i = 1; i <= k; ++i) {
			partners.emplace_back(gen_name("A", i) + "'", Word::letter(gen_name("A", i)));
			partners.emplace_back(gen_name("B", i) + "'", Word::letter(gen_name("B", i)));
		}
		return chain.amalgam_step(partners, u);
	}

	// Rebuilds a chain from its records at the given order. With an
	// assignment, consumed symbols are substituted by their sample values as
	// construction proceeds (substitution commutes with every operation), so
	// the rebuilt generators are the sampled images of the symbolic ones and
	// the rebuild costs rational arithmetic only.
	static Chain replay(const std::vector<StepRecord> &steps, std::size_t order,
	                    const std::map<SymbolId, Rational> *assignment = nullptr) {
		Chain chain;
		bool first = true;
		for (const auto &rec : steps) {
			if (first != (rec.kind == StepRecord::Kind::OneParamBase))
				throw Error("malformed step list: base step must come first and only first");
			switch (rec.kind) {
			case StepRecord::Kind::OneParamBase: {
				VectorField a(order);
				for (const auto &[j, c] : rec.base_field) {
					if (j > order)
						throw Error("order too small for base field");
					a.set_coeff(j, c);
				}
				chain = one_param_base(order, a, rec.gens.at(0).first);
				break;
			}
			case StepRecord::Kind::FreeProduct:
				chain = chain.free_product_step_impl(rec.gens, assignment);
				break;
			case StepRecord::Kind::Amalgam:
				chain = chain.amalgam_step_impl(rec.gens, rec.u, assignment);
				break;
			case StepRecord::Kind::CentralizerExt:
				chain = chain.centralizer_extension_step_impl(rec.u, rec.gens.at(0).first,
				                                              assignment);
				break;
			}
			const StepRecord &applied = chain.steps_.back();
			if (applied.symbols != rec.symbols)
				throw Error("registry mismatch in replay");
			first = false;
		}
		return chain;
	}

	Chain rebuilt_at_order(std::size_t order,
	                       const std::map<SymbolId, Rational> *assignment = nullptr) const {
		return replay(steps_, order, assignment);
	}

	// Same chain with every symbol replaced by its sample value; generators
	// become rational series.
	Chain substituted(const std::map<SymbolId, Rational> &assignment) const {
		Chain out = *this;
		for (auto &[name, series] : out.generators_) {
			Series g(order_);
			for (std::size_t i = 1; i <= order_; ++i)
				g.set_coeff(i, FieldElem(series.coeff(i).evaluate(assignment)));
			series = std::move(g);
		}
		return out;
	}

	Chain truncated(std::size_t order) const {
		Chain out = *this;
		out.order_ = order;
		for (auto &[name, series] : out.generators_)
			series = truncate(series, order);
		return out;
	}

	std::size_t order() const { return order_; }
	const SymbolRegistry &registry() const { return registry_; }
	const std::vector<StepRecord> &steps() const { return steps_; }
	const std::map<std::string, Series> &generators() const { return generators_; }

	bool has_generator(const std::string &name) const {
		return generators_.contains(name);
	}

	const Series &generator(const std::string &name) const {
		auto it = generators_.find(name);
		if (it == generators_.end())
			throw Error("unknown generator '" + name + "'");
		return it->second;
	}

	// Deserialization hook; trusts the caller to pass consistent parts.
	static Chain from_parts(SymbolRegistry registry, std::size_t order,
	                        std::map<std::string, Series> generators,
	                        std::vector<StepRecord> steps) {
		Chain chain;
		chain.registry_ = std::move(registry);
		chain.order_ = order;
		chain.generators_ = std::move(generators);
		chain.steps_ = std::move(steps);
		return chain;
	}

private:
	// Value a fresh symbol takes: itself symbolically, its sample under an
	// assignment.
	static FieldElem symbol_value(const Symbol &s,
	                              const std::map<SymbolId, Rational> *assignment) {
		if (!assignment)
			return FieldElem::var(s);
		auto it = assignment->find(s.id);
		if (it == assignment->end())
			throw Error("unassigned symbol " + s.name);
		return FieldElem(it->second);
	}

	Chain free_product_step_impl(const std::vector<std::pair<std::string, Word>> &partners,
	                             const std::map<SymbolId, Rational> *assignment) const {
		require_nonempty();
		if (partners.empty())
			throw Error("no partner generators");
		Chain out = *this;
		StepRecord rec;
		rec.kind = StepRecord::Kind::FreeProduct;
		Symbol s = out.registry_.fresh();
		Symbol t = out.registry_.fresh();
		rec.symbols = {s.id, t.id};
		FieldElem sv = symbol_value(s, assignment);
		FieldElem tv = symbol_value(t, assignment);

		VectorField c_field(order_);
		c_field.set_coeff(1, sv);
		if (order_ >= 2)
			c_field.set_coeff(2, sv * sv);
		// log c = s e_1 + s^2 e_2 by construction, so c^t costs one exp.
		VectorField t_log = tv * c_field;
		Series conj = exp(t_log);
		Series conj_inv = exp(-t_log);

		for (const auto &[name, word] : partners) {
			Series w = eval_word(word);
			if (w.is_identity())
				throw Error("partner generator '" + name + "' is trivial");
			rec.gens.emplace_back(name, word);
			out.add_generator(name, compose(compose(conj_inv, w), conj));
		}
		out.steps_.push_back(std::move(rec));
		return out;
	}

	Chain amalgam_step_impl(const std::vector<std::pair<std::string, Word>> &partners,
	                        const Word &u,
	                        const std::map<SymbolId, Rational> *assignment) const {
		require_nonempty();
		if (partners.empty())
			throw Error("no partner generators");
		Series U = eval_word(u);
		if (U.is_identity())
			throw Error("trivial amalgam element");
		Chain out = *this;
		StepRecord rec;
		rec.kind = StepRecord::Kind::Amalgam;
		rec.u = u;
		Symbol s = out.registry_.fresh();
		rec.symbols = {s.id};
		FieldElem sv = symbol_value(s, assignment);

		VectorField lu = log(U);
		Series conj = exp(sv * lu);
		Series conj_inv = exp(-(sv * lu));
		if (!(compose(compose(conj_inv, U), conj) == U))
			throw InternalError("amalgam identification failed: u moved by its own flow");

		for (const auto &[name, word] : partners) {
			Series w = eval_word(word);
			if (w.is_identity())
				throw Error("partner generator '" + name + "' is trivial");
			rec.gens.emplace_back(name, word);
			out.add_generator(name, compose(compose(conj_inv, w), conj));
		}
		out.steps_.push_back(std::move(rec));
		return out;
	}

	Chain centralizer_extension_step_impl(const Word &u, const std::string &name,
	                                      const std::map<SymbolId, Rational> *assignment) const {
		require_nonempty();
		Series U = eval_word(u);
		if (U.is_identity())
			throw Error("trivial centralizer element");
		Chain out = *this;
		StepRecord rec;
		rec.kind = StepRecord::Kind::CentralizerExt;
		rec.u = u;
		rec.gens.emplace_back(name, Word());
		Symbol s = out.registry_.fresh();
		rec.symbols = {s.id};

		Series T = exp(symbol_value(s, assignment) * log(U));
		if (!commutator(T, U).is_identity())
			throw InternalError("centralizer extension failed: [T, u] != 1");
		out.add_generator(name, T);
		out.steps_.push_back(std::move(rec));
		return out;
	}

	void require_nonempty() const {
		if (generators_.empty())
			throw Error("empty chain");
	}

	void add_generator(const std::string &name, Series s) {
		if (generators_.contains(name))
			throw Error("name collision: '" + name + "'");
		generators_.emplace(name, std::move(s));
	}

	SymbolRegistry registry_;
	std::size_t order_ = 0;
	std::map<std::string, Series> generators_;
	std::vector<StepRecord> steps_;
};

} // namespace fpsg
