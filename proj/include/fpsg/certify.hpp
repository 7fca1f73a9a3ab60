#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fpsg/chain.hpp"

namespace fpsg {

enum class Verdict { Nontrivial, Inconclusive };
enum class CertMode { Symbolic, Sampled };

// Finite-truncation evidence that a word differs from the identity.
// Nontrivial is a proof (the witness coefficient, or its sampled value, is
// nonzero). Inconclusive is NOT a proof of triviality: the first nonzero
// coefficient may simply lie beyond the order searched.
struct Certificate {
	Verdict verdict = Verdict::Inconclusive;
	CertMode mode = CertMode::Symbolic;
	std::optional<std::size_t> witness_index;
	std::optional<FieldElem> witness_coeff;
	std::size_t order_used = 0;
	std::string note;

	bool nontrivial() const { return verdict == Verdict::Nontrivial; }
};

namespace detail {

// Orders at which to evaluate: cheap small truncations first (by
// triangularity the first nonzero coefficient index is the same at every
// order that reaches it), then the chain's own order, then doubling rebuilds
// capped at order_max.
inline std::vector<std::size_t> escalation_ladder(std::size_t chain_order,
                                                  std::size_t order_max) {
	std::vector<std::size_t> rungs;
	for (std::size_t m = 2; m < chain_order; m *= 2)
		rungs.push_back(m);
	rungs.push_back(chain_order);
	for (std::size_t m = chain_order; m < order_max;) {
		m = std::min(m * 2, order_max);
		rungs.push_back(m);
	}
	return rungs;
}

inline Series eval_word_over(const std::map<std::string, Series> &gens,
                             std::size_t order, const Word &w) {
	Series out = Series::identity(order);
	for (const auto &l : w.letters()) {
		if (l.exp == 0)
			continue;
		auto it = gens.find(l.gen);
		if (it == gens.end())
			throw Error("unknown generator '" + l.gen + "'");
		out = compose(out, power(it->second, l.exp));
	}
	return out;
}

} // namespace detail

// Evaluates the reduced word at escalating truncation orders and reports the
// first nonzero coefficient. Sampled mode substitutes the seed-derived
// rational point for every symbol before evaluating; a nonzero sampled
// coefficient certifies nontriviality, and a second point is tried before
// giving up (one resample per seed).
inline Certificate nontrivial_certificate(const Chain &chain, const Word &w,
                                          std::size_t order_max, CertMode mode,
                                          std::uint64_t seed = 0) {
	Certificate cert;
	cert.mode = mode;
	cert.order_used = chain.order();

	Word red = w.reduced();
	if (red.empty()) {
		cert.note = "word reduces to the empty word";
		return cert;
	}
	if (order_max < chain.order())
		order_max = chain.order();

	auto ladder = detail::escalation_ladder(chain.order(), order_max);
	const int passes = mode == CertMode::Sampled ? 2 : 1;
	try {
		for (int pass = 0; pass < passes; ++pass) {
			std::optional<std::map<SymbolId, Rational>> assignment;
			if (mode == CertMode::Sampled)
				assignment = sample_assignment(seed + static_cast<std::uint64_t>(pass),
				                               chain.registry());
			for (std::size_t m : ladder) {
				cert.order_used = m;
				std::map<std::string, Series> gens;
				if (m <= chain.order()) {
					const Chain &base = chain;
					for (const auto &[name, g] : base.generators()) {
						Series t = truncate(g, m);
						if (assignment) {
							Series sub(m);
							for (std::size_t i = 1; i <= m; ++i)
								sub.set_coeff(i, FieldElem(t.coeff(i).evaluate(*assignment)));
							t = std::move(sub);
						}
						gens.emplace(name, std::move(t));
					}
				} else {
					Chain rebuilt = chain.rebuilt_at_order(
					    m, assignment ? &*assignment : nullptr);
					gens = rebuilt.generators();
				}
				Series value = detail::eval_word_over(gens, m, red);
				if (auto idx = ord(value)) {
					cert.verdict = Verdict::Nontrivial;
					cert.witness_index = *idx;
					cert.witness_coeff = value.coeff(*idx);
					return cert;
				}
			}
		}
	} catch (const BlowupError &e) {
		throw BlowupError(std::string(e.what()) + " (while certifying '" + red.str() +
		                  "' at order " + std::to_string(cert.order_used) + ")");
	}
	return cert;
}

} // namespace fpsg
