#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fpsg/series.hpp"

namespace fpsg {

struct CommutationCheck {
	bool commutation_free = true;
	std::optional<std::size_t> failing_pair; // 1-based index i of (u_i, u_i+1)
};

// Verdict of a bounded big-powers or separation search: a witness n means
// every exponent vector in [n, n+B]^k produced a nontrivial product at the
// truncation order. Finite evidence for a universal claim, never a proof.
struct TupleReport {
	bool commutation_free = true;
	std::optional<std::size_t> failing_pair;
	std::optional<long> witness_n;
	long window_lo = 0, window_hi = 0; // last window checked
	std::size_t order_used = 0;
	// Winning window only: exponent vector -> first nonzero coefficient index.
	std::vector<std::pair<std::vector<long>, std::size_t>> table;
};

// True iff every consecutive commutator differs from the identity at the
// truncation order. All entries must be nontrivial.
inline CommutationCheck commutation_free(const std::vector<Series> &u) {
	for (std::size_t i = 0; i < u.size(); ++i) {
		if (u[i].is_identity())
			throw Error("trivial tuple entry at index " + std::to_string(i + 1));
		if (i + 1 < u.size() && u[i].order() != u[i + 1].order())
			throw Error("order mismatch");
	}
	for (std::size_t i = 0; i + 1 < u.size(); ++i)
		if (commutator(u[i], u[i + 1]).is_identity())
			return {false, i + 1};
	return {};
}

namespace detail {

// u_i^alpha for alpha in [lo, hi]: one binary power then incremental
// multiplications across the window.
inline std::vector<Series> power_window(const Series &u, long lo, long hi) {
	std::vector<Series> out;
	out.reserve(static_cast<std::size_t>(hi - lo + 1));
	out.push_back(power(u, lo));
	for (long a = lo + 1; a <= hi; ++a)
		out.push_back(compose(out.back(), u));
	return out;
}

// Walks the full exponent grid [lo, hi]^k with prefix products shared along
// the odometer. glue has k+1 entries (possibly identities) interleaved as
// g_1 u_1^a1 g_2 ... g_k u_k^ak g_(k+1). Returns the table when every product
// is nontrivial, nullopt at the first trivial one.
inline std::optional<std::vector<std::pair<std::vector<long>, std::size_t>>>
window_grid(const std::vector<Series> &u, const std::vector<Series> *glue,
            long lo, long hi) {
	const std::size_t k = u.size();
	const std::size_t width = static_cast<std::size_t>(hi - lo + 1);
	std::vector<std::vector<Series>> pows;
	pows.reserve(k);
	for (const auto &ui : u)
		pows.push_back(power_window(ui, lo, hi));

	std::vector<std::pair<std::vector<long>, std::size_t>> table;
	std::vector<long> alpha(k, lo);
	std::vector<std::size_t> idx(k, 0);
	// prefix[i] = product of the first i blocks (glue and powers merged).
	std::vector<Series> prefix(k + 1, Series::identity(u[0].order()));
	auto rebuild_from = [&](std::size_t level) {
		for (std::size_t i = level; i < k; ++i) {
			Series block = pows[i][idx[i]];
			if (glue)
				block = compose((*glue)[i], block);
			prefix[i + 1] = compose(prefix[i], block);
		}
	};
	rebuild_from(0);
	for (;;) {
		Series full = glue ? compose(prefix[k], (*glue)[k]) : prefix[k];
		auto witness = ord(full);
		if (!witness)
			return std::nullopt;
		table.emplace_back(alpha, *witness);
		// Odometer step, least-significant (deepest) coordinate first.
		std::size_t level = k;
		while (level > 0) {
			if (idx[level - 1] + 1 < width) {
				++idx[level - 1];
				alpha[level - 1] = lo + static_cast<long>(idx[level - 1]);
				break;
			}
			idx[level - 1] = 0;
			alpha[level - 1] = lo;
			--level;
		}
		if (level == 0)
			return table;
		rebuild_from(level - 1);
	}
}

} // namespace detail

// Searches the smallest n <= n_max such that every exponent vector in
// [n, n+B]^k yields a nontrivial product u_1^a1 ... u_k^ak at the truncation
// order. Requires the tuple to be commutation-free.
inline TupleReport independence_search(const std::vector<Series> &u, long n_max,
                                       long B) {
	if (u.empty())
		throw Error("empty tuple");
	if (n_max < 1 || B < 0)
		throw Error("n_max must be >= 1 and window >= 0");
	auto chk = commutation_free(u);
	if (!chk.commutation_free)
		throw Error("tuple is not commutation-free at pair " +
		            std::to_string(*chk.failing_pair));

	TupleReport report;
	report.order_used = u[0].order();
	for (long n = 1; n <= n_max; ++n) {
		report.window_lo = n;
		report.window_hi = n + B;
		auto table = detail::window_grid(u, nullptr, n, n + B);
		if (table) {
			report.witness_n = n;
			report.table = std::move(*table);
			return report;
		}
	}
	return report;
}

// Same search for the interleaved products g_1 u_1^a1 g_2 u_2^a2 ... g_(k+1).
// Requires |g| = |u| + 1 and the hypothesis commutators
// [g_(i+1)^-1 u_i g_(i+1), u_(i+1)] != 1.
inline TupleReport separation_check(const std::vector<Series> &u,
                                    const std::vector<Series> &g, long n_max,
                                    long B) {
	if (u.empty())
		throw Error("empty tuple");
	if (g.size() != u.size() + 1)
		throw Error("glue tuple must have exactly one more entry than u");
	if (n_max < 1 || B < 0)
		throw Error("n_max must be >= 1 and window >= 0");
	for (std::size_t i = 0; i < u.size(); ++i) {
		if (u[i].is_identity())
			throw Error("trivial tuple entry at index " + std::to_string(i + 1));
		if (u[i].order() != g[0].order())
			throw Error("order mismatch");
	}
	for (const auto &gi : g)
		if (gi.order() != u[0].order())
			throw Error("order mismatch");
	for (std::size_t i = 0; i + 1 < u.size(); ++i)
		if (commutator(conjugate(u[i], g[i + 1]), u[i + 1]).is_identity())
			throw Error("separation hypothesis fails at index " + std::to_string(i + 1));

	TupleReport report;
	report.order_used = u[0].order();
	for (long n = 1; n <= n_max; ++n) {
		report.window_lo = n;
		report.window_hi = n + B;
		auto table = detail::window_grid(u, &g, n, n + B);
		if (table) {
			report.witness_n = n;
			report.table = std::move(*table);
			return report;
		}
	}
	return report;
}

} // namespace fpsg
