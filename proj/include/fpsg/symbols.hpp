#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fpsg/errors.hpp"

namespace fpsg {

using SymbolId = std::uint32_t;

// A named transcendental. Algebraic independence is modeled by polynomial-ring
// freeness: distinct ids never interact.
struct Symbol {
	SymbolId id;
	std::string name;

	friend bool operator==(const Symbol &a, const Symbol &b) = default;
};

// Append-only allocator of fresh symbols; ids are consecutive from 0.
// Allocation is single-writer: a chain owns its registry by value and steps
// return new chains, so no two writers ever share one instance.
class SymbolRegistry {
public:
	SymbolRegistry() = default;

	Symbol fresh() {
		SymbolId id = static_cast<SymbolId>(symbols_.size());
		symbols_.push_back(Symbol{id, "s" + std::to_string(id)});
		return symbols_.back();
	}

	const std::vector<Symbol> &symbols() const { return symbols_; }
	std::size_t size() const { return symbols_.size(); }

	static SymbolRegistry from_symbols(std::vector<Symbol> symbols) {
		for (std::size_t i = 0; i < symbols.size(); ++i)
			if (symbols[i].id != i)
				throw Error("registry ids must be consecutive from 0");
		SymbolRegistry reg;
		reg.symbols_ = std::move(symbols);
		return reg;
	}

private:
	std::vector<Symbol> symbols_;
};

} // namespace fpsg
