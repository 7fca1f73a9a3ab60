#pragma once

#include <json.hpp>

#include <cctype>
#include <string>

#include "fpsg/bpcheck.hpp"
#include "fpsg/certify.hpp"
#include "fpsg/chain.hpp"

// Wire formats. Keys are emitted in sorted order (nlohmann default), so every
// serialization is canonical byte-for-byte.
//
//   Rational     "p/q" ("/q" omitted when q = 1)
//   FieldElem    [{"coef": "p/q", "exps": {"s0": 2, ...}}, ...]  (grlex order)
//   Series       {"order": N, "coeffs": [FieldElem, ...]}
//   VectorField  {"order": N, "field_coeffs": [FieldElem, ...]}
//   Word         [["A", 3], ["B", -1], ...]
//   Chain        {"order", "registry", "generators", "steps"}

namespace fpsg {

using json = nlohmann::json;

namespace detail {
// nlohmann's accessors throw their own exception family; surface them as
// ordinary input errors.
template <typename F>
auto translate_json_errors(F &&f) -> decltype(f()) {
	try {
		return f();
	} catch (const nlohmann::json::exception &e) {
		throw Error(std::string("malformed JSON input: ") + e.what());
	}
}
} // namespace detail

inline json to_json(const Rational &r) { return r.str(); }

inline Rational rational_from_json(const json &j) {
	if (!j.is_string())
		throw Error("rational must be a string");
	return Rational::parse(j.get<std::string>());
}

inline SymbolId symbol_id_from_name(const std::string &name) {
	if (name.size() < 2 || name[0] != 's')
		throw Error("bad symbol name '" + name + "'");
	for (std::size_t i = 1; i < name.size(); ++i)
		if (!std::isdigit(static_cast<unsigned char>(name[i])))
			throw Error("bad symbol name '" + name + "'");
	return static_cast<SymbolId>(std::stoul(name.substr(1)));
}

inline json to_json(const FieldElem &f) {
	json out = json::array();
	for (const auto &[m, c] : f.terms()) {
		json exps = json::object();
		for (const auto &[s, e] : m.factors())
			exps["s" + std::to_string(s)] = e;
		out.push_back({{"coef", c.str()}, {"exps", exps}});
	}
	return out;
}

inline FieldElem field_elem_from_json(const json &j) {
	return detail::translate_json_errors([&] {
		if (!j.is_array())
			throw Error("field element must be an array of terms");
		FieldElem out;
		for (const auto &t : j) {
			Rational c = rational_from_json(t.at("coef"));
			Monomial m;
			for (const auto &[name, e] : t.at("exps").items())
				m = m * Monomial::var(symbol_id_from_name(name), e.get<std::uint32_t>());
			out += FieldElem::term(std::move(c), std::move(m));
		}
		return out;
	});
}

inline json to_json(const Series &s) {
	json coeffs = json::array();
	for (std::size_t i = 1; i <= s.order(); ++i)
		coeffs.push_back(to_json(s.coeff(i)));
	return json{{"order", s.order()}, {"coeffs", coeffs}};
}

inline Series series_from_json(const json &j) {
	return detail::translate_json_errors([&] {
		std::size_t order = j.at("order").get<std::size_t>();
		const json &coeffs = j.at("coeffs");
		if (!coeffs.is_array() || coeffs.size() != order)
			throw Error("series must carry exactly 'order' coefficients");
		std::vector<FieldElem> c;
		c.reserve(order);
		for (const auto &e : coeffs)
			c.push_back(field_elem_from_json(e));
		return Series::from_coeffs(std::move(c));
	});
}

inline json to_json(const VectorField &v) {
	json coeffs = json::array();
	for (std::size_t j = 1; j <= v.order(); ++j)
		coeffs.push_back(to_json(v.coeff(j)));
	return json{{"order", v.order()}, {"field_coeffs", coeffs}};
}

inline VectorField vector_field_from_json(const json &j) {
	return detail::translate_json_errors([&] {
		std::size_t order = j.at("order").get<std::size_t>();
		const json &coeffs = j.at("field_coeffs");
		if (!coeffs.is_array() || coeffs.size() != order)
			throw Error("vector field must carry exactly 'order' coefficients");
		std::vector<FieldElem> c;
		c.reserve(order);
		for (const auto &e : coeffs)
			c.push_back(field_elem_from_json(e));
		return VectorField::from_coeffs(std::move(c));
	});
}

inline json to_json(const Word &w) {
	json out = json::array();
	for (const auto &l : w.letters())
		out.push_back(json::array({l.gen, l.exp}));
	return out;
}

inline Word word_from_json(const json &j) {
	return detail::translate_json_errors([&] {
		if (!j.is_array())
			throw Error("word must be an array of letters");
		std::vector<Word::Letter> letters;
		for (const auto &l : j) {
			if (!l.is_array() || l.size() != 2)
				throw Error("word letter must be a [name, exponent] pair");
			letters.push_back({l.at(0).get<std::string>(), l.at(1).get<long>()});
		}
		return Word(std::move(letters));
	});
}

inline std::string step_kind_name(StepRecord::Kind k) {
	switch (k) {
	case StepRecord::Kind::OneParamBase:
		return "one_param_base";
	case StepRecord::Kind::FreeProduct:
		return "free_product";
	case StepRecord::Kind::Amalgam:
		return "amalgam";
	case StepRecord::Kind::CentralizerExt:
		return "centralizer_ext";
	}
	throw InternalError("unreachable step kind");
}

inline StepRecord::Kind step_kind_from_name(const std::string &name) {
	if (name == "one_param_base")
		return StepRecord::Kind::OneParamBase;
	if (name == "free_product")
		return StepRecord::Kind::FreeProduct;
	if (name == "amalgam")
		return StepRecord::Kind::Amalgam;
	if (name == "centralizer_ext")
		return StepRecord::Kind::CentralizerExt;
	throw Error("unknown step kind '" + name + "'");
}

inline json to_json(const StepRecord &rec) {
	json out;
	out["kind"] = step_kind_name(rec.kind);
	out["symbols"] = rec.symbols;
	json gens = json::array();
	for (const auto &[name, word] : rec.gens)
		gens.push_back(json{{"name", name}, {"word", to_json(word)}});
	out["gens"] = gens;
	switch (rec.kind) {
	case StepRecord::Kind::OneParamBase: {
		json field = json::array();
		for (const auto &[idx, c] : rec.base_field)
			field.push_back(json::array({idx, to_json(c)}));
		out["field"] = field;
		break;
	}
	case StepRecord::Kind::Amalgam:
	case StepRecord::Kind::CentralizerExt:
		out["u"] = to_json(rec.u);
		break;
	case StepRecord::Kind::FreeProduct:
		break;
	}
	return out;
}

inline StepRecord step_from_json(const json &j) {
	return detail::translate_json_errors([&] {
		StepRecord rec;
		rec.kind = step_kind_from_name(j.at("kind").get<std::string>());
		rec.symbols = j.at("symbols").get<std::vector<SymbolId>>();
		for (const auto &g : j.at("gens"))
			rec.gens.emplace_back(g.at("name").get<std::string>(),
			                      word_from_json(g.at("word")));
		if (j.contains("u"))
			rec.u = word_from_json(j.at("u"));
		if (j.contains("field"))
			for (const auto &e : j.at("field"))
				rec.base_field.emplace_back(e.at(0).get<std::size_t>(),
				                            field_elem_from_json(e.at(1)));
		return rec;
	});
}

inline json to_json(const Chain &chain) {
	json registry = json::array();
	for (const auto &sym : chain.registry().symbols())
		registry.push_back(json{{"id", sym.id}, {"name", sym.name}});
	json gens = json::object();
	for (const auto &[name, series] : chain.generators())
		gens[name] = to_json(series);
	json steps = json::array();
	for (const auto &rec : chain.steps())
		steps.push_back(to_json(rec));
	return json{{"order", chain.order()},
	            {"registry", registry},
	            {"generators", gens},
	            {"steps", steps}};
}

inline Chain chain_from_json(const json &j) {
	return detail::translate_json_errors([&] {
		std::vector<Symbol> symbols;
		for (const auto &s : j.at("registry"))
			symbols.push_back(Symbol{s.at("id").get<SymbolId>(),
			                         s.at("name").get<std::string>()});
		std::size_t order = j.at("order").get<std::size_t>();
		std::map<std::string, Series> gens;
		for (const auto &[name, series] : j.at("generators").items()) {
			auto [it, inserted] = gens.emplace(name, series_from_json(series));
			if (it->second.order() != order)
				throw Error("generator '" + name + "' does not match the chain order");
		}
		std::vector<StepRecord> steps;
		for (const auto &rec : j.at("steps"))
			steps.push_back(step_from_json(rec));
		return Chain::from_parts(SymbolRegistry::from_symbols(std::move(symbols)), order,
		                         std::move(gens), std::move(steps));
	});
}

inline json to_json(const Certificate &cert) {
	json out;
	out["verdict"] = cert.nontrivial() ? "nontrivial" : "inconclusive";
	out["mode"] = cert.mode == CertMode::Symbolic ? "symbolic" : "sampled";
	out["witness_index"] = cert.witness_index ? json(*cert.witness_index) : json();
	out["witness_coefficient"] =
	    cert.witness_coeff ? to_json(*cert.witness_coeff) : json();
	out["order_used"] = cert.order_used;
	out["note"] = cert.note;
	return out;
}

inline json to_json(const TupleReport &report) {
	json table = json::array();
	for (const auto &[alphas, idx] : report.table)
		table.push_back(json{{"alphas", alphas}, {"witness_index", idx}});
	return json{
	    {"commutation_free", report.commutation_free},
	    {"failing_pair_index",
	     report.failing_pair ? json(*report.failing_pair) : json()},
	    {"witness_n", report.witness_n ? json(*report.witness_n) : json()},
	    {"window", json::array({report.window_lo, report.window_hi})},
	    {"order_used", report.order_used},
	    {"table", table}};
}

// Canonical file form: 2-space indent, trailing newline.
inline std::string dump_canonical(const json &j) { return j.dump(2) + "\n"; }

} // namespace fpsg
