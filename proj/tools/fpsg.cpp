// fpsg: build embedding chains in the composition group of formal power
// series, evaluate words, run nontriviality certificates and big-powers
// searches. All state lives in chain JSON files; every command is
// deterministic given --seed.

#include <CLI11.hpp>

#include <fpsg/fpsg.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace fpsg;

constexpr std::uint64_t kDefaultSeed = 12345;

std::string read_file(const std::string &path) {
	if (path == "-") {
		std::ostringstream ss;
		ss << std::cin.rdbuf();
		return ss.str();
	}
	std::ifstream in(path);
	if (!in)
		throw Error("cannot read file '" + path + "'");
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

void write_output(const std::string &text, const std::string &out_path) {
	if (out_path.empty()) {
		std::cout << text;
		return;
	}
	std::ofstream out(out_path);
	if (!out)
		throw Error("cannot write file '" + out_path + "'");
	out << text;
}

json parse_json(const std::string &text) {
	try {
		return json::parse(text);
	} catch (const json::exception &e) {
		throw Error(std::string("cannot parse JSON: ") + e.what());
	}
}

Chain load_chain(const std::string &path) {
	return chain_from_json(parse_json(read_file(path)));
}

// ---- tiny expression parser -------------------------------------------
// expr   := term (('+'|'-') term)*
// term   := factor ('*'? factor)*
// factor := NUMBER ('/' NUMBER)? | IDENT ('^' NUMBER)?
// IDENT "s<k>" is a symbol, "e<k>" a basis vector field (vector-field
// context only). Example: "e1 + 2*e2 - 3/2*s0^2*e3".

struct ExprToken {
	enum Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, End } kind;
	std::string text;
};

std::vector<ExprToken> lex_expr(const std::string &s) {
	std::vector<ExprToken> out;
	std::size_t i = 0;
	while (i < s.size()) {
		char c = s[i];
		if (std::isspace(static_cast<unsigned char>(c))) {
			++i;
			continue;
		}
		if (std::isdigit(static_cast<unsigned char>(c))) {
			std::size_t j = i;
			while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
				++j;
			out.push_back({ExprToken::Number, s.substr(i, j - i)});
			i = j;
			continue;
		}
		if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
			std::size_t j = i;
			while (j < s.size() &&
			       (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
				++j;
			out.push_back({ExprToken::Ident, s.substr(i, j - i)});
			i = j;
			continue;
		}
		switch (c) {
		case '+':
			out.push_back({ExprToken::Plus, "+"});
			break;
		case '-':
			out.push_back({ExprToken::Minus, "-"});
			break;
		case '*':
			out.push_back({ExprToken::Star, "*"});
			break;
		case '/':
			out.push_back({ExprToken::Slash, "/"});
			break;
		case '^':
			out.push_back({ExprToken::Caret, "^"});
			break;
		default:
			throw Error("cannot parse expression: unexpected '" + std::string(1, c) + "'");
		}
		++i;
	}
	out.push_back({ExprToken::End, ""});
	return out;
}

struct ExprTerm {
	FieldElem coef;
	std::size_t basis = 0; // 0 = no basis factor
};

// Parses the coefficient-and-basis product grammar above.
class ExprParser {
public:
	ExprParser(const std::string &s, bool allow_basis)
	    : toks_(lex_expr(s)), allow_basis_(allow_basis) {}

	std::vector<ExprTerm> parse() {
		std::vector<ExprTerm> terms;
		bool negate = accept(ExprToken::Minus);
		if (!negate)
			accept(ExprToken::Plus);
		for (;;) {
			ExprTerm t = parse_term();
			if (negate)
				t.coef = -t.coef;
			terms.push_back(std::move(t));
			if (accept(ExprToken::Plus))
				negate = false;
			else if (accept(ExprToken::Minus))
				negate = true;
			else
				break;
		}
		expect(ExprToken::End, "end of expression");
		return terms;
	}

private:
	ExprTerm parse_term() {
		ExprTerm t;
		t.coef = FieldElem(1);
		bool any = false;
		for (;;) {
			if (peek() == ExprToken::Number) {
				t.coef = t.coef * FieldElem(parse_number_factor());
				any = true;
			} else if (peek() == ExprToken::Ident) {
				std::string name = toks_[pos_++].text;
				unsigned exp = 1;
				if (accept(ExprToken::Caret))
					exp = static_cast<unsigned>(parse_integer("exponent"));
				if (name.size() >= 2 && name[0] == 'e' && all_digits(name, 1)) {
					if (!allow_basis_)
						throw Error("basis element '" + name + "' not allowed here");
					if (exp != 1)
						throw Error("basis element '" + name + "' cannot carry an exponent");
					if (t.basis != 0)
						throw Error("term has more than one basis element");
					t.basis = std::stoul(name.substr(1));
					if (t.basis == 0)
						throw Error("basis indices start at e1");
				} else if (name.size() >= 2 && name[0] == 's' && all_digits(name, 1)) {
					auto id = static_cast<SymbolId>(std::stoul(name.substr(1)));
					t.coef = t.coef * FieldElem::var(id).pow(exp);
				} else {
					throw Error("unknown identifier '" + name + "' in expression");
				}
				any = true;
			} else {
				break;
			}
			accept(ExprToken::Star); // '*' optional between factors
		}
		if (!any)
			throw Error("cannot parse expression: empty term");
		return t;
	}

	Rational parse_number_factor() {
		long num = parse_integer("number");
		if (accept(ExprToken::Slash)) {
			long den = parse_integer("denominator");
			return Rational(num, den);
		}
		return Rational(num);
	}

	long parse_integer(const char *what) {
		if (peek() != ExprToken::Number)
			throw Error(std::string("cannot parse expression: ") + what + " expected");
		return std::stol(toks_[pos_++].text);
	}

	static bool all_digits(const std::string &s, std::size_t from) {
		for (std::size_t i = from; i < s.size(); ++i)
			if (!std::isdigit(static_cast<unsigned char>(s[i])))
				return false;
		return true;
	}

	ExprToken::Kind peek() const { return toks_[pos_].kind; }
	bool accept(ExprToken::Kind k) {
		if (peek() != k)
			return false;
		++pos_;
		return true;
	}
	void expect(ExprToken::Kind k, const char *what) {
		if (!accept(k))
			throw Error(std::string("cannot parse expression: ") + what + " expected");
	}

	std::vector<ExprToken> toks_;
	std::size_t pos_ = 0;
	bool allow_basis_;
};

VectorField parse_vector_field(const std::string &s, std::size_t order) {
	VectorField v(order);
	for (auto &t : ExprParser(s, true).parse()) {
		if (t.basis == 0)
			throw Error("every term needs a basis element e<k>");
		if (t.basis > order)
			throw Error("basis index e" + std::to_string(t.basis) +
			            " exceeds the order");
		v.set_coeff(t.basis, v.coeff(t.basis) + t.coef);
	}
	return v;
}

FieldElem parse_field_elem(const std::string &s) {
	FieldElem f;
	for (auto &t : ExprParser(s, false).parse())
		f += t.coef;
	return f;
}

std::vector<std::pair<std::string, Word>> parse_gen_specs(
    const std::vector<std::string> &specs) {
	std::vector<std::pair<std::string, Word>> out;
	for (const auto &spec : specs) {
		auto eq = spec.find('=');
		if (eq == std::string::npos || eq == 0)
			throw Error("generator spec must look like NEW_NAME=WORD: '" + spec + "'");
		out.emplace_back(spec.substr(0, eq), Word::parse(spec.substr(eq + 1)));
	}
	return out;
}

std::string preview(const FieldElem &f, std::size_t limit = 48) {
	std::string s = f.str();
	if (s.size() > limit)
		s = s.substr(0, limit) + "...";
	return s;
}

std::string show_chain(const Chain &chain) {
	std::ostringstream out;
	out << "order: " << chain.order() << "\n";
	out << "symbols:";
	for (const auto &sym : chain.registry().symbols())
		out << " " << sym.name;
	out << "\n";
	out << "steps:\n";
	std::size_t n = 0;
	for (const auto &rec : chain.steps()) {
		out << "  " << ++n << ". ";
		switch (rec.kind) {
		case StepRecord::Kind::OneParamBase: {
			out << "one-param base: " << rec.gens[0].first << " = exp(";
			bool first = true;
			for (const auto &[j, c] : rec.base_field) {
				out << (first ? "" : " + ") << "(" << c.str() << ")*e" << j;
				first = false;
			}
			out << ")";
			break;
		}
		case StepRecord::Kind::FreeProduct:
			out << "free product (s=s" << rec.symbols[0] << ", t=s" << rec.symbols[1]
			    << "):";
			for (const auto &[name, word] : rec.gens)
				out << " " << name << " <- " << word.str() << ";";
			break;
		case StepRecord::Kind::Amalgam:
			out << "amalgam over u = " << rec.u.str() << " (s=s" << rec.symbols[0]
			    << "):";
			for (const auto &[name, word] : rec.gens)
				out << " " << name << " <- " << word.str() << ";";
			break;
		case StepRecord::Kind::CentralizerExt:
			out << "centralizer extension (s=s" << rec.symbols[0]
			    << "): " << rec.gens[0].first << " = (" << rec.u.str() << ")^s"
			    << rec.symbols[0];
			break;
		}
		out << "\n";
	}
	out << "generators:\n";
	for (const auto &[name, series] : chain.generators()) {
		out << "  " << name << ":";
		std::size_t shown = std::min<std::size_t>(4, series.order());
		for (std::size_t i = 1; i <= shown; ++i)
			out << " c" << i << "=" << preview(series.coeff(i)) << ";";
		if (series.order() > shown)
			out << " ... (" << series.order() << " coefficients)";
		out << "\n";
	}
	return out.str();
}

std::string report_table(const TupleReport &report) {
	std::ostringstream out;
	if (report.witness_n)
		out << "witness n = " << *report.witness_n << ", window [" << report.window_lo
		    << ", " << report.window_hi << "], order " << report.order_used << "\n";
	else
		out << "no witness up to the requested n, last window [" << report.window_lo
		    << ", " << report.window_hi << "]\n";
	for (const auto &[alphas, idx] : report.table) {
		out << "  alpha = (";
		for (std::size_t i = 0; i < alphas.size(); ++i)
			out << (i ? ", " : "") << alphas[i];
		out << ") -> witness index " << idx << "\n";
	}
	return out.str();
}

struct BpOptions {
	std::string chain_path;
	std::vector<std::string> elements;
	std::vector<std::string> glue;
	long n_max = 3;
	long window = 9;
	std::string mode = "sampled";
	std::uint64_t seed = kDefaultSeed;
	std::size_t order = 0; // 0 = derive from the window size
	std::string out;
};

// Default evaluation order: twice the longest window product, capped at 32.
std::size_t bp_default_order(const BpOptions &opt, std::size_t glue_letters) {
	std::size_t k = opt.elements.size();
	std::size_t total =
	    k * static_cast<std::size_t>(opt.n_max + opt.window) + glue_letters;
	return std::min<std::size_t>(2 * total, 32);
}

int run_bp(const BpOptions &opt, bool separation) {
	Chain chain = load_chain(opt.chain_path);
	std::vector<Word> element_words, glue_words;
	for (const auto &e : opt.elements)
		element_words.push_back(Word::parse(e));
	std::size_t glue_letters = 0;
	for (const auto &g : opt.glue) {
		glue_words.push_back(Word::parse(g));
		glue_letters += glue_words.back().reduced().letters().size();
	}

	std::size_t target = opt.order ? opt.order : bp_default_order(opt, glue_letters);
	if (target < 1)
		target = 1;

	Chain eval_chain = chain;
	if (opt.mode == "sampled") {
		auto assignment = sample_assignment(opt.seed, chain.registry());
		eval_chain = target == chain.order()
		                 ? chain.substituted(assignment)
		                 : Chain::replay(chain.steps(), target, &assignment);
	} else if (opt.mode == "symbolic") {
		if (target != chain.order())
			eval_chain = Chain::replay(chain.steps(), target);
	} else {
		throw Error("mode must be 'symbolic' or 'sampled'");
	}

	std::vector<Series> u, g;
	for (const auto &w : element_words)
		u.push_back(eval_chain.eval_word(w));
	for (const auto &w : glue_words)
		g.push_back(eval_chain.eval_word(w));

	TupleReport report = separation
	                         ? separation_check(u, g, opt.n_max, opt.window)
	                         : independence_search(u, opt.n_max, opt.window);
	std::cerr << report_table(report);
	write_output(dump_canonical(to_json(report)), opt.out);
	return 0;
}

} // namespace

int main(int argc, char **argv) {
	CLI::App app{"exact arithmetic for the composition group of formal power series"};
	app.require_subcommand(1);
	app.fallthrough(); // subcommands pass --max-terms up to the app

	std::size_t max_terms = 0;
	app.add_option("--max-terms", max_terms,
	               "abort when any polynomial exceeds this many terms")
	    ->envname("FPSG_MAX_TERMS");

	// new-chain
	auto *cmd_new = app.add_subcommand("new-chain", "start a chain from a one-parameter base");
	std::size_t nc_order = 0;
	std::string nc_base, nc_name, nc_out;
	cmd_new->add_option("--order", nc_order, "truncation order")->required();
	cmd_new->add_option("--base", nc_base, "vector field, e.g. 'e1' or 'e1+2*e2'")->required();
	cmd_new->add_option("--name", nc_name, "generator name")->required();
	cmd_new->add_option("--out", nc_out, "output file (default stdout)");

	// step-free-product
	auto *cmd_fp = app.add_subcommand("step-free-product", "adjoin free copies of chain elements");
	std::string fp_chain, fp_out;
	std::vector<std::string> fp_gens;
	cmd_fp->add_option("--chain", fp_chain, "chain JSON file")->required();
	cmd_fp->add_option("--gen", fp_gens, "NEW_NAME=WORD (repeatable)")->required();
	cmd_fp->add_option("--out", fp_out, "output file (default stdout)");

	// step-amalgam
	auto *cmd_am = app.add_subcommand("step-amalgam", "amalgamate over the centralizer of u");
	std::string am_chain, am_u, am_out;
	std::vector<std::string> am_gens;
	cmd_am->add_option("--chain", am_chain, "chain JSON file")->required();
	cmd_am->add_option("--u", am_u, "amalgamated word")->required();
	cmd_am->add_option("--gen", am_gens, "NEW_NAME=WORD (repeatable)")->required();
	cmd_am->add_option("--out", am_out, "output file (default stdout)");

	// step-ext
	auto *cmd_ext = app.add_subcommand("step-ext", "extend the centralizer of u by u^s");
	std::string ext_chain, ext_u, ext_name, ext_out;
	cmd_ext->add_option("--chain", ext_chain, "chain JSON file")->required();
	cmd_ext->add_option("--u", ext_u, "centralized word")->required();
	cmd_ext->add_option("--name", ext_name, "name of the new generator")->required();
	cmd_ext->add_option("--out", ext_out, "output file (default stdout)");

	// surface
	auto *cmd_surf = app.add_subcommand("surface", "build an even-genus surface group chain");
	std::size_t surf_genus = 0, surf_order = 0;
	std::string surf_out;
	cmd_surf->add_option("--genus", surf_genus, "even genus 2k")->required();
	cmd_surf->add_option("--order", surf_order, "truncation order")->required();
	cmd_surf->add_option("--out", surf_out, "output file (default stdout)");

	// eval
	auto *cmd_eval = app.add_subcommand("eval", "evaluate a word to a series");
	std::string ev_chain, ev_word, ev_out;
	cmd_eval->add_option("--chain", ev_chain, "chain JSON file")->required();
	cmd_eval->add_option("--word", ev_word, "word over the chain generators")->required();
	cmd_eval->add_option("--out", ev_out, "output file (default stdout)");

	// certify
	auto *cmd_cert = app.add_subcommand("certify", "nontriviality certificate for a word");
	std::string ct_chain, ct_word, ct_mode = "sampled", ct_out;
	std::size_t ct_order_max = 0;
	std::uint64_t ct_seed = kDefaultSeed;
	bool ct_require = false;
	cmd_cert->add_option("--chain", ct_chain, "chain JSON file")->required();
	cmd_cert->add_option("--word", ct_word, "word over the chain generators")->required();
	cmd_cert->add_option("--mode", ct_mode, "symbolic | sampled (default sampled)");
	cmd_cert->add_option("--seed", ct_seed, "sampling seed");
	cmd_cert->add_option("--order-max", ct_order_max,
	                     "escalation cap (default max(32, chain order))");
	cmd_cert->add_flag("--require-nontrivial", ct_require,
	                   "exit 1 when the verdict is inconclusive");
	cmd_cert->add_option("--out", ct_out, "output file (default stdout)");

	// bp-independence
	auto *cmd_bpi = app.add_subcommand("bp-independence", "big-powers window search");
	BpOptions bpi;
	cmd_bpi->add_option("--chain", bpi.chain_path, "chain JSON file")->required();
	cmd_bpi->add_option("--element", bpi.elements, "tuple entry word (repeatable)")->required();
	cmd_bpi->add_option("--nmax", bpi.n_max, "largest n to try (default 3)");
	cmd_bpi->add_option("--window", bpi.window, "window size B (default 9)");
	cmd_bpi->add_option("--mode", bpi.mode, "symbolic | sampled (default sampled)");
	cmd_bpi->add_option("--seed", bpi.seed, "sampling seed");
	cmd_bpi->add_option("--order", bpi.order, "evaluation order (default from window)");
	cmd_bpi->add_option("--out", bpi.out, "output file (default stdout)");

	// bp-separation
	auto *cmd_bps = app.add_subcommand("bp-separation", "separation-condition window search");
	BpOptions bps;
	cmd_bps->add_option("--chain", bps.chain_path, "chain JSON file")->required();
	cmd_bps->add_option("--element", bps.elements, "tuple entry word (repeatable)")->required();
	cmd_bps->add_option("--glue", bps.glue, "interleaved word, k+1 of them (repeatable; '1' = identity)")
	    ->required();
	cmd_bps->add_option("--nmax", bps.n_max, "largest n to try (default 3)");
	cmd_bps->add_option("--window", bps.window, "window size B (default 9)");
	cmd_bps->add_option("--mode", bps.mode, "symbolic | sampled (default sampled)");
	cmd_bps->add_option("--seed", bps.seed, "sampling seed");
	cmd_bps->add_option("--order", bps.order, "evaluation order (default from window)");
	cmd_bps->add_option("--out", bps.out, "output file (default stdout)");

	// exp / log / flow
	auto *cmd_exp = app.add_subcommand("exp", "exponential of a vector field");
	std::size_t xp_order = 0;
	std::string xp_field, xp_in, xp_out;
	cmd_exp->add_option("--order", xp_order, "truncation order (with --field)");
	cmd_exp->add_option("--field", xp_field, "vector field expression");
	cmd_exp->add_option("--in", xp_in, "vector field JSON file ('-' = stdin)");
	cmd_exp->add_option("--out", xp_out, "output file (default stdout)");

	auto *cmd_log = app.add_subcommand("log", "logarithm of a series");
	std::string lg_in, lg_out;
	cmd_log->add_option("--in", lg_in, "series JSON file ('-' = stdin)")->required();
	cmd_log->add_option("--out", lg_out, "output file (default stdout)");

	auto *cmd_flow = app.add_subcommand("flow", "fractional power h^alpha = exp(alpha log h)");
	std::string fl_in, fl_alpha, fl_out;
	cmd_flow->add_option("--in", fl_in, "series JSON file ('-' = stdin)")->required();
	cmd_flow->add_option("--alpha", fl_alpha, "exponent, e.g. '2/3' or 's0'")->required();
	cmd_flow->add_option("--out", fl_out, "output file (default stdout)");

	// show
	auto *cmd_show = app.add_subcommand("show", "human-readable chain summary");
	std::string sh_chain, sh_out;
	cmd_show->add_option("--chain", sh_chain, "chain JSON file")->required();
	cmd_show->add_option("--out", sh_out, "output file (default stdout)");

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError &e) {
		int code = app.exit(e);
		return code == 0 ? 0 : 2;
	}

	try {
		if (max_terms > 0)
			FieldElem::set_max_terms(max_terms);

		if (*cmd_new) {
			Chain chain = Chain::one_param_base(
			    nc_order, parse_vector_field(nc_base, nc_order), nc_name);
			write_output(dump_canonical(to_json(chain)), nc_out);
		} else if (*cmd_fp) {
			Chain chain = load_chain(fp_chain).free_product_step(parse_gen_specs(fp_gens));
			write_output(dump_canonical(to_json(chain)), fp_out);
		} else if (*cmd_am) {
			Chain chain = load_chain(am_chain).amalgam_step(parse_gen_specs(am_gens),
			                                               Word::parse(am_u));
			write_output(dump_canonical(to_json(chain)), am_out);
		} else if (*cmd_ext) {
			Chain chain =
			    load_chain(ext_chain).centralizer_extension_step(Word::parse(ext_u), ext_name);
			write_output(dump_canonical(to_json(chain)), ext_out);
		} else if (*cmd_surf) {
			if (surf_genus < 2 || surf_genus % 2 != 0)
				throw Error("only even genus is constructible here (the chain doubles a "
				            "free group along one amalgam); give --genus 2k");
			Chain chain = Chain::surface_group(surf_genus / 2, surf_order);
			write_output(dump_canonical(to_json(chain)), surf_out);
		} else if (*cmd_eval) {
			Series s = load_chain(ev_chain).eval_word(Word::parse(ev_word));
			write_output(dump_canonical(to_json(s)), ev_out);
		} else if (*cmd_cert) {
			Chain chain = load_chain(ct_chain);
			if (ct_order_max == 0)
				ct_order_max = std::max<std::size_t>(32, chain.order());
			CertMode mode;
			if (ct_mode == "symbolic")
				mode = CertMode::Symbolic;
			else if (ct_mode == "sampled")
				mode = CertMode::Sampled;
			else
				throw Error("mode must be 'symbolic' or 'sampled'");
			Certificate cert = nontrivial_certificate(chain, Word::parse(ct_word),
			                                          ct_order_max, mode, ct_seed);
			if (cert.nontrivial())
				std::cerr << "nontrivial: witness index " << *cert.witness_index
				          << " at order " << cert.order_used << "\n";
			else
				std::cerr << "inconclusive at order " << cert.order_used
				          << (cert.note.empty() ? "" : " (" + cert.note + ")") << "\n";
			write_output(dump_canonical(to_json(cert)), ct_out);
			if (ct_require && !cert.nontrivial())
				return 1;
		} else if (*cmd_bpi) {
			return run_bp(bpi, false);
		} else if (*cmd_bps) {
			return run_bp(bps, true);
		} else if (*cmd_exp) {
			VectorField v = [&] {
				if (!xp_in.empty())
					return vector_field_from_json(parse_json(read_file(xp_in)));
				if (xp_field.empty() || xp_order == 0)
					throw Error("exp needs either --in or both --field and --order");
				return parse_vector_field(xp_field, xp_order);
			}();
			write_output(dump_canonical(to_json(exp(v))), xp_out);
		} else if (*cmd_log) {
			Series h = series_from_json(parse_json(read_file(lg_in)));
			write_output(dump_canonical(to_json(log(h))), lg_out);
		} else if (*cmd_flow) {
			Series h = series_from_json(parse_json(read_file(fl_in)));
			write_output(dump_canonical(to_json(flow(h, parse_field_elem(fl_alpha)))), fl_out);
		} else if (*cmd_show) {
			write_output(show_chain(load_chain(sh_chain)), sh_out);
		}
	} catch (const BlowupError &e) {
		std::cerr << "error: " << e.what() << "\n";
		return 3;
	} catch (const Error &e) {
		std::cerr << "error: " << e.what() << "\n";
		return 2;
	} catch (const std::exception &e) {
		std::cerr << "error: " << e.what() << "\n";
		return 2;
	}
	return 0;
}
