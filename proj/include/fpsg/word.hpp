#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "fpsg/errors.hpp"

namespace fpsg {

// Formal word over named generators with integer exponents. Free reduction
// merges adjacent letters with equal names and drops zero exponents; it is
// available on demand, words are stored as written.
class Word {
public:
	struct Letter {
		std::string gen;
		long exp;

		friend bool operator==(const Letter &, const Letter &) = default;
	};

	Word() = default;
	explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

	static Word letter(std::string gen, long exp = 1) {
		return Word({Letter{std::move(gen), exp}});
	}

	// Text syntax: whitespace-separated letters "A^3 B^-1 A'", commutator
	// sugar "[A,B]" expanding to A B A^-1 B^-1 (nesting allowed), an optional
	// ^exponent after a bracket, and "1" for the empty word.
	static Word parse(std::string_view s) {
		std::size_t pos = 0;
		Word w = parse_word(s, pos, false);
		skip_ws(s, pos);
		if (pos != s.size())
			throw Error("cannot parse word: unexpected '" + std::string(1, s[pos]) + "'");
		return w;
	}

	const std::vector<Letter> &letters() const { return letters_; }
	bool empty() const { return letters_.empty(); }

	Word reduced() const {
		std::vector<Letter> out;
		for (const auto &l : letters_) {
			if (l.exp == 0)
				continue;
			if (!out.empty() && out.back().gen == l.gen) {
				out.back().exp += l.exp;
				if (out.back().exp == 0)
					out.pop_back();
			} else {
				out.push_back(l);
			}
		}
		return Word(std::move(out));
	}

	Word inverse() const {
		std::vector<Letter> out;
		out.reserve(letters_.size());
		for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
			out.push_back(Letter{it->gen, -it->exp});
		return Word(std::move(out));
	}

	friend Word operator*(const Word &a, const Word &b) {
		std::vector<Letter> out = a.letters_;
		out.insert(out.end(), b.letters_.begin(), b.letters_.end());
		return Word(std::move(out));
	}

	Word pow(long n) const {
		Word base = n < 0 ? inverse() : *this;
		Word out;
		for (long i = 0, m = n < 0 ? -n : n; i < m; ++i)
			out = out * base;
		return out;
	}

	// w1 w2 w1^-1 w2^-1.
	static Word commutator(const Word &a, const Word &b) {
		return a * b * a.inverse() * b.inverse();
	}

	std::string str() const {
		if (letters_.empty())
			return "1";
		std::string out;
		for (const auto &l : letters_) {
			if (!out.empty())
				out += " ";
			out += l.gen;
			if (l.exp != 1)
				out += "^" + std::to_string(l.exp);
		}
		return out;
	}

	friend bool operator==(const Word &a, const Word &b) = default;

private:
	static void skip_ws(std::string_view s, std::size_t &pos) {
		while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
			++pos;
	}

	static bool name_char(char c) {
		return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
	}

	static long parse_exponent(std::string_view s, std::size_t &pos) {
		if (pos >= s.size() || s[pos] != '^')
			return 1;
		++pos;
		bool neg = false;
		if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
			neg = s[pos] == '-';
			++pos;
		}
		std::size_t start = pos;
		long v = 0;
		while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
			v = v * 10 + (s[pos] - '0');
			++pos;
		}
		if (pos == start)
			throw Error("cannot parse word: exponent expected after '^'");
		return neg ? -v : v;
	}

	static Word parse_word(std::string_view s, std::size_t &pos, bool in_bracket) {
		Word w;
		for (;;) {
			skip_ws(s, pos);
			if (pos >= s.size())
				break;
			char c = s[pos];
			if (c == ',' || c == ']') {
				if (!in_bracket)
					throw Error("cannot parse word: unexpected '" + std::string(1, c) + "'");
				break;
			}
			if (c == '[') {
				++pos;
				Word a = parse_word(s, pos, true);
				skip_ws(s, pos);
				if (pos >= s.size() || s[pos] != ',')
					throw Error("cannot parse word: ',' expected in commutator");
				++pos;
				Word b = parse_word(s, pos, true);
				skip_ws(s, pos);
				if (pos >= s.size() || s[pos] != ']')
					throw Error("cannot parse word: ']' expected in commutator");
				++pos;
				long e = parse_exponent(s, pos);
				w = w * commutator(a, b).pow(e);
				continue;
			}
			if (c == '1' &&
			    (pos + 1 >= s.size() || !name_char(s[pos + 1]))) {
				++pos; // the empty word
				continue;
			}
			if (!std::isalpha(static_cast<unsigned char>(c)) && c != '_')
				throw Error("cannot parse word: unexpected '" + std::string(1, c) + "'");
			std::size_t start = pos;
			while (pos < s.size() && name_char(s[pos]))
				++pos;
			std::string name(s.substr(start, pos - start));
			long e = parse_exponent(s, pos);
			if (e != 0)
				w = w * letter(std::move(name), e);
		}
		return w;
	}

	std::vector<Letter> letters_;
};

} // namespace fpsg
