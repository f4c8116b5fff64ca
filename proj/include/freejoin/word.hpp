#pragma once

#include "freejoin/symbol.hpp"

#include <charconv>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace freejoin {

/** A freely reduced word in a free group.
 *
 * The letter sequence never contains an adjacent pair s^e s^{-e}; the empty
 * sequence is the group identity. Construction reduces, so every Word in
 * circulation is in normal form.
 */
class Word
{
  public:
	Word() = default; // identity

	explicit Word(std::vector<Letter> raw) : letters_(reduce_letters(std::move(raw))) {}

	static Word identity() { return Word(); }

	static Word generator(Symbol s, int exponent = 1)
	{
		Word w;
		w.letters_.push_back({std::move(s), exponent});
		return w;
	}

	const std::vector<Letter> &letters() const { return letters_; }
	bool is_identity() const { return letters_.empty(); }
	size_t length() const { return letters_.size(); }

	auto operator<=>(const Word &) const = default;

	// cancel adjacent inverse pairs with a single stack pass; the result is
	// the unique normal form (adjacent cancellation is confluent)
	static std::vector<Letter> reduce_letters(std::vector<Letter> raw)
	{
		std::vector<Letter> out;
		out.reserve(raw.size());
		for (auto &l : raw)
		{
			if (l.exponent != 1 && l.exponent != -1)
				throw Error("letter exponent must be +1 or -1");
			if (!out.empty() && out.back().symbol == l.symbol &&
			    out.back().exponent == -l.exponent)
				out.pop_back();
			else
				out.push_back(std::move(l));
		}
		return out;
	}

  private:
	std::vector<Letter> letters_;
};

inline Word reduce(std::span<const Letter> raw)
{
	return Word(std::vector<Letter>(raw.begin(), raw.end()));
}

inline Word multiply(const Word &u, const Word &v)
{
	std::vector<Letter> cat = u.letters();
	cat.insert(cat.end(), v.letters().begin(), v.letters().end());
	return Word(std::move(cat));
}

inline Word invert(const Word &u)
{
	std::vector<Letter> rev;
	rev.reserve(u.length());
	for (auto it = u.letters().rbegin(); it != u.letters().rend(); ++it)
		rev.push_back(inverse(*it));
	return Word(std::move(rev)); // already reduced, the pass is a no-op
}

inline Word power(const Word &u, std::int64_t n)
{
	Word base = n < 0 ? invert(u) : u;
	Word r;
	for (std::int64_t i = 0, m = n < 0 ? -n : n; i < m; ++i)
		r = multiply(r, base);
	return r;
}

inline bool in_alphabet(const Alphabet &a, const Word &w)
{
	for (const auto &l : w.letters())
		if (!a.contains(l.symbol))
			return false;
	return true;
}

// ---- text form: whitespace-separated letters `family[index]^-1`, `e` = identity ----

inline std::string to_string(const Symbol &s)
{
	if (!s.index)
		return s.base;
	return s.base + "[" + std::to_string(*s.index) + "]";
}

inline std::string to_string(const Letter &l)
{
	return to_string(l.symbol) + (l.exponent < 0 ? "^-1" : "");
}

inline std::string to_string(const Word &w)
{
	if (w.is_identity())
		return "e";
	std::string s;
	for (const auto &l : w.letters())
	{
		if (!s.empty())
			s += ' ';
		s += to_string(l);
	}
	return s;
}

/// parses one letter token; returns nullopt for the identity token "e"
inline std::optional<Letter> parse_letter(std::string_view tok)
{
	if (tok == "e")
		return std::nullopt;
	Letter l;
	if (tok.size() >= 3 && tok.substr(tok.size() - 3) == "^-1")
	{
		l.exponent = -1;
		tok.remove_suffix(3);
	}
	if (!tok.empty() && tok.back() == ']')
	{
		size_t open = tok.rfind('[');
		if (open == std::string_view::npos)
			throw ParseError("unmatched ']' in letter '" + std::string(tok) + "'");
		std::string_view digits = tok.substr(open + 1, tok.size() - open - 2);
		std::int64_t idx = 0;
		auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), idx);
		if (ec != std::errc() || p != digits.data() + digits.size())
			throw ParseError("bad index in letter '" + std::string(tok) + "'");
		l.symbol.index = idx;
		tok.remove_suffix(tok.size() - open);
	}
	if (!detail::valid_tagged_name(tok))
		throw ParseError("bad symbol name '" + std::string(tok) + "'");
	l.symbol.base = std::string(tok);
	return l;
}

inline Word parse_word(std::string_view text)
{
	std::vector<Letter> letters;
	std::istringstream in{std::string(text)};
	std::string tok;
	bool any = false;
	while (in >> tok)
	{
		any = true;
		if (auto l = parse_letter(tok))
			letters.push_back(std::move(*l));
	}
	if (!any)
		throw ParseError("empty word text");
	return Word(std::move(letters));
}

} // namespace freejoin
