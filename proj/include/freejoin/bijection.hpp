#pragma once

#include "freejoin/word.hpp"

#include <numeric>
#include <variant>

namespace freejoin {

/** An alphabet bijection T, the generator of the dynamics.
 *
 * Each family carries exactly one part: a Shift (ℤ-indexed families,
 * step ≠ 0), disjoint FiniteCycles (finite families; unlisted members are
 * fixed points), or Fixed. A symbol's orbit is infinite exactly when its
 * family is shifted.
 */
class SymbolBijection
{
  public:
	struct Shift
	{
		std::int64_t step = 1;
	};
	struct FiniteCycles
	{
		std::vector<std::vector<std::string>> cycles;
	};
	struct Fixed
	{
	};
	using Part = std::variant<Shift, FiniteCycles, Fixed>;

	SymbolBijection() = default;

	static SymbolBijection make(Alphabet alphabet, const std::map<std::string, Part> &parts)
	{
		SymbolBijection t;
		for (const auto &[family, def] : alphabet.families())
		{
			auto it = parts.find(family);
			if (it == parts.end())
				throw Error("no bijection part for family '" + family + "'");
			if (auto *shift = std::get_if<Shift>(&it->second))
			{
				if (def)
					throw Error("shift part on finite family '" + family + "'");
				if (shift->step == 0)
					throw Error("shift step must be nonzero (use a fixed part) on '" + family +
					            "'");
				t.shift_[family] = shift->step;
			}
			else if (auto *fc = std::get_if<FiniteCycles>(&it->second))
			{
				if (!def)
					throw Error("cycle part on indexed family '" + family + "'");
				for (const auto &cycle : fc->cycles)
				{
					if (cycle.empty())
						throw Error("empty cycle in family '" + family + "'");
					int id = static_cast<int>(t.cycles_.size());
					for (size_t pos = 0; pos < cycle.size(); ++pos)
					{
						const std::string &m = cycle[pos];
						const std::string *owner = alphabet.family_of_member(m);
						if (!owner || *owner != family)
							throw Error("cycle member '" + m + "' is not in family '" + family +
							            "'");
						if (!t.member_pos_.emplace(m, std::pair{id, pos}).second)
							throw Error("member '" + m + "' appears in two cycles");
					}
					t.cycles_.push_back(cycle);
				}
			}
			// Fixed: nothing to record; absent members of a cycle part are fixed too
		}
		for (const auto &[family, part] : parts)
			if (!alphabet.families().count(family))
				throw Error("bijection part for unknown family '" + family + "'");
		t.alphabet_ = std::move(alphabet);
		return t;
	}

	static SymbolBijection identity(Alphabet alphabet)
	{
		std::map<std::string, Part> parts;
		for (const auto &[family, def] : alphabet.families())
			parts[family] = Fixed{};
		return make(std::move(alphabet), parts);
	}

	const Alphabet &alphabet() const { return alphabet_; }

	bool contains(const Symbol &s) const { return alphabet_.contains(s); }

	/// T^n of one symbol
	Symbol image(const Symbol &s, std::int64_t n = 1) const
	{
		if (!contains(s))
			throw AlphabetMismatch("symbol '" + to_string(s) + "' is not in the alphabet");
		if (s.index)
		{
			auto it = shift_.find(s.base);
			if (it == shift_.end())
				return s;
			return {s.base, *s.index + n * it->second};
		}
		auto it = member_pos_.find(s.base);
		if (it == member_pos_.end())
			return s;
		const auto &cycle = cycles_[it->second.first];
		std::int64_t len = static_cast<std::int64_t>(cycle.size());
		std::int64_t pos = ((it->second.second + n) % len + len) % len;
		return {cycle[pos], std::nullopt};
	}

	/// orbit length of one symbol; nullopt = infinite
	std::optional<std::int64_t> symbol_period(const Symbol &s) const
	{
		if (!contains(s))
			throw AlphabetMismatch("symbol '" + to_string(s) + "' is not in the alphabet");
		if (s.index)
			return shift_.count(s.base) ? std::optional<std::int64_t>{} : std::optional<std::int64_t>{1};
		auto it = member_pos_.find(s.base);
		if (it == member_pos_.end())
			return 1;
		return static_cast<std::int64_t>(cycles_[it->second.first].size());
	}

	bool has_shift_part() const { return !shift_.empty(); }
	bool shifts_only() const
	{
		return shift_.size() == alphabet_.families().size();
	}
	std::optional<std::int64_t> shift_step(const std::string &family) const
	{
		auto it = shift_.find(family);
		if (it == shift_.end())
			return std::nullopt;
		return it->second;
	}

	/// true when T fixes every symbol of a finite orbit structure of length 1
	bool is_identity_map() const { return shift_.empty() && member_pos_.empty(); }

	friend bool operator==(const SymbolBijection &, const SymbolBijection &) = default;

  private:
	Alphabet alphabet_;
	std::map<std::string, std::int64_t> shift_;              // indexed family -> step
	std::map<std::string, std::pair<int, size_t>> member_pos_; // member -> (cycle, position)
	std::vector<std::vector<std::string>> cycles_;
};

/** T^n applied letterwise; a word stays reduced because a bijection of
 * symbols preserves the adjacency-cancellation pattern. */
inline Word apply_power(const SymbolBijection &t, std::int64_t n, const Word &u)
{
	std::vector<Letter> out;
	out.reserve(u.length());
	for (const auto &l : u.letters())
		out.push_back({t.image(l.symbol, n), l.exponent});
	return Word(std::move(out));
}

/** Least p > 0 with T^p u = u, or nullopt when the orbit is infinite.
 * Equals the lcm of the letter periods: T^p u = u is a positionwise check.
 * The identity word is excluded; its orbit is trivially {e}. */
inline std::optional<std::int64_t> orbit_period(const SymbolBijection &t, const Word &u)
{
	if (u.is_identity())
		throw Error("orbit_period of the identity word (the orbit is trivially {e})");
	std::int64_t p = 1;
	for (const auto &l : u.letters())
	{
		auto sp = t.symbol_period(l.symbol);
		if (!sp)
			return std::nullopt;
		p = std::lcm(p, *sp);
	}
	return p;
}

/// membership in the fixed subgroup {u : T u = u}
inline bool is_fixed(const SymbolBijection &t, const Word &u)
{
	for (const auto &l : u.letters())
		if (t.image(l.symbol, 1) != l.symbol)
			return false;
	return true;
}

} // namespace freejoin
