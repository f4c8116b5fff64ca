#pragma once

#include "freejoin/error.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace freejoin {

/** One alphabet symbol.
 *
 * `base` is the family name for ℤ-indexed families (index present) or the
 * member name for finite families (index absent). (base, index) is the
 * identity of the symbol; comparison is structural and gives the canonical
 * symbol order used for words and map keys.
 */
struct Symbol
{
	std::string base;
	std::optional<std::int64_t> index;

	auto operator<=>(const Symbol &) const = default;
};

struct Letter
{
	Symbol symbol;
	int exponent = 1; // +1 or -1; higher powers are repetition

	auto operator<=>(const Letter &) const = default;
};

inline Letter inverse(const Letter &l) { return {l.symbol, -l.exponent}; }

namespace detail {
// "e" is the identity word, "i" the imaginary unit in coefficient position
inline bool valid_name(std::string_view s)
{
	if (s.empty() || s == "e" || s == "i")
		return false;
	if (!((s[0] >= 'A' && s[0] <= 'Z') || (s[0] >= 'a' && s[0] <= 'z') || s[0] == '_'))
		return false;
	for (char c : s)
		if (!((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
		      c == '_'))
			return false;
	return true;
}

// tagged names produced by free products look like "2:s"
inline bool valid_tagged_name(std::string_view s)
{
	size_t colon = s.find(':');
	if (colon == std::string_view::npos)
		return valid_name(s);
	if (colon == 0 || colon + 1 == s.size())
		return false;
	for (size_t i = 0; i < colon; ++i)
		if (s[i] < '0' || s[i] > '9')
			return false;
	return valid_name(s.substr(colon + 1));
}
} // namespace detail

/** The symbol alphabet of one free group.
 *
 * A family is either ℤ-indexed (symbols f[i] for every integer i) or finite
 * with enumerated members; member names are globally unique across the
 * alphabet and act as their own symbol names.
 */
class Alphabet
{
  public:
	// nullopt marks a ℤ-indexed family, otherwise the enumerated members
	using FamilyDef = std::optional<std::vector<std::string>>;

	Alphabet() = default;

	static Alphabet make(std::map<std::string, FamilyDef> families)
	{
		Alphabet a;
		for (auto &[name, def] : families)
		{
			if (!detail::valid_tagged_name(name))
				throw Error("bad family name '" + name + "'");
			if (def)
			{
				if (def->empty())
					throw Error("finite family '" + name + "' has no members");
				for (auto &m : *def)
				{
					if (!detail::valid_tagged_name(m))
						throw Error("bad member name '" + m + "'");
					if (families.count(m))
						throw Error("member '" + m + "' collides with a family name");
					if (!a.member_family_.emplace(m, name).second)
						throw Error("duplicate member name '" + m + "'");
				}
			}
		}
		a.families_ = std::move(families);
		return a;
	}

	const std::map<std::string, FamilyDef> &families() const { return families_; }
	bool empty() const { return families_.empty(); }

	bool has_indexed_family(const std::string &f) const
	{
		auto it = families_.find(f);
		return it != families_.end() && !it->second;
	}

	// family name of a finite member, or nullptr
	const std::string *family_of_member(const std::string &m) const
	{
		auto it = member_family_.find(m);
		return it == member_family_.end() ? nullptr : &it->second;
	}

	bool contains(const Symbol &s) const
	{
		if (s.index)
			return has_indexed_family(s.base);
		return member_family_.count(s.base) != 0;
	}

	friend bool operator==(const Alphabet &, const Alphabet &) = default;

  private:
	std::map<std::string, FamilyDef> families_;
	std::map<std::string, std::string> member_family_;
};

} // namespace freejoin
