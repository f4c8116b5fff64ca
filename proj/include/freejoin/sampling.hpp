#pragma once

#include "freejoin/free_product.hpp"

#include <cstdint>

namespace freejoin {

/** splitmix64 stream; hand-rolled so that seeded runs are bit-identical
 * across platforms (std:: distributions are implementation-defined). */
class Rng
{
  public:
	explicit Rng(std::uint64_t seed) : state_(seed) {}

	std::uint64_t next()
	{
		std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
		z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
		z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
		return z ^ (z >> 31);
	}

	/// uniform-ish in [lo, hi], inclusive
	std::int64_t range(std::int64_t lo, std::int64_t hi)
	{
		std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
		return lo + static_cast<std::int64_t>(next() % span);
	}

	bool coin() { return (next() & 1) != 0; }
};

/// deterministic seed mixing for named tasks
inline std::uint64_t mix_seed(std::uint64_t seed, std::string_view name)
{
	std::uint64_t h = 0xcbf29ce484222325ull;
	for (char c : name)
	{
		h ^= static_cast<unsigned char>(c);
		h *= 0x100000001b3ull;
	}
	return h ^ seed;
}

struct SampleLimits
{
	int max_len = 6;          // letters per raw word
	std::int64_t index_range = 4; // indexed symbols use [-index_range, index_range]
	int max_terms = 3;        // terms per random element
	std::int64_t coeff_range = 3; // numerators/denominators
};

inline Symbol random_symbol(Rng &rng, const Alphabet &a, const SampleLimits &lim)
{
	// flatten the symbol choices: one slot per indexed family, one per member
	std::vector<Symbol> slots;
	for (const auto &[family, def] : a.families())
	{
		if (!def)
			slots.push_back({family, 0});
		else
			for (const auto &m : *def)
				slots.push_back({m, std::nullopt});
	}
	if (slots.empty())
		throw Error("cannot sample from an empty alphabet");
	Symbol s = slots[static_cast<size_t>(rng.range(0, static_cast<std::int64_t>(slots.size()) - 1))];
	if (s.index)
		s.index = rng.range(-lim.index_range, lim.index_range);
	return s;
}

inline Word random_word(Rng &rng, const Alphabet &a, const SampleLimits &lim = {})
{
	if (a.empty())
		return Word::identity();
	std::int64_t len = rng.range(0, lim.max_len);
	std::vector<Letter> letters;
	letters.reserve(static_cast<size_t>(len));
	for (std::int64_t i = 0; i < len; ++i)
		letters.push_back({random_symbol(rng, a, lim), rng.coin() ? 1 : -1});
	return Word(std::move(letters));
}

inline Word random_nonidentity_word(Rng &rng, const Alphabet &a, const SampleLimits &lim = {})
{
	if (a.empty())
		throw Error("alphabet has no nontrivial words");
	for (;;)
	{
		Word w = random_word(rng, a, lim);
		if (!w.is_identity())
			return w;
	}
}

inline ComplexRational random_coeff(Rng &rng, const SampleLimits &lim = {})
{
	auto rat = [&] {
		Rational num(rng.range(-lim.coeff_range, lim.coeff_range));
		Rational den(rng.range(1, lim.coeff_range));
		return num / den;
	};
	return rng.coin() ? ComplexRational{rat()} : ComplexRational{rat(), rat()};
}

inline AlgebraElement random_element(Rng &rng, const Alphabet &a, const SampleLimits &lim = {})
{
	AlgebraElement e;
	std::int64_t n = rng.range(1, lim.max_terms);
	for (std::int64_t i = 0; i < n; ++i)
		e.add_term(random_word(rng, a, lim), random_coeff(rng, lim));
	return e;
}

inline FinVector random_vector(Rng &rng, const Alphabet &a, const SampleLimits &lim = {})
{
	return to_vector(random_element(rng, a, lim));
}

} // namespace freejoin
