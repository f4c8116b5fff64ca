#pragma once

#include "freejoin/bijection.hpp"
#include "freejoin/rational.hpp"

#include <map>
#include <sstream>

namespace freejoin {

/** An element of the dense *-algebra of C*_r(Γ): a finite complex-rational
 * combination of reduced words. Zero coefficients are never stored; the
 * empty map is 0 and {e → 1} is the unit.
 */
struct AlgebraElement
{
	std::map<Word, ComplexRational> terms;

	AlgebraElement() = default;

	static AlgebraElement zero() { return {}; }

	static AlgebraElement unit() { return monomial(Word::identity()); }

	/// c·λ(w)
	static AlgebraElement monomial(Word w, ComplexRational c = 1)
	{
		AlgebraElement a;
		if (!c.is_zero())
			a.terms.emplace(std::move(w), std::move(c));
		return a;
	}

	bool is_zero() const { return terms.empty(); }

	ComplexRational coefficient(const Word &w) const
	{
		auto it = terms.find(w);
		return it == terms.end() ? ComplexRational{} : it->second;
	}

	void add_term(const Word &w, const ComplexRational &c)
	{
		auto [it, fresh] = terms.try_emplace(w, c);
		if (!fresh)
		{
			it->second += c;
			if (it->second.is_zero())
				terms.erase(it);
		}
		else if (c.is_zero())
			terms.erase(it);
	}

	friend bool operator==(const AlgebraElement &, const AlgebraElement &) = default;
};

inline AlgebraElement operator+(const AlgebraElement &a, const AlgebraElement &b)
{
	AlgebraElement r = a;
	for (const auto &[w, c] : b.terms)
		r.add_term(w, c);
	return r;
}

inline AlgebraElement operator-(const AlgebraElement &a, const AlgebraElement &b)
{
	AlgebraElement r = a;
	for (const auto &[w, c] : b.terms)
		r.add_term(w, -c);
	return r;
}

inline AlgebraElement operator*(const ComplexRational &c, const AlgebraElement &a)
{
	AlgebraElement r;
	if (c.is_zero())
		return r;
	for (const auto &[w, x] : a.terms)
		r.terms.emplace(w, c * x);
	return r;
}

/// convolution product: the bilinear extension of the group law
inline AlgebraElement operator*(const AlgebraElement &a, const AlgebraElement &b)
{
	AlgebraElement r;
	for (const auto &[u, c] : a.terms)
		for (const auto &[v, d] : b.terms)
			r.add_term(multiply(u, v), c * d);
	return r;
}

/// the *-involution: (c·λ(g))* = conj(c)·λ(g^{-1})
inline AlgebraElement adjoint(const AlgebraElement &a)
{
	AlgebraElement r;
	for (const auto &[w, c] : a.terms)
		r.terms.emplace(invert(w), conj(c));
	return r;
}

/** The vacuum state ⟨Ω, a Ω⟩: the coefficient of the identity word.
 * Positive (vacuum_state(adjoint(a)*a) = Σ|c|² ≥ 0) and tracial on the
 * group algebra. */
inline ComplexRational vacuum_state(const AlgebraElement &a)
{
	return a.coefficient(Word::identity());
}

/// α^n = the linear extension of T^n on words; a *-automorphism fixing the vacuum
inline AlgebraElement alg_automorphism(const SymbolBijection &t, std::int64_t n,
                                       const AlgebraElement &a)
{
	AlgebraElement r;
	for (const auto &[w, c] : a.terms)
		r.terms.emplace(apply_power(t, n, w), c);
	return r;
}

/** A finitely supported vector in ℓ²(Γ), as an amplitude map on words.
 * Ω = δ_e is {e → 1}. */
struct FinVector
{
	std::map<Word, ComplexRational> amplitudes;

	FinVector() = default;

	static FinVector zero() { return {}; }

	static FinVector delta(Word w, ComplexRational c = 1)
	{
		FinVector x;
		if (!c.is_zero())
			x.amplitudes.emplace(std::move(w), std::move(c));
		return x;
	}

	static FinVector vacuum() { return delta(Word::identity()); }

	bool is_zero() const { return amplitudes.empty(); }

	ComplexRational amplitude(const Word &w) const
	{
		auto it = amplitudes.find(w);
		return it == amplitudes.end() ? ComplexRational{} : it->second;
	}

	void add(const Word &w, const ComplexRational &c)
	{
		auto [it, fresh] = amplitudes.try_emplace(w, c);
		if (!fresh)
		{
			it->second += c;
			if (it->second.is_zero())
				amplitudes.erase(it);
		}
		else if (c.is_zero())
			amplitudes.erase(it);
	}

	friend bool operator==(const FinVector &, const FinVector &) = default;
};

inline FinVector operator+(const FinVector &x, const FinVector &y)
{
	FinVector r = x;
	for (const auto &[w, c] : y.amplitudes)
		r.add(w, c);
	return r;
}

inline FinVector operator-(const FinVector &x, const FinVector &y)
{
	FinVector r = x;
	for (const auto &[w, c] : y.amplitudes)
		r.add(w, -c);
	return r;
}

inline FinVector operator*(const ComplexRational &c, const FinVector &x)
{
	FinVector r;
	if (c.is_zero())
		return r;
	for (const auto &[w, a] : x.amplitudes)
		r.amplitudes.emplace(w, c * a);
	return r;
}

/// ⟨x, y⟩ = Σ conj(x(w))·y(w), conjugate-linear in the first slot
inline ComplexRational inner(const FinVector &x, const FinVector &y)
{
	ComplexRational s;
	for (const auto &[w, c] : x.amplitudes)
	{
		auto it = y.amplitudes.find(w);
		if (it != y.amplitudes.end())
			s += conj(c) * it->second;
	}
	return s;
}

/// left regular action: λ(g)δ_h = δ_{gh}, extended bilinearly
inline FinVector left_regular_apply(const AlgebraElement &a, const FinVector &x)
{
	FinVector r;
	for (const auto &[g, c] : a.terms)
		for (const auto &[h, d] : x.amplitudes)
			r.add(multiply(g, h), c * d);
	return r;
}

/// the unitary U^n: δ_g ↦ δ_{T^n g}; intertwines U^n λ(g) U^{-n} = λ(T^n g)
inline FinVector unitary_apply(const SymbolBijection &t, std::int64_t n, const FinVector &x)
{
	FinVector r;
	for (const auto &[w, c] : x.amplitudes)
		r.amplitudes.emplace(apply_power(t, n, w), c);
	return r;
}

// ---- element text form: `c1 * <word> + c2 * <word>`, rationals as p/q ----

inline std::string to_string(const AlgebraElement &a)
{
	if (a.is_zero())
		return "0";
	std::string s;
	for (const auto &[w, c] : a.terms)
	{
		if (!s.empty())
			s += " + ";
		s += to_string(c) + " * " + to_string(w);
	}
	return s;
}

namespace detail {
inline bool looks_like_rational(std::string_view tok)
{
	if (tok.empty())
		return false;
	size_t i = tok[0] == '-' ? 1 : 0;
	if (i == tok.size())
		return false;
	for (; i < tok.size(); ++i)
		if (!((tok[i] >= '0' && tok[i] <= '9') || tok[i] == '/' || tok[i] == '+' || tok[i] == '-'))
			return false;
	return true;
}
} // namespace detail

inline AlgebraElement parse_element(std::string_view text)
{
	std::vector<std::string> toks;
	{
		std::istringstream in{std::string(text)};
		std::string t;
		while (in >> t)
			toks.push_back(t);
	}
	if (toks.empty())
		throw ParseError("empty element text");
	if (toks.size() == 1 && toks[0] == "0")
		return AlgebraElement::zero();

	AlgebraElement result;
	size_t i = 0;
	while (i < toks.size())
	{
		ComplexRational coeff = 1;
		// coefficient part: RAT '*' | RAT 'i' '*' (position of '*' decides)
		if (detail::looks_like_rational(toks[i]))
		{
			if (i + 1 < toks.size() && toks[i + 1] == "*")
			{
				coeff = parse_complex(toks[i], false);
				i += 2;
			}
			else if (i + 2 < toks.size() && toks[i + 1] == "i" && toks[i + 2] == "*")
			{
				coeff = parse_complex(toks[i], true);
				i += 3;
			}
		}
		std::vector<Letter> letters;
		bool any = false;
		while (i < toks.size() && toks[i] != "+")
		{
			any = true;
			if (auto l = parse_letter(toks[i]))
				letters.push_back(std::move(*l));
			++i;
		}
		if (!any)
			throw ParseError("term without a word in '" + std::string(text) + "'");
		result.add_term(Word(std::move(letters)), coeff);
		if (i < toks.size())
		{
			++i; // consume '+'
			if (i == toks.size())
				throw ParseError("dangling '+' in '" + std::string(text) + "'");
		}
	}
	return result;
}

// FinVector shares the element syntax through conversion
inline FinVector to_vector(const AlgebraElement &a)
{
	FinVector x;
	x.amplitudes = a.terms;
	return x;
}

inline AlgebraElement to_element(const FinVector &x)
{
	AlgebraElement a;
	a.terms = x.amplitudes;
	return a;
}

} // namespace freejoin
