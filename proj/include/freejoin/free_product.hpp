#pragma once

#include "freejoin/algebra.hpp"

#include <span>

namespace freejoin {

/** A group system: the C*-dynamical system (C*_r(Γ), vacuum, α) determined
 * by a free group alphabet and an alphabet bijection T. */
struct GroupSystem
{
	std::string name;
	SymbolBijection dynamics; // owns the alphabet

	const Alphabet &alphabet() const { return dynamics.alphabet(); }

	static GroupSystem make(std::string name, Alphabet alphabet,
	                        const std::map<std::string, SymbolBijection::Part> &parts)
	{
		return {std::move(name), SymbolBijection::make(std::move(alphabet), parts)};
	}

	friend bool operator==(const GroupSystem &, const GroupSystem &) = default;
};

/** The free product Γ₁∗…∗Γ_k of k group systems, realized as one free group
 * on the disjoint union of tagged alphabets ("ι:family"). The product
 * dynamics T₁∗…∗T_k acts per tagged family, and the free-product state is
 * the vacuum of the product group. Factors are addressed 1-based. */
class FreeProductContext
{
  public:
	FreeProductContext() = default;

	static FreeProductContext make(std::vector<GroupSystem> factors)
	{
		if (factors.empty())
			throw Error("free product needs at least one factor");
		FreeProductContext ctx;
		std::map<std::string, Alphabet::FamilyDef> families;
		std::map<std::string, SymbolBijection::Part> parts;
		for (size_t i = 0; i < factors.size(); ++i)
		{
			std::string tag = std::to_string(i + 1) + ":";
			const auto &sys = factors[i];
			for (const auto &[family, def] : sys.alphabet().families())
			{
				Alphabet::FamilyDef tagged_def;
				if (def)
				{
					tagged_def.emplace();
					for (const auto &m : *def)
						tagged_def->push_back(tag + m);
				}
				families.emplace(tag + family, std::move(tagged_def));

				if (auto step = sys.dynamics.shift_step(family))
					parts.emplace(tag + family, SymbolBijection::Shift{*step});
				else if (def)
				{
					// rebuild the finite cycles with tagged members
					SymbolBijection::FiniteCycles fc;
					std::map<std::string, bool> seen;
					for (const auto &m : *def)
					{
						if (seen[m])
							continue;
						std::vector<std::string> cycle;
						Symbol s{m, std::nullopt};
						do
						{
							seen[s.base] = true;
							cycle.push_back(tag + s.base);
							s = sys.dynamics.image(s, 1);
						} while (s.base != m);
						if (cycle.size() > 1)
							fc.cycles.push_back(std::move(cycle));
					}
					if (fc.cycles.empty())
						parts.emplace(tag + family, SymbolBijection::Fixed{});
					else
						parts.emplace(tag + family, std::move(fc));
				}
				else
					parts.emplace(tag + family, SymbolBijection::Fixed{});
			}
		}
		ctx.product_dynamics_ = SymbolBijection::make(Alphabet::make(std::move(families)), parts);
		ctx.factors_ = std::move(factors);
		return ctx;
	}

	size_t arity() const { return factors_.size(); }

	const GroupSystem &factor(size_t iota) const
	{
		if (iota < 1 || iota > factors_.size())
			throw Error("factor index " + std::to_string(iota) + " out of range [1, " +
			            std::to_string(factors_.size()) + "]");
		return factors_[iota - 1];
	}

	const std::vector<GroupSystem> &factors() const { return factors_; }

	const Alphabet &product_alphabet() const { return product_dynamics_.alphabet(); }
	const SymbolBijection &product_dynamics() const { return product_dynamics_; }

	Symbol tag(size_t iota, const Symbol &s) const
	{
		if (!factor(iota).alphabet().contains(s))
			throw AlphabetMismatch("symbol '" + to_string(s) + "' is not in factor " +
			                       std::to_string(iota) + "'s alphabet");
		return {std::to_string(iota) + ":" + s.base, s.index};
	}

	/// factor index of a tagged symbol, with the bare factor symbol
	std::pair<size_t, Symbol> untag(const Symbol &s) const
	{
		size_t colon = s.base.find(':');
		if (colon == std::string::npos)
			throw AlphabetMismatch("symbol '" + to_string(s) + "' carries no factor tag");
		size_t iota = 0;
		for (size_t i = 0; i < colon; ++i)
		{
			char c = s.base[i];
			if (c < '0' || c > '9')
				throw AlphabetMismatch("symbol '" + to_string(s) + "' carries no factor tag");
			iota = iota * 10 + static_cast<size_t>(c - '0');
		}
		Symbol bare{s.base.substr(colon + 1), s.index};
		if (iota < 1 || iota > factors_.size() || !factor(iota).alphabet().contains(bare))
			throw AlphabetMismatch("symbol '" + to_string(s) + "' is not in the product alphabet");
		return {iota, std::move(bare)};
	}

	friend bool operator==(const FreeProductContext &, const FreeProductContext &) = default;

  private:
	std::vector<GroupSystem> factors_;
	SymbolBijection product_dynamics_;
};

/// ψ_ι on words: retag each letter into the product alphabet
inline Word embed_word(const FreeProductContext &ctx, size_t iota, const Word &g)
{
	std::vector<Letter> out;
	out.reserve(g.length());
	for (const auto &l : g.letters())
		out.push_back({ctx.tag(iota, l.symbol), l.exponent});
	return Word(std::move(out));
}

/// ψ_ι: the injective unital *-homomorphism of factor ι into the product
inline AlgebraElement embed(const FreeProductContext &ctx, size_t iota, const AlgebraElement &a)
{
	AlgebraElement r;
	for (const auto &[w, c] : a.terms)
		r.terms.emplace(embed_word(ctx, iota, w), c);
	return r;
}

/** A product of factor generators λ_{ι₁}(g₁)…λ_{ι_m}(g_m), kept as raw
 * blocks; the flat product word is the canonical object. */
struct Monomial
{
	std::vector<std::pair<size_t, Word>> blocks; // (factor index, word over that factor)

	friend bool operator==(const Monomial &, const Monomial &) = default;
};

/// merge adjacent same-factor blocks and drop identity blocks
inline Monomial normalize(const Monomial &m)
{
	Monomial out;
	for (const auto &[iota, g] : m.blocks)
	{
		if (!out.blocks.empty() && out.blocks.back().first == iota)
		{
			out.blocks.back().second = multiply(out.blocks.back().second, g);
			while (!out.blocks.empty() && out.blocks.back().second.is_identity())
			{
				out.blocks.pop_back();
				// a vanished block may make its neighbours adjacent
				if (out.blocks.size() >= 2 &&
				    out.blocks[out.blocks.size() - 2].first == out.blocks.back().first)
				{
					auto g2 = std::move(out.blocks.back().second);
					out.blocks.pop_back();
					out.blocks.back().second = multiply(out.blocks.back().second, g2);
				}
				else
					break;
			}
		}
		else if (!g.is_identity())
			out.blocks.push_back({iota, g});
	}
	return out;
}

inline bool is_alternating(const Monomial &m)
{
	for (size_t j = 0; j + 1 < m.blocks.size(); ++j)
		if (m.blocks[j].first == m.blocks[j + 1].first)
			return false;
	for (const auto &[iota, g] : m.blocks)
		if (g.is_identity())
			return false;
	return true;
}

inline Word flatten_word(const FreeProductContext &ctx, const Monomial &m)
{
	Word w;
	for (const auto &[iota, g] : m.blocks)
		w = multiply(w, embed_word(ctx, iota, g));
	return w;
}

/// λ_{ι₁}(g₁)…λ_{ι_m}(g_m) as a single product word with coefficient 1
inline AlgebraElement flatten(const FreeProductContext &ctx, const Monomial &m)
{
	return AlgebraElement::monomial(flatten_word(ctx, m));
}

/// split a product word back into maximal same-factor runs
inline Monomial split_blocks(const FreeProductContext &ctx, const Word &w)
{
	Monomial m;
	std::vector<Letter> run;
	size_t run_factor = 0;
	auto flush = [&] {
		if (!run.empty())
		{
			m.blocks.push_back({run_factor, Word(std::move(run))});
			run.clear();
		}
	};
	for (const auto &l : w.letters())
	{
		auto [iota, bare] = ctx.untag(l.symbol);
		if (run.empty() || iota == run_factor)
			run_factor = iota;
		else
			flush(), run_factor = iota;
		run.push_back({bare, l.exponent});
	}
	flush();
	return m;
}

/// α^n = (T₁∗…∗T_k)^n extended linearly; a *-automorphism fixing the state
inline AlgebraElement product_automorphism(const FreeProductContext &ctx, std::int64_t n,
                                           const AlgebraElement &a)
{
	return alg_automorphism(ctx.product_dynamics(), n, a);
}

/** The free product state ∗μ_ι: for group systems, the vacuum of the
 * product group, i.e. the coefficient of the identity word. It vanishes on
 * every alternating monomial with nontrivial blocks (freeness). */
inline ComplexRational free_product_state(const FreeProductContext &, const AlgebraElement &a)
{
	return vacuum_state(a);
}

/// membership in {g : (T₁∗…∗T_k) g = g}
inline bool fixed_subgroup_member(const FreeProductContext &ctx, const Word &w)
{
	return is_fixed(ctx.product_dynamics(), w);
}

/** Per-factor powers: letters tagged ι move by T_ι^{m_ι}. This is the
 * automorphism the universal property builds from the β^{m_ι}. */
inline Word apply_factor_powers(const FreeProductContext &ctx, std::span<const std::int64_t> m,
                                const Word &w)
{
	if (m.size() != ctx.arity())
		throw Error("factor power vector has wrong length");
	std::vector<Letter> out;
	out.reserve(w.length());
	for (const auto &l : w.letters())
	{
		auto [iota, bare] = ctx.untag(l.symbol);
		Symbol moved = ctx.factor(iota).dynamics.image(bare, m[iota - 1]);
		out.push_back({ctx.tag(iota, moved), l.exponent});
	}
	return Word(std::move(out));
}

inline AlgebraElement apply_factor_powers(const FreeProductContext &ctx,
                                          std::span<const std::int64_t> m, const AlgebraElement &a)
{
	AlgebraElement r;
	for (const auto &[w, c] : a.terms)
		r.terms.emplace(apply_factor_powers(ctx, m, w), c);
	return r;
}

} // namespace freejoin
