#pragma once

#include "freejoin/free_product.hpp"
#include "freejoin/report.hpp"

#include <functional>
#include <memory>

namespace freejoin {

/** A factor map h_ι: an injective symbol-level map from factor ι's alphabet
 * into a target system's alphabet, together with a ℤ offset g_ι. Symbol maps
 * induce injective group homomorphisms Γ_ι → Γ_target; the intertwining
 * condition h_ι ∘ T_ι = T_target ∘ h_ι is checked when a diagonal joining is
 * built. */
struct FactorMap
{
	size_t source = 1;                             // factor index ι
	std::map<std::string, std::string> family_map; // indexed family -> target indexed family
	std::map<std::string, std::string> member_map; // finite member -> target finite member
	std::int64_t offset = 0;                       // g_ι

	static FactorMap identity(size_t iota, const GroupSystem &factor, std::int64_t offset = 0)
	{
		FactorMap fm;
		fm.source = iota;
		fm.offset = offset;
		for (const auto &[family, def] : factor.alphabet().families())
		{
			if (!def)
				fm.family_map[family] = family;
			else
				for (const auto &m : *def)
					fm.member_map[m] = m;
		}
		return fm;
	}

	Symbol apply(const Symbol &s) const
	{
		if (s.index)
		{
			auto it = family_map.find(s.base);
			if (it == family_map.end())
				throw AlphabetMismatch("family '" + s.base + "' is not in the factor map domain");
			return {it->second, s.index};
		}
		auto it = member_map.find(s.base);
		if (it == member_map.end())
			throw AlphabetMismatch("member '" + s.base + "' is not in the factor map domain");
		return {it->second, std::nullopt};
	}

	/// h_ι on words (letterwise; injective, so reduced words stay reduced)
	Word apply(const Word &g) const
	{
		std::vector<Letter> out;
		out.reserve(g.length());
		for (const auto &l : g.letters())
			out.push_back({apply(l.symbol), l.exponent});
		return Word(std::move(out));
	}

	friend bool operator==(const FactorMap &, const FactorMap &) = default;
};

/** Target system and one factor map per factor — the data of Construction
 * 2.3's homomorphism δ_ḡ: product word ↦ target word, letter (ι:s) ↦
 * T_target^{g_ι}(h_ι(s)). */
struct DiagonalData
{
	GroupSystem target;
	std::vector<FactorMap> maps; // maps[i] has source i+1

	std::vector<std::int64_t> offsets() const
	{
		std::vector<std::int64_t> g;
		for (const auto &fm : maps)
			g.push_back(fm.offset);
		return g;
	}

	friend bool operator==(const DiagonalData &, const DiagonalData &) = default;
};

inline DiagonalData with_offsets(DiagonalData d, std::span<const std::int64_t> offsets)
{
	if (offsets.size() != d.maps.size())
		throw Error("offset vector has wrong length");
	for (size_t i = 0; i < d.maps.size(); ++i)
		d.maps[i].offset = offsets[i];
	return d;
}

/// δ_ḡ on a product word
inline Word diagonal_word_image(const FreeProductContext &ctx, const DiagonalData &d,
                                const Word &w)
{
	std::vector<Letter> out;
	out.reserve(w.length());
	for (const auto &l : w.letters())
	{
		auto [iota, bare] = ctx.untag(l.symbol);
		const FactorMap &fm = d.maps.at(iota - 1);
		out.push_back({d.target.dynamics.image(fm.apply(bare), fm.offset), l.exponent});
	}
	return Word(std::move(out)); // image letters may now cancel
}

/// T_target^{g_ι} ∘ h_ι on one factor word
inline Word diagonal_factor_image(const DiagonalData &d, size_t iota, const Word &g)
{
	const FactorMap &fm = d.maps.at(iota - 1);
	std::vector<Letter> out;
	out.reserve(g.length());
	for (const auto &l : g.letters())
		out.push_back({d.target.dynamics.image(fm.apply(l.symbol), fm.offset), l.exponent});
	return Word(std::move(out));
}

namespace detail {
inline void validate_factor_map(const FreeProductContext &ctx, const GroupSystem &target,
                                const FactorMap &fm)
{
	const GroupSystem &src = ctx.factor(fm.source);
	std::map<std::string, int> image_families;
	std::map<std::string, int> image_members;

	for (const auto &[family, def] : src.alphabet().families())
	{
		if (!def)
		{
			auto it = fm.family_map.find(family);
			if (it == fm.family_map.end())
				throw AlphabetMismatch("factor map " + std::to_string(fm.source) +
				                       " misses family '" + family + "'");
			if (!target.alphabet().has_indexed_family(it->second))
				throw AlphabetMismatch("factor map image family '" + it->second +
				                       "' is not indexed in target '" + target.name + "'");
			if (image_families[it->second]++)
				throw Error("factor map " + std::to_string(fm.source) +
				            " is not injective on families");
			// intertwining at an indexed family: the steps must match
			auto s_src = src.dynamics.shift_step(family);
			auto s_tgt = target.dynamics.shift_step(it->second);
			if (s_src.value_or(0) != s_tgt.value_or(0))
				throw IntertwiningError("factor map " + std::to_string(fm.source) + " family '" +
				                        family + "' -> '" + it->second +
				                        "' does not commute with the dynamics");
		}
		else
		{
			for (const auto &m : *def)
			{
				auto it = fm.member_map.find(m);
				if (it == fm.member_map.end())
					throw AlphabetMismatch("factor map " + std::to_string(fm.source) +
					                       " misses member '" + m + "'");
				if (!target.alphabet().family_of_member(it->second))
					throw AlphabetMismatch("factor map image member '" + it->second +
					                       "' is not in target '" + target.name + "'");
				if (image_members[it->second]++)
					throw Error("factor map " + std::to_string(fm.source) +
					            " is not injective on members");
			}
			// intertwining on every member: h(T m) = T_target(h m)
			for (const auto &m : *def)
			{
				Symbol moved = src.dynamics.image({m, std::nullopt}, 1);
				Symbol lhs = fm.apply(moved);
				Symbol rhs = target.dynamics.image(fm.apply({m, std::nullopt}), 1);
				if (lhs != rhs)
					throw IntertwiningError("factor map " + std::to_string(fm.source) +
					                        " member '" + m +
					                        "' does not commute with the dynamics");
			}
		}
	}
	for (const auto &[f, _] : fm.family_map)
		if (!src.alphabet().has_indexed_family(f))
			throw AlphabetMismatch("factor map domain family '" + f + "' is not in factor " +
			                       std::to_string(fm.source));
	for (const auto &[m, _] : fm.member_map)
		if (!src.alphabet().family_of_member(m))
			throw AlphabetMismatch("factor map domain member '" + m + "' is not in factor " +
			                       std::to_string(fm.source));
}
} // namespace detail

/** A state on the dense *-algebra of the free product, with metadata about
 * which construction produced it. Every evaluator here is linear, unital,
 * hermitian and positive; whether it also lives on the reduced free product
 * is recorded, not proven. */
class Joining
{
  public:
	enum class Kind
	{
		trivial,      // the free product state ∗μ_ι
		diagonal,     // Construction-2.3 style Δ_ḡ = ν ∘ δ_ḡ
		vector_state, // ⟨η, ·η⟩/⟨η,η⟩ on ℓ²(Γ₁∗…∗Γ_k)
		averaged,     // box average of diagonals (see mixing.hpp)
	};

	static Joining trivial(FreeProductContext ctx)
	{
		Joining j;
		j.kind_ = Kind::trivial;
		j.completion_ = "unital and reduced (vector state at the vacuum)";
		j.ctx_ = std::make_shared<FreeProductContext>(std::move(ctx));
		auto ctx_p = j.ctx_;
		j.eval_ = [ctx_p](const AlgebraElement &a) { return free_product_state(*ctx_p, a); };
		return j;
	}

	static Joining diagonal(FreeProductContext ctx, GroupSystem target,
	                        std::vector<FactorMap> maps)
	{
		Joining j;
		j.kind_ = Kind::diagonal;
		j.completion_ = "unital";
		j.ctx_ = std::make_shared<FreeProductContext>(std::move(ctx));
		if (maps.size() != j.ctx_->arity())
			throw Error("need one factor map per factor");
		for (size_t i = 0; i < maps.size(); ++i)
			if (maps[i].source != i + 1)
				throw Error("factor map " + std::to_string(i + 1) + " has source " +
				            std::to_string(maps[i].source));
		auto data = std::make_shared<DiagonalData>(
		    DiagonalData{std::move(target), std::move(maps)});
		for (const auto &fm : data->maps)
			detail::validate_factor_map(*j.ctx_, data->target, fm);
		j.diagonal_ = data;
		auto ctx_p = j.ctx_;
		j.eval_ = [ctx_p, data](const AlgebraElement &a) {
			ComplexRational v;
			for (const auto &[w, c] : a.terms)
				if (diagonal_word_image(*ctx_p, *data, w).is_identity())
					v += c;
			return v;
		};
		return j;
	}

	static Joining vector_state(FreeProductContext ctx, FinVector eta)
	{
		if (eta.is_zero())
			throw Error("vector state needs a nonzero vector");
		for (const auto &[w, _] : eta.amplitudes)
			if (!in_alphabet(ctx.product_alphabet(), w))
				throw AlphabetMismatch("vector support word '" + to_string(w) +
				                       "' is outside the product alphabet");
		Joining j;
		j.kind_ = Kind::vector_state;
		j.completion_ = "unital and reduced (vector state)";
		j.ctx_ = std::make_shared<FreeProductContext>(std::move(ctx));
		auto eta_p = std::make_shared<FinVector>(std::move(eta));
		Rational nrm = inner(*eta_p, *eta_p).re; // ⟨η,η⟩ > 0, exact
		j.eta_ = eta_p;
		j.eval_ = [eta_p, nrm](const AlgebraElement &a) {
			return inner(*eta_p, left_regular_apply(a, *eta_p)) / nrm;
		};
		return j;
	}

	/// escape hatch for further constructions (box averages)
	static Joining custom(Kind kind, std::string completion, FreeProductContext ctx,
	                      std::function<ComplexRational(const AlgebraElement &)> eval)
	{
		Joining j;
		j.kind_ = kind;
		j.completion_ = std::move(completion);
		j.ctx_ = std::make_shared<FreeProductContext>(std::move(ctx));
		j.eval_ = std::move(eval);
		return j;
	}

	Kind kind() const { return kind_; }
	const std::string &completion() const { return completion_; }
	const FreeProductContext &context() const { return *ctx_; }
	const DiagonalData *diagonal_data() const { return diagonal_.get(); }
	const FinVector *vector() const { return eta_.get(); }

	ComplexRational evaluate(const AlgebraElement &a) const { return eval_(a); }

	ComplexRational evaluate(const Monomial &m) const { return eval_(flatten(*ctx_, m)); }

  private:
	Kind kind_ = Kind::trivial;
	std::string completion_;
	std::shared_ptr<const FreeProductContext> ctx_;
	std::function<ComplexRational(const AlgebraElement &)> eval_;
	std::shared_ptr<const DiagonalData> diagonal_;
	std::shared_ptr<const FinVector> eta_;
};

inline const char *to_string(Joining::Kind k)
{
	switch (k)
	{
	case Joining::Kind::trivial:
		return "trivial";
	case Joining::Kind::diagonal:
		return "diagonal";
	case Joining::Kind::vector_state:
		return "vector";
	case Joining::Kind::averaged:
		return "averaged";
	}
	return "?";
}

/** Checks the joining axioms on supplied samples: the state axioms
 * (unitality, hermiticity, positivity), the restriction law ω∘ψ_ι = μ_ι on
 * per-factor words, and invariance ω∘α^n = ω on elements. All checks are
 * exact; failures land in the report with witnesses. */
inline Report verify_joining_axioms(const Joining &j,
                                    const std::vector<std::vector<Word>> &factor_samples,
                                    std::int64_t n_lo, std::int64_t n_hi,
                                    const std::vector<AlgebraElement> &elements)
{
	const FreeProductContext &ctx = j.context();
	Report rep;
	rep.task = "joining-axioms";

	ComplexRational unit_value = j.evaluate(AlgebraElement::unit());
	rep.check("unitality: omega(1) = 1", unit_value == ComplexRational(1),
	          "omega(1) = " + to_string(unit_value));

	if (factor_samples.size() != ctx.arity())
		throw Error("need one sample list per factor");
	bool restriction_ok = true;
	for (size_t iota = 1; iota <= ctx.arity() && restriction_ok; ++iota)
	{
		for (const Word &g : factor_samples[iota - 1])
		{
			AlgebraElement lam = AlgebraElement::monomial(g);
			ComplexRational lhs = j.evaluate(embed(ctx, iota, lam));
			ComplexRational rhs = vacuum_state(lam); // μ_ι(λ(g)) = [g = e]
			if (lhs != rhs)
			{
				rep.check("restriction: omega(psi_" + std::to_string(iota) + "(a)) = mu_" +
				              std::to_string(iota) + "(a)",
				          false,
				          "g = " + to_string(g) + ": " + to_string(lhs) + " != " + to_string(rhs));
				restriction_ok = false;
				break;
			}
		}
	}
	if (restriction_ok)
		rep.check("restriction: omega(psi_i(a)) = mu_i(a) on all samples", true);

	bool herm_ok = true, pos_ok = true, inv_ok = true;
	for (const AlgebraElement &a : elements)
	{
		ComplexRational base = j.evaluate(a);

		ComplexRational herm = j.evaluate(adjoint(a));
		if (herm_ok && herm != conj(base))
		{
			rep.check("hermiticity: omega(a*) = conj(omega(a))", false,
			          "a = " + to_string(a) + ": " + to_string(herm) +
			              " != " + to_string(conj(base)));
			herm_ok = false;
		}

		ComplexRational pos = j.evaluate(adjoint(a) * a);
		if (pos_ok && (!pos.is_real() || pos.re < 0))
		{
			rep.check("positivity: omega(a* a) >= 0", false,
			          "a = " + to_string(a) + ": omega(a* a) = " + to_string(pos));
			pos_ok = false;
		}

		for (std::int64_t n = n_lo; n <= n_hi && inv_ok; ++n)
		{
			ComplexRational moved = j.evaluate(product_automorphism(ctx, n, a));
			if (moved != base)
			{
				rep.check("invariance: omega(alpha^n(a)) = omega(a)", false,
				          "a = " + to_string(a) + ", n = " + std::to_string(n) + ": " +
				              to_string(moved) + " != " + to_string(base));
				inv_ok = false;
			}
		}
		if (!herm_ok && !pos_ok && !inv_ok)
			break;
	}
	if (herm_ok)
		rep.check("hermiticity: omega(a*) = conj(omega(a)) on all samples", true);
	if (pos_ok)
		rep.check("positivity: omega(a* a) >= 0 on all samples", true);
	if (inv_ok)
		rep.check("invariance: omega(alpha^n(a)) = omega(a) on all samples", true);
	return rep;
}

/** Tests Def-3.1 splitting ω(a₁a₂) = μ₁(a₁)μ₂(a₂) (both orders) on sample
 * pairs. Binary contexts only. */
inline Report check_tensorial_splitting(const Joining &j,
                                        const std::vector<AlgebraElement> &a1_samples,
                                        const std::vector<AlgebraElement> &a2_samples)
{
	const FreeProductContext &ctx = j.context();
	if (ctx.arity() != 2)
		throw Error("tensorial splitting is a two-factor notion");
	Report rep;
	rep.task = "tensorial-splitting";
	bool all = true;
	for (const AlgebraElement &a1 : a1_samples)
		for (const AlgebraElement &a2 : a2_samples)
		{
			ComplexRational mu = vacuum_state(a1) * vacuum_state(a2);
			ComplexRational v12 = j.evaluate(embed(ctx, 1, a1) * embed(ctx, 2, a2));
			ComplexRational v21 = j.evaluate(embed(ctx, 2, a2) * embed(ctx, 1, a1));
			if (v12 != mu || v21 != mu)
			{
				rep.check("splitting: omega(a1 a2) = mu1(a1) mu2(a2)", false,
				          "a1 = " + to_string(a1) + ", a2 = " + to_string(a2) + ": omega(a1 a2) = " +
				              to_string(v12) + ", omega(a2 a1) = " + to_string(v21) +
				              ", product = " + to_string(mu));
				all = false;
			}
		}
	if (all)
		rep.check("splitting: omega(a1 a2) = mu1(a1) mu2(a2) on all samples", true);
	return rep;
}

} // namespace freejoin
