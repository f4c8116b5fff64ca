#pragma once

#include "freejoin/joinings.hpp"
#include "freejoin/sampling.hpp"

namespace freejoin {

/** A concrete GNS model (H_ω, π_ω, Ω_ω) for the joinings the library can
 * build, on finitely supported vectors only.
 *
 *   trivial model:  H_ω = ℓ²(Γ₁∗…∗Γ_k), Ω_ω = δ_e, π_ω = left regular.
 *                   H_ι is spanned by the δ-basis of factor-ι words. The
 *                   vector-state GNS space is a subspace of this carrier
 *                   and is not constructed separately. For ω = μ this flat
 *                   carrier realizes the Fock-space picture through the
 *                   convention δ_{h}⊗δ_{k} ↔ δ_{(1:h)(2:k)}.
 *   diagonal model: H_ω = ℓ²(Γ_target), Ω_ω = δ_e, π_ω = λ_target ∘ δ_ḡ.
 *                   H_ι is spanned by the words of the image subgroup
 *                   T^{g_ι} h_ι(Γ_ι).
 *
 * P_ι^κ is the conditional expectation operator H_κ → H_ι: restriction of
 * amplitudes to H_ι's basis words. U_ω^n moves basis words by the model's
 * bijection.
 */
class GnsModel
{
  public:
	enum class Kind
	{
		trivial,
		diagonal,
	};

	static GnsModel trivial_model(FreeProductContext ctx)
	{
		GnsModel m;
		m.kind_ = Kind::trivial;
		m.ctx_ = std::move(ctx);
		return m;
	}

	static GnsModel diagonal_model(FreeProductContext ctx, DiagonalData data)
	{
		GnsModel m;
		m.kind_ = Kind::diagonal;
		m.ctx_ = std::move(ctx);
		if (data.maps.size() != m.ctx_.arity())
			throw Error("need one factor map per factor");
		for (const auto &fm : data.maps)
			detail::validate_factor_map(m.ctx_, data.target, fm);
		m.diagonal_ = std::move(data);
		return m;
	}

	/** Model for a joining produced by joinings.hpp. Vector-state joinings
	 * get the ambient trivial carrier (their GNS space is a subspace of it;
	 * the carrier's own state is μ, not ω). */
	static GnsModel for_joining(const Joining &j)
	{
		switch (j.kind())
		{
		case Joining::Kind::trivial:
		case Joining::Kind::vector_state:
			return trivial_model(j.context());
		case Joining::Kind::diagonal:
			return diagonal_model(j.context(), *j.diagonal_data());
		default:
			throw Error("no concrete GNS model for this joining kind");
		}
	}

	Kind kind() const { return kind_; }
	const FreeProductContext &context() const { return ctx_; }
	size_t arity() const { return ctx_.arity(); }

	FinVector vacuum() const { return FinVector::vacuum(); }

	/// basis-word membership in H_ι
	bool in_subspace(size_t iota, const Word &w) const
	{
		ctx_.factor(iota); // index check
		if (kind_ == Kind::trivial)
		{
			for (const auto &l : w.letters())
				if (ctx_.untag(l.symbol).first != iota)
					return false;
			return true;
		}
		const FactorMap &fm = diagonal_->maps[iota - 1];
		for (const auto &l : w.letters())
		{
			const Symbol &s = l.symbol;
			if (s.index)
			{
				bool hit = false;
				for (const auto &[_, img] : fm.family_map)
					if (img == s.base)
					{
						hit = true;
						break;
					}
				if (!hit)
					return false;
			}
			else
			{
				// member images move with the offset
				bool hit = false;
				for (const auto &[_, img] : fm.member_map)
					if (diagonal_->target.dynamics.image({img, std::nullopt}, fm.offset) == s)
					{
						hit = true;
						break;
					}
				if (!hit)
					return false;
			}
		}
		return true;
	}

	bool in_subspace(size_t iota, const FinVector &x) const
	{
		for (const auto &[w, _] : x.amplitudes)
			if (!in_subspace(iota, w))
				return false;
		return true;
	}

	/// γ_ω = π_ω(·) Ω_ω on the dense algebra of the product
	FinVector gamma_omega(const AlgebraElement &a) const
	{
		FinVector x;
		if (kind_ == Kind::trivial)
		{
			x.amplitudes = a.terms;
			return x;
		}
		for (const auto &[w, c] : a.terms)
			x.add(diagonal_word_image(ctx_, *diagonal_, w), c);
		return x;
	}

	/// γ_ι = γ_ω ∘ ψ_ι on factor-ι elements; lands in H_ι
	FinVector gamma(size_t iota, const AlgebraElement &a) const
	{
		for (const auto &[w, _] : a.terms)
			if (!in_alphabet(ctx_.factor(iota).alphabet(), w))
				throw AlphabetMismatch("element is not over factor " + std::to_string(iota) +
				                       "'s alphabet");
		FinVector x;
		if (kind_ == Kind::trivial)
		{
			for (const auto &[w, c] : a.terms)
				x.add(embed_word(ctx_, iota, w), c);
			return x;
		}
		for (const auto &[w, c] : a.terms)
			x.add(diagonal_factor_image(*diagonal_, iota, w), c);
		return x;
	}

	/// ω(a) = ⟨Ω_ω, γ_ω(a)⟩ — the state the model represents
	ComplexRational state(const AlgebraElement &a) const
	{
		return gamma_omega(a).amplitude(Word::identity());
	}

	/** P_ι^κ: the unique map H_κ → H_ι with ⟨P_ι^κ x, y⟩ = ⟨x, y⟩ for all
	 * y ∈ H_ι. On the common δ-basis this is restriction of amplitudes. */
	FinVector conditional_expectation(size_t iota, size_t kappa, const FinVector &x) const
	{
		if (!in_subspace(kappa, x))
			throw SupportError("vector is not supported in H_" + std::to_string(kappa));
		FinVector r;
		for (const auto &[w, c] : x.amplitudes)
			if (in_subspace(iota, w))
				r.amplitudes.emplace(w, c);
		return r;
	}

	/// U_ω^n: δ_w ↦ δ_{T^n w} for the model's bijection; fixes Ω_ω
	FinVector unitary(std::int64_t n, const FinVector &x) const
	{
		const SymbolBijection &t =
		    kind_ == Kind::trivial ? ctx_.product_dynamics() : diagonal_->target.dynamics;
		return unitary_apply(t, n, x);
	}

	/// a random finitely supported vector inside H_ι
	FinVector random_subspace_vector(Rng &rng, size_t iota, const SampleLimits &lim = {}) const
	{
		const Alphabet &a = ctx_.factor(iota).alphabet();
		AlgebraElement e = a.empty() ? AlgebraElement::unit() : random_element(rng, a, lim);
		return gamma(iota, e);
	}

  private:
	Kind kind_ = Kind::trivial;
	FreeProductContext ctx_;
	std::optional<DiagonalData> diagonal_;
};

/** Exact check of P_ι^κ U_κ^n = U_ι^n P_ι^κ on sampled H_κ vectors,
 * plus the defining property ⟨P_ι^κ x, y⟩ = ⟨x, y⟩ against H_ι samples. */
inline Report check_intertwining(const GnsModel &model, size_t iota, size_t kappa,
                                 std::int64_t n_lo, std::int64_t n_hi,
                                 const std::vector<FinVector> &kappa_samples,
                                 const std::vector<FinVector> &iota_samples)
{
	Report rep;
	rep.task = "gns-intertwining";
	bool define_ok = true, twine_ok = true, contract_ok = true;
	for (const FinVector &x : kappa_samples)
	{
		FinVector px = model.conditional_expectation(iota, kappa, x);

		for (const FinVector &y : iota_samples)
		{
			if (define_ok && inner(px, y) != inner(x, y))
			{
				rep.check("defining property: <P x, y> = <x, y> for y in H_iota", false,
				          "x = " + to_string(to_element(x)) + ", y = " + to_string(to_element(y)));
				define_ok = false;
			}
		}

		// contraction in the exact ordered sense
		Rational nx = inner(x, x).re, npx = inner(px, px).re;
		if (contract_ok && npx > nx)
		{
			rep.check("contraction: <P x, P x> <= <x, x>", false,
			          "x = " + to_string(to_element(x)));
			contract_ok = false;
		}

		for (std::int64_t n = n_lo; n <= n_hi && twine_ok; ++n)
		{
			FinVector lhs = model.conditional_expectation(iota, kappa, model.unitary(n, x));
			FinVector rhs = model.unitary(n, px);
			if (lhs != rhs)
			{
				rep.check("intertwining: P U^n = U^n P", false,
				          "x = " + to_string(to_element(x)) + ", n = " + std::to_string(n));
				twine_ok = false;
			}
		}
	}
	if (define_ok)
		rep.check("defining property: <P x, y> = <x, y> on all samples", true);
	if (contract_ok)
		rep.check("contraction: <P x, P x> <= <x, x> on all samples", true);
	if (twine_ok)
		rep.check("intertwining: P U^n = U^n P on all samples", true);
	return rep;
}

} // namespace freejoin
