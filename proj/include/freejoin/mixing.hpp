#pragma once

#include "freejoin/gns.hpp"

#include <numeric>

namespace freejoin {

/** A group system is ergodic iff every nontrivial word has an infinite
 * T-orbit, i.e. every alphabet symbol is shifted. Equivalent to strong
 * mixing for group systems. The empty alphabet (Γ = {1}) is vacuously
 * ergodic. */
inline bool is_ergodic(const GroupSystem &sys)
{
	return sys.dynamics.shifts_only();
}

inline bool is_strongly_mixing(const GroupSystem &sys)
{
	return is_ergodic(sys);
}

/** The solution set {n ∈ ℤ : T^n h = w}: empty, one point, a full
 * arithmetic progression, or all of ℤ. Exactly computable because shift
 * letters pin n to at most one value and finite letters to a residue
 * class. */
struct TranslationSet
{
	enum class Kind
	{
		none,
		single,     // exactly base
		arithmetic, // base + period·ℤ, period ≥ 1
		all,
	};

	Kind kind = Kind::none;
	std::int64_t base = 0;
	std::int64_t period = 0;

	static TranslationSet make_none() { return {}; }
	static TranslationSet make_single(std::int64_t n) { return {Kind::single, n, 0}; }
	static TranslationSet make_arithmetic(std::int64_t r, std::int64_t p)
	{
		r = ((r % p) + p) % p;
		if (p == 1)
			return {Kind::all, 0, 0};
		return {Kind::arithmetic, r, p};
	}
	static TranslationSet make_all() { return {Kind::all, 0, 0}; }

	bool contains(std::int64_t n) const
	{
		switch (kind)
		{
		case Kind::none:
			return false;
		case Kind::single:
			return n == base;
		case Kind::arithmetic:
			return ((n - base) % period + period) % period == 0;
		case Kind::all:
			return true;
		}
		return false;
	}

	bool is_finite() const { return kind == Kind::none || kind == Kind::single; }

	TranslationSet intersect(const TranslationSet &o) const
	{
		if (kind == Kind::none || o.kind == Kind::none)
			return make_none();
		if (kind == Kind::all)
			return o;
		if (o.kind == Kind::all)
			return *this;
		if (kind == Kind::single)
			return o.contains(base) ? *this : make_none();
		if (o.kind == Kind::single)
			return contains(o.base) ? o : make_none();
		// two progressions: chinese remainder
		std::int64_t g = std::gcd(period, o.period);
		std::int64_t diff = o.base - base;
		if (diff % g != 0)
			return make_none();
		std::int64_t p1 = period / g, p2 = o.period / g;
		std::int64_t l = period / g * o.period;
		// solve base + period·x ≡ o.base (mod o.period)
		std::int64_t x = 0, inv = 1;
		{
			// modular inverse of p1 mod p2 by brute force; cycle lengths are tiny
			inv = 0;
			for (std::int64_t c = 0; c < p2; ++c)
				if ((p1 * c) % p2 == ((1 % p2) + p2) % p2 || (p2 == 1))
				{
					inv = c;
					break;
				}
			x = ((diff / g) % p2 * inv) % p2;
		}
		std::int64_t r = base + period * x;
		return make_arithmetic(r, l);
	}
};

/// solutions of T^n h = w
inline TranslationSet solve_translations(const SymbolBijection &t, const Word &h, const Word &w)
{
	if (h.length() != w.length())
		return TranslationSet::make_none();
	TranslationSet s = TranslationSet::make_all();
	for (size_t j = 0; j < h.length(); ++j)
	{
		const Letter &a = h.letters()[j];
		const Letter &b = w.letters()[j];
		if (a.exponent != b.exponent)
			return TranslationSet::make_none();
		if (a.symbol.index.has_value() != b.symbol.index.has_value())
			return TranslationSet::make_none();
		if (a.symbol.index)
		{
			if (a.symbol.base != b.symbol.base)
				return TranslationSet::make_none();
			auto step = t.shift_step(a.symbol.base);
			std::int64_t diff = *b.symbol.index - *a.symbol.index;
			if (!step)
			{
				if (diff != 0)
					return TranslationSet::make_none();
				continue; // fixed family, no constraint
			}
			if (diff % *step != 0)
				return TranslationSet::make_none();
			s = s.intersect(TranslationSet::make_single(diff / *step));
		}
		else
		{
			std::int64_t p = *t.symbol_period(a.symbol);
			std::int64_t k = -1;
			Symbol cur = a.symbol;
			for (std::int64_t c = 0; c < p; ++c)
			{
				if (cur == b.symbol)
				{
					k = c;
					break;
				}
				cur = t.image(cur, 1);
			}
			if (k < 0)
				return TranslationSet::make_none();
			s = s.intersect(TranslationSet::make_arithmetic(k, p));
		}
		if (s.kind == TranslationSet::Kind::none)
			return s;
	}
	return s;
}

/** Bound N with ν(λ(g) λ(T^n h)) = 0 for every |n| ≥ N, or nullopt when no
 * such N exists (the correlation is 1 along a whole residue class). The
 * pair (e, e) is excluded: its correlation is constantly 1. */
inline std::optional<std::int64_t> vanishing_bound(const GroupSystem &sys, const Word &g,
                                                   const Word &h)
{
	if (g.is_identity() && h.is_identity())
		throw Error("vanishing bound of the identity pair (the correlation is constantly 1)");
	TranslationSet s = solve_translations(sys.dynamics, h, invert(g));
	switch (s.kind)
	{
	case TranslationSet::Kind::none:
		return 0;
	case TranslationSet::Kind::single:
		return (s.base < 0 ? -s.base : s.base) + 1;
	default:
		return std::nullopt;
	}
}

/** Decision plus witness: for an ergodic system the mixing flag; for a
 * non-ergodic one a word pair (g, h) and a period p with
 * ν(λ(g) λ(T^n h)) = 1 on n ∈ pℤ, defeating the mixing limit. */
struct StrongMixingCertificate
{
	bool mixing = false;
	std::optional<Word> witness_g, witness_h;
	std::optional<std::int64_t> witness_period;
};

inline StrongMixingCertificate strong_mixing_certificate(const GroupSystem &sys)
{
	if (is_ergodic(sys))
		return {true, {}, {}, {}};
	// pick any finite-orbit symbol
	for (const auto &[family, def] : sys.alphabet().families())
	{
		Symbol s;
		if (!def)
		{
			if (sys.dynamics.shift_step(family))
				continue;
			s = {family, 0};
		}
		else
			s = {def->front(), std::nullopt};
		Word h = Word::generator(s);
		return {false, invert(h), h, *orbit_period(sys.dynamics, h)};
	}
	throw Error("non-ergodic system without a finite-orbit symbol"); // unreachable
}

/** One multi-time correlation function of a system B: k copies, a monomial
 * λ_{ι₁}(g₁)…λ_{ι_m}(g_m), evaluated at n̄ as
 * ν(λ(T^{n_{ι₁}}g₁ … T^{n_{ι_m}}g_m)). */
class CorrelationSpec
{
  public:
	static CorrelationSpec make(GroupSystem base, size_t copies, Monomial monomial)
	{
		if (copies < 1)
			throw Error("need at least one copy");
		CorrelationSpec s;
		for (const auto &[iota, g] : monomial.blocks)
		{
			if (iota < 1 || iota > copies)
				throw Error("monomial block index " + std::to_string(iota) + " outside [1, " +
				            std::to_string(copies) + "]");
			if (!in_alphabet(base.alphabet(), g))
				throw AlphabetMismatch("monomial word '" + to_string(g) +
				                       "' is outside the base alphabet");
		}
		s.ctx_ = FreeProductContext::make(std::vector<GroupSystem>(copies, base));
		s.base_ = std::move(base);
		s.copies_ = copies;
		s.monomial_ = std::move(monomial);
		return s;
	}

	const GroupSystem &base() const { return base_; }
	size_t copies() const { return copies_; }
	const Monomial &monomial() const { return monomial_; }
	const FreeProductContext &context() const { return ctx_; }

	std::vector<FactorMap> identity_maps(std::span<const std::int64_t> offsets = {}) const
	{
		std::vector<FactorMap> maps;
		for (size_t i = 1; i <= copies_; ++i)
			maps.push_back(FactorMap::identity(
			    i, base_, offsets.empty() ? 0 : offsets[i - 1]));
		return maps;
	}

	/// Δ_n̄ as a joining of the k copies
	Joining diagonal_at(std::span<const std::int64_t> nbar) const
	{
		if (nbar.size() != copies_)
			throw Error("offset vector has wrong length");
		return Joining::diagonal(ctx_, base_, identity_maps(nbar));
	}

  private:
	GroupSystem base_;
	size_t copies_ = 1;
	Monomial monomial_;
	FreeProductContext ctx_;
};

/// Δ_n̄ on the monomial, computed directly in the base group
inline ComplexRational correlation_value(const CorrelationSpec &spec,
                                         std::span<const std::int64_t> nbar)
{
	if (nbar.size() != spec.copies())
		throw Error("offset vector has wrong length");
	Word prod;
	for (const auto &[iota, g] : spec.monomial().blocks)
		prod = multiply(prod, apply_power(spec.base().dynamics, nbar[iota - 1], g));
	return prod.is_identity() ? ComplexRational(1) : ComplexRational(0);
}

/** Exact gap threshold N* for pure-shift systems: once n₁ ≥ N* and every
 * successive gap n_{j+1} − n_j ≥ N*, the shifted blocks share no symbols,
 * so Δ_n̄(monomial) equals the free-product value. N* is the conservative
 * bound (max index span across the blocks, scaled by the shift step) + 1;
 * a single-block monomial needs no gap at all. */
inline std::int64_t kmixing_threshold(const CorrelationSpec &spec)
{
	if (!spec.base().dynamics.shifts_only())
		throw Error("gap threshold needs pure-shift dynamics; sample verify instead");
	const Monomial &m = spec.monomial();
	for (const auto &[iota, g] : m.blocks)
		if (g.is_identity())
			throw Error("monomial has an identity block; reduce the monomial first");
	if (!is_alternating(m))
		throw Error("monomial has adjacent equal indices; reduce the monomial first");
	if (m.blocks.size() <= 1)
		return 0;
	std::map<std::string, std::pair<std::int64_t, std::int64_t>> spans;
	for (const auto &[iota, g] : m.blocks)
		for (const auto &l : g.letters())
		{
			auto [it, fresh] = spans.try_emplace(l.symbol.base, *l.symbol.index, *l.symbol.index);
			if (!fresh)
			{
				it->second.first = std::min(it->second.first, *l.symbol.index);
				it->second.second = std::max(it->second.second, *l.symbol.index);
			}
		}
	std::int64_t nstar = 1;
	for (const auto &[family, span] : spans)
	{
		std::int64_t step = *spec.base().dynamics.shift_step(family);
		if (step < 0)
			step = -step;
		nstar = std::max(nstar, (span.second - span.first) / step + 1);
	}
	return nstar;
}

/** Exact k-mixing verification: over a grid of n̄ with successive gaps
 * ≥ the threshold, Δ_n̄(monomial) must equal the free-product value; a
 * small-gap witness where the two differ is reported when the scan finds
 * one (it shows the limit is not trivially constant). */
inline Report verify_kmixing(const CorrelationSpec &spec, std::int64_t threshold,
                             std::int64_t per_axis = 5, std::int64_t scan_radius = 3)
{
	Report rep;
	rep.task = "k-mixing";
	size_t k = spec.copies();
	ComplexRational free_value =
	    free_product_state(spec.context(), flatten(spec.context(), spec.monomial()));
	rep.value("free-product value", to_string(free_value));
	rep.value("threshold", std::to_string(threshold));

	// odometer over (n1, gap_2, ..., gap_k), each axis taking per_axis values
	std::vector<std::int64_t> digit(k, 0);
	bool all_equal = true;
	std::string first_bad;
	for (;;)
	{
		std::vector<std::int64_t> nbar(k);
		nbar[0] = threshold + digit[0];
		for (size_t j = 1; j < k; ++j)
			nbar[j] = nbar[j - 1] + threshold + digit[j];
		ComplexRational v = correlation_value(spec, nbar);
		if (v != free_value && all_equal)
		{
			all_equal = false;
			first_bad = "nbar = (";
			for (size_t j = 0; j < k; ++j)
				first_bad += (j ? "," : "") + std::to_string(nbar[j]);
			first_bad += "): " + to_string(v) + " != " + to_string(free_value);
		}
		size_t j = 0;
		while (j < k && ++digit[j] == per_axis)
			digit[j++] = 0;
		if (j == k)
			break;
	}
	rep.check("correlation equals the free-product value at every sampled gap >= threshold",
	          all_equal, first_bad);

	// hunt for a small-gap disagreement
	std::vector<std::int64_t> nbar(k, -scan_radius);
	bool found = false;
	for (;;)
	{
		if (correlation_value(spec, nbar) != free_value)
		{
			std::string s = "(";
			for (size_t j = 0; j < k; ++j)
				s += (j ? "," : "") + std::to_string(nbar[j]);
			rep.value("small-gap witness", s + ") -> " +
			                                   to_string(correlation_value(spec, nbar)));
			found = true;
			break;
		}
		size_t j = 0;
		while (j < k && ++nbar[j] > scan_radius)
			nbar[j++] = -scan_radius;
		if (j == k)
			break;
	}
	if (!found)
		rep.value("small-gap witness", "none in the scanned region");
	return rep;
}

/** The staggered-box Følner sequence in ℤ^k: coordinate j of Φ_N is the
 * interval {c_j·N + 1, …, c_j·N + N}, so |Φ_N| = N^k and the boxes are
 * Følner: |Φ_N △ (Φ_N + m̄)| / |Φ_N| → 0 for every fixed m̄. */
struct FolnerBoxes
{
	std::vector<std::int64_t> multipliers; // c_j per coordinate

	size_t arity() const { return multipliers.size(); }

	static FolnerBoxes plain(size_t k) { return {std::vector<std::int64_t>(k, 0)}; }

	/// the staggered instance c = (2, 4, …, 2k); its gaps grow with N
	static FolnerBoxes staggered(size_t k)
	{
		FolnerBoxes b;
		for (size_t j = 1; j <= k; ++j)
			b.multipliers.push_back(2 * static_cast<std::int64_t>(j));
		return b;
	}

	template <class F>
	void for_each(std::int64_t N, std::span<const std::int64_t> shift, F &&f) const
	{
		if (N < 1)
			throw Error("box index N must be >= 1");
		size_t k = arity();
		std::vector<std::int64_t> nbar(k);
		std::vector<std::int64_t> lo(k);
		for (size_t j = 0; j < k; ++j)
			lo[j] = multipliers[j] * N + 1 + (shift.empty() ? 0 : shift[j]);
		nbar = lo;
		for (;;)
		{
			f(std::span<const std::int64_t>(nbar));
			size_t j = 0;
			while (j < k && ++nbar[j] == lo[j] + N)
				nbar[j] = lo[j], ++j;
			if (j == k)
				break;
		}
	}

	Rational volume(std::int64_t N) const
	{
		Rational v = 1;
		for (size_t j = 0; j < arity(); ++j)
			v *= N;
		return v;
	}

	/// |Φ_N △ (Φ_N + m̄)| / |Φ_N|, exactly
	Rational overlap_ratio(std::int64_t N, std::span<const std::int64_t> shift) const
	{
		Rational inter = 1;
		for (size_t j = 0; j < arity(); ++j)
		{
			std::int64_t s = shift[j] < 0 ? -shift[j] : shift[j];
			inter *= s >= N ? 0 : N - s;
		}
		return 2 * (volume(N) - inter) / volume(N);
	}
};

/// Δ̄_N(a) = (1/|Φ_N|) Σ_{n̄∈Φ_N} Δ_n̄(a); base offsets in `data` are replaced by n̄
inline ComplexRational folner_average(const FreeProductContext &ctx, const DiagonalData &data,
                                      const AlgebraElement &a, const FolnerBoxes &boxes,
                                      std::int64_t N)
{
	if (boxes.arity() != ctx.arity())
		throw Error("box arity differs from the context arity");
	ComplexRational sum;
	boxes.for_each(N, {}, [&](std::span<const std::int64_t> nbar) {
		DiagonalData d = with_offsets(data, nbar);
		for (const auto &[w, c] : a.terms)
			if (diagonal_word_image(ctx, d, w).is_identity())
				sum += c;
	});
	return sum / boxes.volume(N);
}

/// box average of the correlation function itself
inline ComplexRational folner_average(const CorrelationSpec &spec, const FolnerBoxes &boxes,
                                      std::int64_t N)
{
	ComplexRational sum;
	boxes.for_each(N, {}, [&](std::span<const std::int64_t> nbar) {
		sum += correlation_value(spec, nbar);
	});
	return sum / boxes.volume(N);
}

/** Δ̄_N as a first-class joining evaluator (a convex combination of the
 * diagonal joinings over the box, so every axiom survives the average). */
inline Joining folner_joining(FreeProductContext ctx, DiagonalData data, FolnerBoxes boxes,
                              std::int64_t N)
{
	if (boxes.arity() != ctx.arity())
		throw Error("box arity differs from the context arity");
	// validate once; per-point offsets do not affect validity
	for (const auto &fm : data.maps)
		detail::validate_factor_map(ctx, data.target, fm);
	auto ctx_p = std::make_shared<FreeProductContext>(std::move(ctx));
	auto data_p = std::make_shared<DiagonalData>(std::move(data));
	auto boxes_p = std::make_shared<FolnerBoxes>(std::move(boxes));
	auto eval = [ctx_p, data_p, boxes_p, N](const AlgebraElement &a) {
		return folner_average(*ctx_p, *data_p, a, *boxes_p, N);
	};
	return Joining::custom(Joining::Kind::averaged, "unital (box average of diagonals)",
	                       *ctx_p, std::move(eval));
}

/** lim_N Δ̄_N(a) by stabilization: the common value of the last `window`
 * box averages up to N_max, or nullopt when they still move. */
inline std::optional<ComplexRational> asymptotic_state_value(const FreeProductContext &ctx,
                                                             const DiagonalData &data,
                                                             const AlgebraElement &a,
                                                             const FolnerBoxes &boxes,
                                                             std::int64_t N_max, std::int64_t window)
{
	if (window < 2 || N_max < window)
		throw Error("need N_max >= window >= 2");
	std::vector<ComplexRational> tail;
	for (std::int64_t N = N_max - window + 1; N <= N_max; ++N)
		tail.push_back(folner_average(ctx, data, a, boxes, N));
	for (const auto &v : tail)
		if (v != tail.front())
			return std::nullopt;
	return tail.front();
}

/** Checks the exact translated-box identity behind Theorem-4.2 style
 * invariance: Δ̄_N(τ_m̄(a)) = (1/|Φ_N|) Σ_{n̄ ∈ Φ_N+m̄} Δ_n̄(a), where τ_m̄
 * moves factor ι by T_ι^{m_ι}. Also reports the symmetric-difference
 * ratio, so the Følner decay is observable. */
inline Report verify_shifted_invariance(const FreeProductContext &ctx, const DiagonalData &data,
                                        const AlgebraElement &a, const FolnerBoxes &boxes,
                                        std::int64_t N, std::span<const std::int64_t> mbar)
{
	if (mbar.size() != ctx.arity())
		throw Error("shift vector has wrong length");
	Report rep;
	rep.task = "shifted-invariance";

	AlgebraElement moved = apply_factor_powers(ctx, mbar, a);
	ComplexRational lhs = folner_average(ctx, data, moved, boxes, N);

	ComplexRational sum;
	boxes.for_each(N, mbar, [&](std::span<const std::int64_t> nbar) {
		DiagonalData d = with_offsets(data, nbar);
		for (const auto &[w, c] : a.terms)
			if (diagonal_word_image(ctx, d, w).is_identity())
				sum += c;
	});
	ComplexRational rhs = sum / boxes.volume(N);

	rep.check("box identity: average of tau(a) equals the translated-box average", lhs == rhs,
	          to_string(lhs) + " != " + to_string(rhs));
	rep.value("average", to_string(lhs));
	rep.value("symmetric-difference ratio", to_string(boxes.overlap_ratio(N, mbar)));
	return rep;
}

} // namespace freejoin
