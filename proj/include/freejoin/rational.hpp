#pragma once

#include "freejoin/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace freejoin {

using Rational = boost::multiprecision::cpp_rational;

/** Exact complex number with rational real and imaginary parts.
 *
 * This is the scalar field for every state value in the library; there is
 * no floating point anywhere, so all comparisons are equality checks.
 */
struct ComplexRational
{
	Rational re = 0;
	Rational im = 0;

	ComplexRational() = default;
	ComplexRational(int v) : re(v) {}
	ComplexRational(Rational r) : re(std::move(r)) {}
	ComplexRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

	bool is_zero() const { return re == 0 && im == 0; }
	bool is_real() const { return im == 0; }

	friend bool operator==(const ComplexRational &, const ComplexRational &) = default;

	ComplexRational &operator+=(const ComplexRational &o)
	{
		re += o.re;
		im += o.im;
		return *this;
	}
	ComplexRational &operator-=(const ComplexRational &o)
	{
		re -= o.re;
		im -= o.im;
		return *this;
	}
	ComplexRational &operator*=(const ComplexRational &o)
	{
		Rational r = re * o.re - im * o.im;
		Rational i = re * o.im + im * o.re;
		re = std::move(r);
		im = std::move(i);
		return *this;
	}

	friend ComplexRational operator+(ComplexRational a, const ComplexRational &b) { return a += b; }
	friend ComplexRational operator-(ComplexRational a, const ComplexRational &b) { return a -= b; }
	friend ComplexRational operator*(ComplexRational a, const ComplexRational &b) { return a *= b; }
	friend ComplexRational operator-(const ComplexRational &a) { return {-a.re, -a.im}; }
};

inline ComplexRational conj(const ComplexRational &c) { return {c.re, -c.im}; }

// |c|^2, always a nonnegative rational
inline Rational norm_sq(const ComplexRational &c) { return c.re * c.re + c.im * c.im; }

inline ComplexRational operator/(const ComplexRational &a, const Rational &d)
{
	return {a.re / d, a.im / d};
}

/// canonical lowest-terms form: "p/q", or just "p" when q = 1
inline std::string to_string(const Rational &r)
{
	return r.str();
}

/// "p/q", "r/s i" or "p/q+r/s i" (minus signs live in the numerators)
inline std::string to_string(const ComplexRational &c)
{
	if (c.im == 0)
		return to_string(c.re);
	if (c.re == 0)
		return to_string(c.im) + " i";
	std::string s = to_string(c.re);
	if (c.im > 0)
		s += "+";
	return s + to_string(c.im) + " i";
}

inline Rational parse_rational(std::string_view text)
{
	if (text.empty())
		throw ParseError("empty rational literal");
	for (size_t i = 0; i < text.size(); ++i)
	{
		char ch = text[i];
		bool ok = (ch >= '0' && ch <= '9') || ch == '/' || (ch == '-' && i == 0);
		if (!ok)
			throw ParseError("bad rational literal '" + std::string(text) + "'");
	}
	try
	{
		return Rational(std::string(text));
	}
	catch (const std::exception &)
	{
		throw ParseError("bad rational literal '" + std::string(text) + "'");
	}
}

/** Parses a complex-rational coefficient token, e.g. "2", "-1/2", "1/2+1/3"
 * (the latter only arises with `imaginary = true`, i.e. followed by an "i"
 * token: "1/2+1/3 i"; a lone rational with `imaginary` is purely imaginary).
 */
inline ComplexRational parse_complex(std::string_view token, bool imaginary)
{
	if (!imaginary)
		return {parse_rational(token)};
	// split "a+b" / "a-b" at the first sign past position 0
	for (size_t i = 1; i < token.size(); ++i)
	{
		if (token[i] == '+' || token[i] == '-')
		{
			Rational re = parse_rational(token.substr(0, i));
			std::string_view rest = token.substr(token[i] == '+' ? i + 1 : i);
			return {std::move(re), parse_rational(rest)};
		}
	}
	return {Rational(0), parse_rational(token)};
}

} // namespace freejoin
