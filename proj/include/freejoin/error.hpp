#pragma once

#include <stdexcept>
#include <string>

namespace freejoin {

struct Error : std::runtime_error
{
	using std::runtime_error::runtime_error;
};

// malformed word / element / config text
struct ParseError : Error
{
	using Error::Error;
};

// symbol or word used outside the alphabet it was declared over
struct AlphabetMismatch : Error
{
	using Error::Error;
};

// factor map does not commute with the dynamics
struct IntertwiningError : Error
{
	using Error::Error;
};

// vector not supported in the requested GNS subspace
struct SupportError : Error
{
	using Error::Error;
};

struct ConfigError : Error
{
	using Error::Error;
};

} // namespace freejoin
