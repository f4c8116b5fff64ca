#pragma once

#include <string>
#include <vector>

namespace freejoin {

/** Verification outcome: a list of checked identities with witnesses for
 * the failures. Verifiers report, they do not throw. */
struct Report
{
	struct Entry
	{
		std::string check;
		bool pass = true;
		std::string witness; // empty when the check passed
	};

	std::string task;
	std::vector<Entry> entries;
	std::vector<std::pair<std::string, std::string>> values; // named exact values

	bool passed() const
	{
		for (const auto &e : entries)
			if (!e.pass)
				return false;
		return true;
	}

	void check(std::string name, bool ok, std::string witness = {})
	{
		entries.push_back({std::move(name), ok, ok ? std::string{} : std::move(witness)});
	}

	void value(std::string name, std::string v)
	{
		values.emplace_back(std::move(name), std::move(v));
	}

	std::vector<std::string> witnesses() const
	{
		std::vector<std::string> w;
		for (const auto &e : entries)
			if (!e.pass)
				w.push_back(e.check + ": " + e.witness);
		return w;
	}
};

} // namespace freejoin
