#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace grasynda {

// Flat key-value configuration. One `key = value` per line; `#` starts a
// comment. Keys are kept sorted so dumps are deterministic.
class Config {
public:
	static Config parse(std::istream &in, const std::string &source_name = "<config>");
	static Config load(const std::filesystem::path &path);
	// Comma- or semicolon-separated `key=value` pairs, as accepted on the CLI.
	static Config parse_inline(std::string_view pairs);

	void set(std::string key, std::string value);
	bool contains(std::string_view key) const;
	std::optional<std::string> get(std::string_view key) const;

	std::optional<std::int64_t> get_int(std::string_view key) const;
	std::optional<std::uint64_t> get_uint64(std::string_view key) const;
	std::optional<double> get_double(std::string_view key) const;
	std::optional<bool> get_bool(std::string_view key) const;

	// Entries of `other` override entries here.
	void merge(const Config &other);
	// Keys starting with `prefix`, with the prefix stripped.
	Config subset(std::string_view prefix) const;

	const std::map<std::string, std::string, std::less<>> &entries() const noexcept {
		return entries_;
	}

	void write(std::ostream &out) const;

private:
	std::map<std::string, std::string, std::less<>> entries_;
};

} // namespace grasynda
