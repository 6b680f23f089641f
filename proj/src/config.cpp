#include "grasynda/config.hpp"

#include "grasynda/error.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

namespace grasynda {

namespace {

std::string_view trim(std::string_view s) {
	while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
		s.remove_prefix(1);
	}
	while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
		s.remove_suffix(1);
	}
	return s;
}

template <typename T>
std::optional<T> parse_number(std::string_view key, const std::string &text) {
	T value{};
	const auto *end = text.data() + text.size();
	auto [ptr, ec] = std::from_chars(text.data(), end, value);
	if (ec != std::errc() || ptr != end || text.empty()) {
		throw UsageError("config key '" + std::string(key) + "': invalid number '" + text + "'");
	}
	return value;
}

} // namespace

Config Config::parse(std::istream &in, const std::string &source_name) {
	Config config;
	std::string line;
	std::size_t line_no = 0;
	while (std::getline(in, line)) {
		++line_no;
		std::string_view view(line);
		if (auto hash = view.find('#'); hash != std::string_view::npos) {
			view = view.substr(0, hash);
		}
		view = trim(view);
		if (view.empty()) {
			continue;
		}
		const auto eq = view.find('=');
		if (eq == std::string_view::npos) {
			throw UsageError(source_name + ":" + std::to_string(line_no) + ": expected key = value");
		}
		auto key = trim(view.substr(0, eq));
		if (key.empty()) {
			throw UsageError(source_name + ":" + std::to_string(line_no) + ": empty key");
		}
		config.set(std::string(key), std::string(trim(view.substr(eq + 1))));
	}
	return config;
}

Config Config::load(const std::filesystem::path &path) {
	std::ifstream in(path);
	if (!in) {
		throw UsageError("cannot open config '" + path.string() + "'");
	}
	return parse(in, path.string());
}

Config Config::parse_inline(std::string_view pairs) {
	Config config;
	while (!pairs.empty()) {
		const auto sep = pairs.find_first_of(",;");
		auto item = trim(pairs.substr(0, sep));
		pairs = sep == std::string_view::npos ? std::string_view{} : pairs.substr(sep + 1);
		if (item.empty()) {
			continue;
		}
		const auto eq = item.find('=');
		if (eq == std::string_view::npos) {
			throw UsageError("parameter '" + std::string(item) + "' is not key=value");
		}
		config.set(std::string(trim(item.substr(0, eq))), std::string(trim(item.substr(eq + 1))));
	}
	return config;
}

void Config::set(std::string key, std::string value) {
	entries_.insert_or_assign(std::move(key), std::move(value));
}

bool Config::contains(std::string_view key) const {
	return entries_.find(key) != entries_.end();
}

std::optional<std::string> Config::get(std::string_view key) const {
	auto it = entries_.find(key);
	if (it == entries_.end()) {
		return std::nullopt;
	}
	return it->second;
}

std::optional<std::int64_t> Config::get_int(std::string_view key) const {
	auto text = get(key);
	return text ? parse_number<std::int64_t>(key, *text) : std::nullopt;
}

std::optional<std::uint64_t> Config::get_uint64(std::string_view key) const {
	auto text = get(key);
	return text ? parse_number<std::uint64_t>(key, *text) : std::nullopt;
}

std::optional<double> Config::get_double(std::string_view key) const {
	auto text = get(key);
	return text ? parse_number<double>(key, *text) : std::nullopt;
}

std::optional<bool> Config::get_bool(std::string_view key) const {
	auto text = get(key);
	if (!text) {
		return std::nullopt;
	}
	if (*text == "true" || *text == "1" || *text == "yes" || *text == "on") {
		return true;
	}
	if (*text == "false" || *text == "0" || *text == "no" || *text == "off") {
		return false;
	}
	throw UsageError("config key '" + std::string(key) + "': invalid boolean '" + *text + "'");
}

void Config::merge(const Config &other) {
	for (const auto &[k, v] : other.entries_) {
		entries_.insert_or_assign(k, v);
	}
}

Config Config::subset(std::string_view prefix) const {
	Config out;
	for (const auto &[k, v] : entries_) {
		if (k.size() > prefix.size() && std::string_view(k).substr(0, prefix.size()) == prefix) {
			out.set(k.substr(prefix.size()), v);
		}
	}
	return out;
}

void Config::write(std::ostream &out) const {
	for (const auto &[k, v] : entries_) {
		out << k << " = " << v << '\n';
	}
}

} // namespace grasynda
