#include "grasynda/series.hpp"

#include "grasynda/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace grasynda {

TimeSeries::TimeSeries(std::string id, int period, std::vector<double> values, std::vector<std::string> stamps)
    : id_(std::move(id)), period_(period), values_(std::move(values)), stamps_(std::move(stamps)) {
	if (period_ < 1) {
		throw UsageError("series '" + id_ + "': period must be >= 1");
	}
	if (values_.empty()) {
		throw DataError("series '" + id_ + "' is empty");
	}
	for (std::size_t t = 0; t < values_.size(); ++t) {
		if (!std::isfinite(values_[t])) {
			throw DataError("series '" + id_ + "' has a non-finite value at position " + std::to_string(t + 1));
		}
	}
	if (!stamps_.empty() && stamps_.size() != values_.size()) {
		throw InternalError("series '" + id_ + "': stamp count does not match value count");
	}
}

TimeSeries TimeSeries::with_values(std::vector<double> values) const {
	auto stamps = values.size() == values_.size() ? stamps_ : std::vector<std::string>{};
	return TimeSeries(id_, period_, std::move(values), std::move(stamps));
}

TimeSeries TimeSeries::with_id(std::string id) const {
	return TimeSeries(std::move(id), period_, values_, stamps_);
}

namespace {

std::string lowercase(std::string_view s) {
	std::string out(s);
	std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
	return out;
}

bool ends_with(std::string_view s, std::string_view suffix) {
	return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

} // namespace

std::optional<CollectionMetadata> metadata_preset(std::string_view name) {
	const auto key = lowercase(name);
	const bool monthly = key == "monthly" || ends_with(key, "-m") || ends_with(key, "_m") || ends_with(key, "monthly");
	const bool quarterly =
	    key == "quarterly" || ends_with(key, "-q") || ends_with(key, "_q") || ends_with(key, "quarterly");
	if (monthly) {
		return CollectionMetadata{std::string(name), 12, 12, 24};
	}
	if (quarterly) {
		return CollectionMetadata{std::string(name), 4, 8, 8};
	}
	return std::nullopt;
}

SeriesCollection::SeriesCollection(CollectionMetadata metadata, std::vector<TimeSeries> series)
    : metadata_(std::move(metadata)), series_(std::move(series)) {
	if (metadata_.horizon < 1 || metadata_.input_window < 1 || metadata_.period < 1) {
		throw UsageError("collection '" + metadata_.name + "': period, horizon and input window must be >= 1");
	}
	if (series_.empty()) {
		throw DataError("collection '" + metadata_.name + "' has no series");
	}
	std::unordered_set<std::string> seen;
	seen.reserve(series_.size());
	for (const auto &s : series_) {
		if (!seen.insert(s.id()).second) {
			throw DataError("collection '" + metadata_.name + "': duplicate series id '" + s.id() + "'");
		}
	}
}

std::size_t SeriesCollection::total_observations() const noexcept {
	std::size_t n = 0;
	for (const auto &s : series_) {
		n += s.size();
	}
	return n;
}

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

std::string_view unquote(std::string_view s) {
	s = trim(s);
	if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
		s = s.substr(1, s.size() - 2);
	}
	return s;
}

// Splits on commas; quoted fields may contain commas but not escaped quotes.
std::vector<std::string_view> split_fields(std::string_view line) {
	std::vector<std::string_view> fields;
	std::size_t start = 0;
	bool quoted = false;
	for (std::size_t i = 0; i < line.size(); ++i) {
		if (line[i] == '"') {
			quoted = !quoted;
		} else if (line[i] == ',' && !quoted) {
			fields.push_back(unquote(line.substr(start, i - start)));
			start = i + 1;
		}
	}
	fields.push_back(unquote(line.substr(start)));
	return fields;
}

std::optional<double> parse_double(std::string_view s) {
	if (!s.empty() && s.front() == '+') {
		s.remove_prefix(1);
	}
	double value = 0.0;
	const auto *end = s.data() + s.size();
	auto [ptr, ec] = std::from_chars(s.data(), end, value);
	if (ec != std::errc() || ptr != end || s.empty()) {
		return std::nullopt;
	}
	return value;
}

} // namespace

SeriesCollection read_collection(std::istream &in, const CollectionMetadata &metadata, const std::string &source_name) {
	std::string line;
	std::size_t line_no = 0;
	auto where = [&](std::size_t n) { return source_name + ":" + std::to_string(n); };

	std::array<std::size_t, 3> column{};
	bool have_header = false;
	while (std::getline(in, line)) {
		++line_no;
		std::string_view view(line);
		if (line_no == 1 && view.size() >= 3 && view.substr(0, 3) == "\xEF\xBB\xBF") {
			view.remove_prefix(3);
		}
		if (trim(view).empty()) {
			continue;
		}
		const auto fields = split_fields(view);
		constexpr std::array<std::string_view, 3> names{"unique_id", "ds", "y"};
		for (std::size_t c = 0; c < names.size(); ++c) {
			auto it = std::find(fields.begin(), fields.end(), names[c]);
			if (it == fields.end()) {
				throw DataError(where(line_no) + ": header must contain columns unique_id,ds,y");
			}
			column[c] = static_cast<std::size_t>(it - fields.begin());
		}
		have_header = true;
		break;
	}
	if (!have_header) {
		throw DataError(source_name + ": missing header");
	}
	const std::size_t needed = *std::max_element(column.begin(), column.end()) + 1;

	struct Pending {
		std::string id;
		std::vector<double> values;
		std::vector<std::string> stamps;
	};
	std::vector<Pending> pending;
	std::unordered_map<std::string, std::size_t> index;

	while (std::getline(in, line)) {
		++line_no;
		if (trim(line).empty()) {
			continue;
		}
		const auto fields = split_fields(line);
		if (fields.size() < needed) {
			throw DataError(where(line_no) + ": expected at least " + std::to_string(needed) + " fields, got " +
			                std::to_string(fields.size()));
		}
		const std::string id(fields[column[0]]);
		if (id.empty()) {
			throw DataError(where(line_no) + ": empty unique_id");
		}
		const auto value = parse_double(fields[column[2]]);
		if (!value) {
			throw DataError(where(line_no) + ": series '" + id + "' has unparseable y value '" +
			                std::string(fields[column[2]]) + "'");
		}
		if (!std::isfinite(*value)) {
			throw DataError(where(line_no) + ": series '" + id + "' has non-finite y value");
		}
		auto [it, inserted] = index.try_emplace(id, pending.size());
		if (inserted) {
			pending.push_back(Pending{id, {}, {}});
		}
		auto &p = pending[it->second];
		p.values.push_back(*value);
		p.stamps.emplace_back(fields[column[1]]);
	}
	if (pending.empty()) {
		throw DataError(source_name + ": no data rows");
	}

	std::vector<TimeSeries> series;
	series.reserve(pending.size());
	for (auto &p : pending) {
		series.emplace_back(std::move(p.id), metadata.period, std::move(p.values), std::move(p.stamps));
	}
	return SeriesCollection(metadata, std::move(series));
}

SeriesCollection load_collection(const std::filesystem::path &path, const CollectionMetadata &metadata) {
	std::ifstream in(path, std::ios::binary);
	if (!in) {
		throw DataError("cannot open '" + path.string() + "'");
	}
	return read_collection(in, metadata, path.string());
}

std::string format_double(double value) {
	std::array<char, 64> buf{};
	auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
	if (ec != std::errc()) {
		throw InternalError("failed to format number");
	}
	return std::string(buf.data(), ptr);
}

void write_collection(std::ostream &out, const SeriesCollection &collection) {
	out << "unique_id,ds,y\n";
	for (const auto &s : collection.series()) {
		const auto values = s.values();
		const auto &stamps = s.stamps();
		for (std::size_t t = 0; t < values.size(); ++t) {
			out << s.id() << ',';
			if (stamps.empty()) {
				out << (t + 1);
			} else {
				out << stamps[t];
			}
			out << ',' << format_double(values[t]) << '\n';
		}
	}
}

void save_collection(const std::filesystem::path &path, const SeriesCollection &collection) {
	std::ofstream out(path, std::ios::binary | std::ios::trunc);
	if (!out) {
		throw DataError("cannot write '" + path.string() + "'");
	}
	write_collection(out, collection);
	if (!out) {
		throw DataError("write failed for '" + path.string() + "'");
	}
}

TrainTestSplit split(const TimeSeries &series, int horizon) {
	if (horizon < 1) {
		throw UsageError("horizon must be >= 1");
	}
	const auto h = static_cast<std::size_t>(horizon);
	if (series.size() <= h) {
		throw DataError("series '" + series.id() + "' too short for horizon " + std::to_string(horizon) + " (T=" +
		                std::to_string(series.size()) + ")");
	}
	const auto values = series.values();
	const std::size_t cut = values.size() - h;
	std::vector<std::string> stamps;
	if (!series.stamps().empty()) {
		stamps.assign(series.stamps().begin(), series.stamps().begin() + static_cast<std::ptrdiff_t>(cut));
	}
	return TrainTestSplit{
	    TimeSeries(series.id(), series.period(), std::vector<double>(values.begin(), values.begin() + cut),
	               std::move(stamps)),
	    std::vector<double>(values.begin() + cut, values.end()),
	};
}

std::string synthetic_id(std::string_view source_id, std::size_t replica) {
	return std::string(source_id) + "#syn" + std::to_string(replica);
}

SeriesCollection build_augmented_set(const SeriesCollection &original, std::span<const TimeSeries> synthetic) {
	if (synthetic.empty()) {
		return original;
	}
	std::vector<TimeSeries> all(original.series().begin(), original.series().end());
	all.insert(all.end(), synthetic.begin(), synthetic.end());
	// Duplicate ids are rejected by the collection constructor.
	return SeriesCollection(original.metadata(), std::move(all));
}

} // namespace grasynda
