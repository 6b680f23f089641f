#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace grasynda {

// One univariate series. Immutable after construction; the constructor
// rejects empty or non-finite data.
//
// `stamps` carries the opaque `ds` tokens of the source file. They are only
// used to preserve ordering labels on output; when empty, 1-based positions
// are written instead.
class TimeSeries {
public:
	TimeSeries(std::string id, int period, std::vector<double> values, std::vector<std::string> stamps = {});

	const std::string &id() const noexcept {
		return id_;
	}
	int period() const noexcept {
		return period_;
	}
	std::span<const double> values() const noexcept {
		return values_;
	}
	const std::vector<std::string> &stamps() const noexcept {
		return stamps_;
	}
	std::size_t size() const noexcept {
		return values_.size();
	}

	// Same id and period, new values. Stamps are kept when the length matches.
	TimeSeries with_values(std::vector<double> values) const;
	TimeSeries with_id(std::string id) const;

private:
	std::string id_;
	int period_;
	std::vector<double> values_;
	std::vector<std::string> stamps_;
};

struct CollectionMetadata {
	std::string name;
	int period = 1;
	int horizon = 1;
	int input_window = 1;
};

// Seasonal period, horizon and input window for the benchmark families
// (monthly: 12/12/24, quarterly: 4/8/8). Matches names such as "M3-M",
// "m1-q", "tourism-monthly" or "quarterly" case-insensitively.
std::optional<CollectionMetadata> metadata_preset(std::string_view name);

class SeriesCollection {
public:
	SeriesCollection(CollectionMetadata metadata, std::vector<TimeSeries> series);

	const CollectionMetadata &metadata() const noexcept {
		return metadata_;
	}
	const std::string &name() const noexcept {
		return metadata_.name;
	}
	int horizon() const noexcept {
		return metadata_.horizon;
	}
	int input_window() const noexcept {
		return metadata_.input_window;
	}
	int period() const noexcept {
		return metadata_.period;
	}
	const std::vector<TimeSeries> &series() const noexcept {
		return series_;
	}
	std::size_t size() const noexcept {
		return series_.size();
	}
	const TimeSeries &operator[](std::size_t i) const {
		return series_[i];
	}
	std::size_t total_observations() const noexcept;

private:
	CollectionMetadata metadata_;
	std::vector<TimeSeries> series_;
};

struct TrainTestSplit {
	TimeSeries train;
	std::vector<double> test;
};

// Reads a long-format `unique_id,ds,y` CSV. Rows of one id keep file order;
// ids keep first-appearance order. Errors carry the 1-based line number.
SeriesCollection load_collection(const std::filesystem::path &path, const CollectionMetadata &metadata);
SeriesCollection read_collection(std::istream &in, const CollectionMetadata &metadata,
                                 const std::string &source_name = "<stream>");

// Values are written in shortest round-trip form, so reloading is lossless.
void write_collection(std::ostream &out, const SeriesCollection &collection);
void save_collection(const std::filesystem::path &path, const SeriesCollection &collection);

TrainTestSplit split(const TimeSeries &series, int horizon);

// `<source_id>#syn<replica>`, replica counted from 1.
std::string synthetic_id(std::string_view source_id, std::size_t replica);

// Originals first, then synthetics, in the given order.
SeriesCollection build_augmented_set(const SeriesCollection &original, std::span<const TimeSeries> synthetic);

// Formats a double in shortest round-trip notation.
std::string format_double(double value);

} // namespace grasynda
