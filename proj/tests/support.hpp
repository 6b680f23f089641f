#pragma once

#include "grasynda/random.hpp"
#include "grasynda/series.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace testing {

inline std::vector<double> random_walk(grasynda::Rng &rng, std::size_t n, double start = 100.0) {
	std::vector<double> v(n);
	double x = start;
	for (auto &e : v) {
		x += rng.normal();
		e = x;
	}
	return v;
}

// Seasonal level plus an AR(1) remainder.
inline std::vector<double> seasonal_ar1(grasynda::Rng &rng, std::size_t n, int period, double amplitude = 10.0,
                                        double phi = 0.6, double level = 100.0) {
	std::vector<double> v(n);
	double e = 0.0;
	const double phase = rng.uniform() * 2.0 * std::numbers::pi;
	for (std::size_t t = 0; t < n; ++t) {
		e = phi * e + rng.normal();
		v[t] = level + amplitude * std::sin(2.0 * std::numbers::pi * static_cast<double>(t) / period + phase) + e;
	}
	return v;
}

inline grasynda::SeriesCollection make_collection(std::vector<std::vector<double>> values, int period = 12,
                                                  int horizon = 12, int window = 24, std::string name = "test") {
	std::vector<grasynda::TimeSeries> series;
	for (std::size_t i = 0; i < values.size(); ++i) {
		series.emplace_back("s" + std::to_string(i), period, std::move(values[i]));
	}
	return grasynda::SeriesCollection({std::move(name), period, horizon, window}, std::move(series));
}

// Fresh, empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string &name) {
	auto dir = std::filesystem::temp_directory_path() / ("grasynda_test_" + name);
	std::filesystem::remove_all(dir);
	std::filesystem::create_directories(dir);
	return dir;
}

inline std::string read_file(const std::filesystem::path &path) {
	std::ifstream in(path, std::ios::binary);
	std::ostringstream os;
	os << in.rdbuf();
	return os.str();
}

inline void write_file(const std::filesystem::path &path, const std::string &text) {
	std::ofstream out(path, std::ios::binary);
	out << text;
}

} // namespace testing

#include "grasynda/quantile_graph.hpp"

namespace testing {

// Graph whose transition counts equal `counts` (row-major k x k). Each
// state's in-degree must equal its out-degree and the multigraph must be
// connected, so an Eulerian circuit through all transitions exists
// (Hierholzer); tallying that circuit reproduces the counts exactly. Every
// member of state j is the value j.
inline grasynda::QuantileGraph graph_from_counts(const std::vector<std::vector<std::size_t>> &counts) {
	const std::size_t k = counts.size();
	auto remaining = counts;
	std::vector<std::size_t> stack{0};
	std::vector<std::size_t> circuit;
	while (!stack.empty()) {
		const std::size_t v = stack.back();
		std::size_t next = k;
		for (std::size_t j = 0; j < k; ++j) {
			if (remaining[v][j] > 0) {
				next = j;
				break;
			}
		}
		if (next == k) {
			circuit.push_back(v);
			stack.pop_back();
		} else {
			--remaining[v][next];
			stack.push_back(next);
		}
	}
	std::reverse(circuit.begin(), circuit.end());
	grasynda::DiscreteSeries d{circuit, k};
	std::vector<double> boundaries;
	std::vector<std::vector<double>> members(k);
	for (std::size_t j = 1; j < k; ++j) {
		boundaries.push_back(static_cast<double>(j) - 0.5);
	}
	for (std::size_t s : circuit) {
		members[s].push_back(static_cast<double>(s));
	}
	return grasynda::build_graph(d, grasynda::QuantileBins(boundaries, members));
}

} // namespace testing
