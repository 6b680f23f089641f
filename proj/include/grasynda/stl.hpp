#pragma once

#include "grasynda/series.hpp"

#include <span>
#include <vector>

namespace grasynda {

// Window lengths of 0 mean "derive from the period": the trend window becomes
// the smallest odd integer >= 1.5*period / (1 - 1.5/seasonal_window) and the
// low-pass window the smallest odd integer >= period.
struct StlParams {
	int seasonal_window = 7;
	int trend_window = 0;
	int lowpass_window = 0;
	int seasonal_degree = 1;
	int trend_degree = 1;
	int lowpass_degree = 1;
	int inner_iterations = 2;
	int outer_iterations = 1;
};

struct StlDecomposition {
	std::vector<double> trend;
	std::vector<double> seasonal;
	std::vector<double> remainder;
	int period = 0;

	std::size_t size() const noexcept {
		return trend.size();
	}
};

// Additive Seasonal-Trend decomposition by LOESS. Requires period >= 2 and
// at least two full cycles. After the LOESS passes the seasonal component is
// shifted so every full cycle (counted from the first observation) has zero
// mean; the shift moves into the trend, so trend + seasonal is unchanged.
StlDecomposition stl_decompose(std::span<const double> values, int period, const StlParams &params = {});
StlDecomposition stl_decompose(const TimeSeries &series, const StlParams &params = {});

// trend + seasonal + new_remainder.
std::vector<double> recombine(const StlDecomposition &decomposition, std::span<const double> new_remainder);

// True when the series is long enough and the period large enough for STL.
bool stl_applicable(std::size_t length, int period);

int next_odd(double x);

} // namespace grasynda
