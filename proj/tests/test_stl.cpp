#include "grasynda/error.hpp"
#include "grasynda/stl.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace grasynda;

namespace {

double rms(std::span<const double> v, std::size_t from = 0, std::size_t to = 0) {
	to = to == 0 ? v.size() : to;
	double s = 0;
	for (std::size_t i = from; i < to; ++i) {
		s += v[i] * v[i];
	}
	return std::sqrt(s / static_cast<double>(to - from));
}

} // namespace

TEST_CASE("pure linear trend has no seasonal part") {
	std::vector<double> y(24);
	for (std::size_t t = 0; t < y.size(); ++t) {
		y[t] = static_cast<double>(t);
	}
	const auto d = stl_decompose(y, 4);
	const double range = 23.0;
	for (std::size_t t = 0; t < y.size(); ++t) {
		CHECK(std::abs(d.seasonal[t]) < 1e-6 * range);
		CHECK(std::abs(d.remainder[t]) < 1e-6 * range);
	}
}

TEST_CASE("sinusoid plus trend is recovered") {
	std::vector<double> y(120);
	for (std::size_t t = 0; t < y.size(); ++t) {
		y[t] = 10.0 * std::sin(2 * std::numbers::pi * static_cast<double>(t) / 12.0) + 0.5 * static_cast<double>(t);
	}
	const auto d = stl_decompose(y, 12);
	CHECK(rms(d.remainder) < 0.05 * rms(y));
}

TEST_CASE("strictly periodic signal: seasonal extraction is idempotent") {
	const std::vector<double> pattern{3, -1, 4, 1, -5, 9, -2, 6, -5, 3, -5, -8};
	std::vector<double> y;
	for (int c = 0; c < 8; ++c) {
		y.insert(y.end(), pattern.begin(), pattern.end());
	}
	const auto d = stl_decompose(y, 12);
	std::vector<double> err(y.size());
	for (std::size_t t = 0; t < y.size(); ++t) {
		err[t] = d.seasonal[t] - y[t];
	}
	CHECK(rms(err, 12, y.size() - 12) <= 0.02 * rms(y, 12, y.size() - 12));
}

TEST_CASE("reconstruction identity on random series") {
	Rng rng(21);
	for (int trial = 0; trial < 200; ++trial) {
		const int period = 2 + static_cast<int>(rng.index(12));
		const std::size_t n = static_cast<std::size_t>(period) * (2 + rng.index(19));
		const auto y = trial % 2 ? testing::random_walk(rng, n) : testing::seasonal_ar1(rng, n, period);
		const auto d = stl_decompose(y, period);
		REQUIRE(d.size() == n);
		for (std::size_t t = 0; t < n; ++t) {
			REQUIRE(std::abs(d.trend[t] + d.seasonal[t] + d.remainder[t] - y[t]) <= 1e-9);
		}
		const auto back = recombine(d, d.remainder);
		for (std::size_t t = 0; t < n; ++t) {
			REQUIRE(std::abs(back[t] - y[t]) <= 1e-9);
		}
	}
}

TEST_CASE("seasonal cycles have zero mean") {
	Rng rng(22);
	const auto y = testing::seasonal_ar1(rng, 100, 12);
	const auto d = stl_decompose(y, 12);
	for (std::size_t c = 0; c + 12 <= y.size(); c += 12) {
		double s = 0;
		for (std::size_t t = c; t < c + 12; ++t) {
			s += d.seasonal[t];
		}
		CHECK(std::abs(s) < 1e-9);
	}
}

TEST_CASE("recombine") {
	Rng rng(23);
	const auto y = testing::seasonal_ar1(rng, 48, 4);
	const auto d = stl_decompose(TimeSeries("a", 4, y));
	const auto base = recombine(d, std::vector<double>(48, 0.0));
	for (std::size_t t = 0; t < 48; ++t) {
		CHECK(base[t] == doctest::Approx(d.trend[t] + d.seasonal[t]));
	}
	CHECK_THROWS_AS(recombine(d, std::vector<double>(47, 0.0)), UsageError);
}

TEST_CASE("preconditions") {
	CHECK_THROWS_AS(stl_decompose(std::vector<double>(20, 1.0), 1), UsageError);
	CHECK_THROWS_AS(stl_decompose(std::vector<double>(23, 1.0), 12), DataError);
	CHECK(stl_applicable(24, 12));
	CHECK_FALSE(stl_applicable(23, 12));
	CHECK_FALSE(stl_applicable(100, 1));
	CHECK(next_odd(7.0) == 7);
	CHECK(next_odd(7.2) == 9);
	CHECK(next_odd(8.0) == 9);
	// Default trend window for monthly data: 1.5*12/(1-1.5/7) = 22.9 -> 23.
	CHECK(next_odd(1.5 * 12 / (1 - 1.5 / 7)) == 23);
}

TEST_CASE("constant and robust configurations stay finite") {
	const auto d = stl_decompose(std::vector<double>(36, 5.0), 12);
	for (std::size_t t = 0; t < 36; ++t) {
		CHECK(d.trend[t] == doctest::Approx(5.0));
		CHECK(std::abs(d.seasonal[t]) < 1e-9);
	}
	Rng rng(24);
	auto y = testing::seasonal_ar1(rng, 72, 12);
	y[30] += 1000.0;
	StlParams robust;
	robust.outer_iterations = 5;
	const auto r = stl_decompose(y, 12, robust);
	for (std::size_t t = 0; t < y.size(); ++t) {
		REQUIRE(std::isfinite(r.trend[t]));
		REQUIRE(std::abs(r.trend[t] + r.seasonal[t] + r.remainder[t] - y[t]) <= 1e-9);
	}
	// The outlier is absorbed by the remainder, not the trend.
	CHECK(r.remainder[30] > 500.0);
}
