#include "grasynda/baselines.hpp"

#include "grasynda/error.hpp"
#include "grasynda/spline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace grasynda {

namespace {

double mean_of(std::span<const double> v) {
	return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_sd(std::span<const double> v) {
	if (v.size() < 2) {
		return 0.0;
	}
	const double m = mean_of(v);
	double ss = 0.0;
	for (double x : v) {
		ss += (x - m) * (x - m);
	}
	return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

void require_positive(double sigma, const char *what) {
	if (!(sigma > 0.0) || !std::isfinite(sigma)) {
		throw UsageError(std::string(what) + ": sigma must be a positive finite number");
	}
}

std::vector<double> knot_positions(std::size_t length, int knots) {
	std::vector<double> x(static_cast<std::size_t>(knots));
	const double span = static_cast<double>(length - 1);
	for (int i = 0; i < knots; ++i) {
		x[static_cast<std::size_t>(i)] = span * i / (knots - 1);
	}
	return x;
}

void check_warp_args(std::size_t length, double sigma, int knots, const char *what) {
	require_positive(sigma, what);
	if (knots < 2) {
		throw UsageError(std::string(what) + ": knots must be >= 2");
	}
	if (length < 2) {
		throw DataError(std::string(what) + ": series needs at least 2 observations");
	}
}

} // namespace

std::vector<double> jitter(std::span<const double> values, double sigma, Rng &rng) {
	require_positive(sigma, "jitter");
	const double scale = sigma * sample_sd(values);
	std::vector<double> out(values.begin(), values.end());
	if (scale == 0.0) {
		return out;
	}
	for (double &x : out) {
		x += rng.normal(0.0, scale);
	}
	return out;
}

std::vector<double> scaling(std::span<const double> values, double sigma, Rng &rng) {
	require_positive(sigma, "scaling");
	double factor = rng.normal(1.0, sigma);
	while (factor <= 0.0) {
		factor = rng.normal(1.0, sigma);
	}
	std::vector<double> out(values.size());
	std::transform(values.begin(), values.end(), out.begin(), [factor](double x) { return factor * x; });
	return out;
}

std::vector<double> magnitude_warp_curve(std::size_t length, double sigma, int knots, Rng &rng) {
	check_warp_args(length, sigma, knots, "magnitude warp");
	auto x = knot_positions(length, knots);
	std::vector<double> y(x.size());
	for (double &v : y) {
		v = rng.normal(1.0, sigma);
	}
	const CubicSpline spline(std::move(x), std::move(y));
	std::vector<double> curve(length);
	for (std::size_t t = 0; t < length; ++t) {
		curve[t] = spline(static_cast<double>(t));
	}
	return curve;
}

std::vector<double> magnitude_warp(std::span<const double> values, double sigma, int knots, Rng &rng) {
	const auto curve = magnitude_warp_curve(values.size(), sigma, knots, rng);
	std::vector<double> out(values.size());
	for (std::size_t t = 0; t < out.size(); ++t) {
		out[t] = values[t] * curve[t];
	}
	return out;
}

std::vector<double> time_warp_grid(std::size_t length, double sigma, int knots, Rng &rng) {
	constexpr double kMinStep = 1e-3;
	check_warp_args(length, sigma, knots, "time warp");
	auto x = knot_positions(length, knots);
	std::vector<double> y(x.size());
	for (double &v : y) {
		v = rng.normal(1.0, sigma);
	}
	const CubicSpline speed(std::move(x), std::move(y));
	std::vector<double> grid(length, 0.0);
	for (std::size_t t = 1; t < length; ++t) {
		const double step = std::max(kMinStep, speed(static_cast<double>(t) - 0.5));
		grid[t] = grid[t - 1] + step;
	}
	const double end = static_cast<double>(length - 1);
	const double scale = end / grid.back();
	for (std::size_t t = 1; t + 1 < length; ++t) {
		grid[t] *= scale;
	}
	grid.back() = end;
	return grid;
}

std::vector<double> time_warp(std::span<const double> values, double sigma, int knots, Rng &rng) {
	const auto grid = time_warp_grid(values.size(), sigma, knots, rng);
	std::vector<double> out(values.size());
	for (std::size_t t = 0; t < out.size(); ++t) {
		out[t] = interpolate_linear(values, grid[t]);
	}
	return out;
}

std::vector<double> block_bootstrap(std::span<const double> values, std::size_t block_length, Rng &rng) {
	const std::size_t n = values.size();
	if (block_length < 1 || block_length > n) {
		throw UsageError("block length must be in [1, " + std::to_string(n) + "]");
	}
	const std::size_t pool = n - block_length + 1;
	std::vector<double> out;
	out.reserve(n + block_length);
	while (out.size() < n) {
		const std::size_t start = rng.index(pool);
		out.insert(out.end(), values.begin() + static_cast<std::ptrdiff_t>(start),
		           values.begin() + static_cast<std::ptrdiff_t>(start + block_length));
	}
	out.resize(n);
	return out;
}

std::vector<double> mbb(const TimeSeries &series, std::size_t block_length, Rng &rng, const StlParams &stl) {
	const auto decomposition = stl_decompose(series, stl);
	const auto remainder = block_bootstrap(decomposition.remainder, block_length, rng);
	return recombine(decomposition, remainder);
}

namespace {

// Cumulative squared-difference cost matrix, (n+1) x (m+1), with an
// infinite border.
std::vector<double> dtw_cost(std::span<const double> a, std::span<const double> b, std::optional<std::size_t> band) {
	const std::size_t n = a.size();
	const std::size_t m = b.size();
	if (n == 0 || m == 0) {
		throw UsageError("DTW needs non-empty sequences");
	}
	std::size_t radius = std::numeric_limits<std::size_t>::max();
	if (band) {
		radius = std::max(*band, n > m ? n - m : m - n);
	}
	constexpr double inf = std::numeric_limits<double>::infinity();
	std::vector<double> cost((n + 1) * (m + 1), inf);
	auto at = [m](std::size_t i, std::size_t j) { return i * (m + 1) + j; };
	cost[at(0, 0)] = 0.0;
	for (std::size_t i = 1; i <= n; ++i) {
		const std::size_t lo = radius == std::numeric_limits<std::size_t>::max() || i <= radius ? 1 : i - radius;
		const std::size_t hi = radius == std::numeric_limits<std::size_t>::max() ? m : std::min(m, i + radius);
		for (std::size_t j = lo; j <= hi; ++j) {
			const double d = a[i - 1] - b[j - 1];
			const double best = std::min({cost[at(i - 1, j - 1)], cost[at(i - 1, j)], cost[at(i, j - 1)]});
			cost[at(i, j)] = d * d + best;
		}
	}
	return cost;
}

} // namespace

double dtw_distance(std::span<const double> a, std::span<const double> b, std::optional<std::size_t> band) {
	const auto cost = dtw_cost(a, b, band);
	return std::sqrt(cost.back());
}

std::vector<std::pair<std::size_t, std::size_t>> dtw_path(std::span<const double> a, std::span<const double> b,
                                                          std::optional<std::size_t> band) {
	const auto cost = dtw_cost(a, b, band);
	const std::size_t m = b.size();
	auto at = [m](std::size_t i, std::size_t j) { return i * (m + 1) + j; };
	std::vector<std::pair<std::size_t, std::size_t>> path;
	std::size_t i = a.size();
	std::size_t j = m;
	while (i > 0 && j > 0) {
		path.emplace_back(i - 1, j - 1);
		const double diag = cost[at(i - 1, j - 1)];
		const double up = cost[at(i - 1, j)];
		const double left = cost[at(i, j - 1)];
		if (diag <= up && diag <= left) {
			--i;
			--j;
		} else if (up <= left) {
			--i;
		} else {
			--j;
		}
	}
	std::reverse(path.begin(), path.end());
	return path;
}

std::vector<double> dba_barycenter(std::span<const std::vector<double>> members, std::vector<double> initial,
                                   std::size_t iterations, std::optional<std::size_t> band) {
	if (members.empty() || initial.empty()) {
		throw UsageError("barycenter averaging needs members and a non-empty initial sequence");
	}
	std::vector<double> center = std::move(initial);
	std::vector<std::vector<std::pair<std::size_t, std::size_t>>> previous;
	for (std::size_t it = 0; it < iterations; ++it) {
		std::vector<std::vector<std::pair<std::size_t, std::size_t>>> paths;
		paths.reserve(members.size());
		for (const auto &s : members) {
			paths.push_back(dtw_path(center, s, band));
		}
		if (paths == previous) {
			break;
		}
		std::vector<double> sum(center.size(), 0.0);
		std::vector<std::size_t> count(center.size(), 0);
		for (std::size_t k = 0; k < members.size(); ++k) {
			for (auto [ci, si] : paths[k]) {
				sum[ci] += members[k][si];
				++count[ci];
			}
		}
		for (std::size_t i = 0; i < center.size(); ++i) {
			center[i] = sum[i] / static_cast<double>(count[i]);
		}
		previous = std::move(paths);
	}
	return center;
}

namespace {

// `count` distinct indices from [0, n) excluding `skip`, partial Fisher-Yates.
std::vector<std::size_t> draw_others(std::size_t n, std::size_t skip, std::size_t count, Rng &rng) {
	std::vector<std::size_t> pool;
	pool.reserve(n);
	for (std::size_t i = 0; i < n; ++i) {
		if (i != skip) {
			pool.push_back(i);
		}
	}
	count = std::min(count, pool.size());
	for (std::size_t i = 0; i < count; ++i) {
		const std::size_t j = i + rng.index(pool.size() - i);
		std::swap(pool[i], pool[j]);
	}
	pool.resize(count);
	return pool;
}

} // namespace

std::vector<double> dba(const SeriesCollection &collection, std::size_t reference, const DbaParams &params, Rng &rng) {
	if (collection.size() < 2) {
		throw DataError("DBA needs at least two series");
	}
	if (reference >= collection.size()) {
		throw UsageError("DBA reference index out of range");
	}
	if (params.n_refs < 1 || params.iterations < 1) {
		throw UsageError("DBA needs n_refs >= 1 and iterations >= 1");
	}
	const auto others = draw_others(collection.size(), reference, params.n_refs - 1, rng);
	std::vector<std::vector<double>> members;
	members.reserve(others.size() + 1);
	const auto ref = collection[reference].values();
	members.emplace_back(ref.begin(), ref.end());
	for (std::size_t i : others) {
		const auto v = collection[i].values();
		members.emplace_back(v.begin(), v.end());
	}
	return dba_barycenter(members, members.front(), params.iterations, params.band);
}

std::vector<double> z_normalize(std::span<const double> values) {
	const double m = mean_of(values);
	double ss = 0.0;
	for (double x : values) {
		ss += (x - m) * (x - m);
	}
	const double sd = std::sqrt(ss / static_cast<double>(values.size()));
	std::vector<double> out(values.size());
	for (std::size_t i = 0; i < out.size(); ++i) {
		out[i] = sd > 0.0 ? (values[i] - m) / sd : 0.0;
	}
	return out;
}

Mixture tsmixup(const SeriesCollection &collection, std::size_t source, const TsMixupParams &params, Rng &rng) {
	if (source >= collection.size()) {
		throw UsageError("TSMixup source index out of range");
	}
	if (params.max_k < 1 || !(params.alpha > 0.0)) {
		throw UsageError("TSMixup needs max_k >= 1 and alpha > 0");
	}
	const std::size_t k = std::min(1 + rng.index(params.max_k), collection.size());
	Mixture mix;
	mix.components.push_back(source);
	for (std::size_t i : draw_others(collection.size(), source, k - 1, rng)) {
		mix.components.push_back(i);
	}

	mix.weights.resize(mix.components.size());
	double total = 0.0;
	for (double &w : mix.weights) {
		w = rng.gamma(params.alpha);
		total += w;
	}
	for (double &w : mix.weights) {
		w /= total;
	}

	std::size_t length = std::numeric_limits<std::size_t>::max();
	for (std::size_t i : mix.components) {
		length = std::min(length, collection[i].size());
	}
	mix.values.assign(length, 0.0);
	for (std::size_t c = 0; c < mix.components.size(); ++c) {
		const auto v = collection[mix.components[c]].values();
		const auto segment = z_normalize(v.subspan(v.size() - length));
		for (std::size_t t = 0; t < length; ++t) {
			mix.values[t] += mix.weights[c] * segment[t];
		}
	}
	if (params.denormalize) {
		const auto v = collection[source].values().last(length);
		const double m = mean_of(v);
		double ss = 0.0;
		for (double x : v) {
			ss += (x - m) * (x - m);
		}
		const double sd = std::sqrt(ss / static_cast<double>(length));
		for (double &x : mix.values) {
			x = m + sd * x;
		}
	}
	return mix;
}

} // namespace grasynda
