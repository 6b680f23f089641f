#pragma once

#include "grasynda/config.hpp"
#include "grasynda/random.hpp"
#include "grasynda/series.hpp"
#include "grasynda/stl.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace grasynda {

// ---------------------------------------------------------------------------
// Transformations of a single series
// ---------------------------------------------------------------------------

// y_t + N(0, sigma * sd(y)). A constant series comes back unchanged.
std::vector<double> jitter(std::span<const double> values, double sigma, Rng &rng);

// f * y_t with one factor f ~ N(1, sigma) redrawn until positive.
std::vector<double> scaling(std::span<const double> values, double sigma, Rng &rng);

// Smooth multiplicative curve: a natural cubic spline through `knots` points
// with ordinates ~ N(1, sigma), spaced evenly over [0, length-1].
std::vector<double> magnitude_warp_curve(std::size_t length, double sigma, int knots, Rng &rng);
std::vector<double> magnitude_warp(std::span<const double> values, double sigma, int knots, Rng &rng);

// Warped sampling positions: spline-perturbed step sizes (clamped positive)
// are accumulated and rescaled so the grid runs exactly from 0 to length-1.
std::vector<double> time_warp_grid(std::size_t length, double sigma, int knots, Rng &rng);
std::vector<double> time_warp(std::span<const double> values, double sigma, int knots, Rng &rng);

// Concatenates blocks of `block_length` drawn uniformly from all overlapping
// blocks and truncates to the input length. block_length <= size.
std::vector<double> block_bootstrap(std::span<const double> values, std::size_t block_length, Rng &rng);

// STL decomposition, block bootstrap of the remainder, recombination.
std::vector<double> mbb(const TimeSeries &series, std::size_t block_length, Rng &rng, const StlParams &stl = {});

// ---------------------------------------------------------------------------
// Dynamic time warping
// ---------------------------------------------------------------------------

// Squared-difference DTW; the distance is the square root of the optimal
// cumulative cost. `band` restricts |i - j| (widened to the length
// difference); unset means unconstrained.
double dtw_distance(std::span<const double> a, std::span<const double> b, std::optional<std::size_t> band = {});
std::vector<std::pair<std::size_t, std::size_t>> dtw_path(std::span<const double> a, std::span<const double> b,
                                                          std::optional<std::size_t> band = {});

struct DbaParams {
	std::size_t n_refs = 5;
	std::size_t iterations = 10;
	std::optional<std::size_t> band;
};

// Barycenter averaging: start from `initial`, re-align every member and
// average the assigned values per barycenter point, until the alignment stops
// changing or `iterations` passes are done.
std::vector<double> dba_barycenter(std::span<const std::vector<double>> members, std::vector<double> initial,
                                   std::size_t iterations, std::optional<std::size_t> band = {});

// Barycenter of series `reference` and n_refs-1 other series drawn without
// replacement. Output length is the reference's length.
std::vector<double> dba(const SeriesCollection &collection, std::size_t reference, const DbaParams &params, Rng &rng);

struct TsMixupParams {
	std::size_t max_k = 3;
	double alpha = 1.5;
	bool denormalize = false;
};

struct Mixture {
	std::vector<std::size_t> components; // first entry is the source series
	std::vector<double> weights;
	std::vector<double> values;
};

// Weighted average of z-normalised segments. Component 0 is `source`, the
// others are drawn without replacement; k ~ U{1..max_k} (capped at the
// collection size), weights ~ Dirichlet(alpha). Segments are the most recent
// L observations, L the shortest selected length.
Mixture tsmixup(const SeriesCollection &collection, std::size_t source, const TsMixupParams &params, Rng &rng);

std::vector<double> z_normalize(std::span<const double> values);

// ---------------------------------------------------------------------------
// Collection-level dispatch
// ---------------------------------------------------------------------------

enum class AugmentMethod { none, grasynda, jitter, scaling, m_warp, t_warp, mbb, dba, tsmixup };

AugmentMethod parse_method(std::string_view name);
std::string_view method_name(AugmentMethod method);

struct AugmenterSpec {
	AugmentMethod method = AugmentMethod::none;
	// Method-specific parameters without the `augmenter.<method>.` prefix.
	Config params;
	std::uint64_t seed = 0;
	int threads = 1;
};

// Parameters of `method` with defaults filled in, for provenance records.
// Unknown keys and out-of-range values raise UsageError.
Config resolved_params(AugmentMethod method, const Config &params, int period);

// Original series followed by one synthetic series per original. The
// synthetic for series `id` draws from stream_key(seed, id, 1).
SeriesCollection augment(const SeriesCollection &collection, const AugmenterSpec &spec);

} // namespace grasynda
