#pragma once

#include "grasynda/quantile_graph.hpp"
#include "grasynda/random.hpp"
#include "grasynda/series.hpp"
#include "grasynda/stl.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace grasynda {

struct GeneratorConfig {
	std::uint64_t seed = 0;
	// Synthetic length; the source length when unset.
	std::optional<std::size_t> length;
	std::size_t replicas = 1;
	std::size_t quantiles = kDefaultQuantiles;
	// Unset: decompose when the series spans at least two seasonal periods.
	std::optional<bool> use_stl;
	StlParams stl;

	void validate() const;
};

struct SyntheticSeries {
	TimeSeries series;
	std::string source_id;
};

// Markov walk of `length` states starting at `initial_state`.
DiscreteSeries sample_states(const QuantileGraph &graph, std::size_t initial_state, std::size_t length, Rng &rng);

// Draws each value uniformly, with replacement, from the source values of
// its state.
std::vector<double> states_to_values(const DiscreteSeries &states, const QuantileBins &bins, Rng &rng);

// Whether grasynda() decomposes this series under `config`.
bool uses_stl(const TimeSeries &series, const GeneratorConfig &config);

// Full pipeline for one source series. Replica r draws from the stream
// stream_key(config.seed, series.id(), r).
std::vector<SyntheticSeries> grasynda(const TimeSeries &series, const GeneratorConfig &config);

// grasynda() over a collection; output is ordered by source, then replica.
std::vector<SyntheticSeries> grasynda(const SeriesCollection &collection, const GeneratorConfig &config,
                                      int threads = 1);

// Extends (or truncates) trend + seasonal to `length` points: the seasonal
// pattern of the final cycle repeats and the trend continues with the slope
// of its final cycle.
std::vector<double> extend_trend_seasonal(const StlDecomposition &decomposition, std::size_t length);

} // namespace grasynda
