#include "grasynda/generator.hpp"

#include "grasynda/error.hpp"
#include "grasynda/parallel.hpp"

namespace grasynda {

void GeneratorConfig::validate() const {
	if (length && *length < 1) {
		throw UsageError("synthetic length must be >= 1");
	}
	if (replicas < 1) {
		throw UsageError("replicas must be >= 1");
	}
	if (quantiles < 1) {
		throw UsageError("quantiles must be >= 1");
	}
}

DiscreteSeries sample_states(const QuantileGraph &graph, std::size_t initial_state, std::size_t length, Rng &rng) {
	const std::size_t k = graph.states();
	if (initial_state >= k) {
		throw UsageError("initial state " + std::to_string(initial_state) + " out of range for " + std::to_string(k) +
		                 " states");
	}
	if (length < 1) {
		throw UsageError("state sequence length must be >= 1");
	}
	// Cumulative rows; `last` is the final state with non-zero probability,
	// which absorbs draws that land past the rounded cumulative sum.
	std::vector<double> cumulative(k * k);
	std::vector<std::size_t> last(k, 0);
	for (std::size_t i = 0; i < k; ++i) {
		double acc = 0.0;
		for (std::size_t j = 0; j < k; ++j) {
			const double p = graph.probability(i, j);
			acc += p;
			cumulative[i * k + j] = acc;
			if (p > 0.0) {
				last[i] = j;
			}
		}
	}

	DiscreteSeries out;
	out.states = k;
	out.labels.resize(length);
	out.labels[0] = initial_state;
	for (std::size_t t = 1; t < length; ++t) {
		const std::size_t from = out.labels[t - 1];
		const double u = rng.uniform();
		std::size_t next = last[from];
		for (std::size_t j = 0; j < k; ++j) {
			if (u < cumulative[from * k + j] && graph.probability(from, j) > 0.0) {
				next = j;
				break;
			}
		}
		out.labels[t] = next;
	}
	return out;
}

std::vector<double> states_to_values(const DiscreteSeries &states, const QuantileBins &bins, Rng &rng) {
	if (states.states != bins.states()) {
		throw UsageError("state sequence and bins disagree on the number of states");
	}
	std::vector<double> out(states.labels.size());
	for (std::size_t t = 0; t < out.size(); ++t) {
		const std::size_t s = states.labels[t];
		if (s >= bins.states()) {
			throw UsageError("state label out of range");
		}
		const auto &members = bins.members(s);
		if (members.empty()) {
			throw InternalError("state " + std::to_string(s) + " has no values to sample from");
		}
		out[t] = members[rng.index(members.size())];
	}
	return out;
}

bool uses_stl(const TimeSeries &series, const GeneratorConfig &config) {
	return config.use_stl.value_or(stl_applicable(series.size(), series.period()));
}

std::vector<double> extend_trend_seasonal(const StlDecomposition &decomposition, std::size_t length) {
	const std::size_t n = decomposition.size();
	const auto period = static_cast<std::size_t>(decomposition.period);
	std::vector<double> out(length);
	const double slope = (decomposition.trend[n - 1] - decomposition.trend[n - 1 - period]) / static_cast<double>(period);
	for (std::size_t t = 0; t < length; ++t) {
		if (t < n) {
			out[t] = decomposition.trend[t] + decomposition.seasonal[t];
			continue;
		}
		const std::size_t ahead = t - n;
		const double trend = decomposition.trend[n - 1] + slope * static_cast<double>(ahead + 1);
		out[t] = trend + decomposition.seasonal[n - period + ahead % period];
	}
	return out;
}

std::vector<SyntheticSeries> grasynda(const TimeSeries &series, const GeneratorConfig &config) {
	config.validate();
	const std::size_t length = config.length.value_or(series.size());
	const bool stl = uses_stl(series, config);

	std::optional<StlDecomposition> decomposition;
	std::vector<double> base;
	if (stl) {
		decomposition = stl_decompose(series, config.stl);
		base = extend_trend_seasonal(*decomposition, length);
	}
	const std::span<const double> signal = stl ? std::span<const double>(decomposition->remainder) : series.values();
	const auto d = discretize(signal, config.quantiles);
	const auto graph = build_graph(d.discrete, d.bins);
	const std::size_t initial = d.discrete.labels.front();

	std::vector<SyntheticSeries> out;
	out.reserve(config.replicas);
	for (std::size_t r = 1; r <= config.replicas; ++r) {
		Rng rng(stream_key(config.seed, series.id(), r));
		const auto states = sample_states(graph, initial, length, rng);
		auto values = states_to_values(states, graph.bins(), rng);
		if (stl) {
			for (std::size_t t = 0; t < length; ++t) {
				values[t] += base[t];
			}
		}
		std::vector<std::string> stamps;
		if (length == series.size()) {
			stamps = series.stamps();
		}
		out.push_back(SyntheticSeries{
		    TimeSeries(synthetic_id(series.id(), r), series.period(), std::move(values), std::move(stamps)),
		    series.id()});
	}
	return out;
}

std::vector<SyntheticSeries> grasynda(const SeriesCollection &collection, const GeneratorConfig &config, int threads) {
	config.validate();
	std::vector<std::vector<SyntheticSeries>> per_series(collection.size());
	parallel_for(collection.size(), threads, [&](std::size_t i) { per_series[i] = grasynda(collection[i], config); });
	std::vector<SyntheticSeries> out;
	out.reserve(collection.size() * config.replicas);
	for (auto &group : per_series) {
		for (auto &s : group) {
			out.push_back(std::move(s));
		}
	}
	return out;
}

} // namespace grasynda
