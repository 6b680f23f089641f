#include "grasynda/quantile_graph.hpp"

#include "grasynda/error.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace grasynda {

QuantileBins::QuantileBins(std::vector<double> boundaries, std::vector<std::vector<double>> bin_values)
    : boundaries_(std::move(boundaries)), members_(std::move(bin_values)) {
	if (members_.empty()) {
		throw InternalError("quantile bins need at least one state");
	}
	if (boundaries_.size() + 1 != members_.size()) {
		throw InternalError("quantile bins: expected k-1 boundaries");
	}
	for (std::size_t i = 1; i < boundaries_.size(); ++i) {
		if (!(boundaries_[i - 1] < boundaries_[i])) {
			throw InternalError("quantile bins: boundaries must be strictly increasing");
		}
	}
	for (const auto &m : members_) {
		if (m.empty()) {
			throw InternalError("quantile bins: empty state");
		}
	}
}

std::size_t QuantileBins::total_members() const noexcept {
	std::size_t n = 0;
	for (const auto &m : members_) {
		n += m.size();
	}
	return n;
}

std::size_t QuantileBins::state_of(double value) const {
	return static_cast<std::size_t>(std::lower_bound(boundaries_.begin(), boundaries_.end(), value) -
	                                boundaries_.begin());
}

Discretization discretize(std::span<const double> values, std::size_t k_requested) {
	if (values.empty()) {
		throw DataError("cannot discretize an empty series");
	}
	if (k_requested < 1) {
		throw UsageError("number of quantiles must be >= 1");
	}
	const std::size_t n = values.size();
	std::vector<std::size_t> order(n);
	std::iota(order.begin(), order.end(), std::size_t{0});
	std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

	std::size_t distinct = 1;
	for (std::size_t r = 1; r < n; ++r) {
		distinct += values[order[r]] != values[order[r - 1]] ? 1 : 0;
	}
	const std::size_t k = std::min(k_requested, distinct);

	// Rank r belongs to chunk j when floor(j*n/k) <= r < floor((j+1)*n/k).
	// A cut sits at the first rank of each chunk after the first.
	std::vector<std::size_t> cuts;
	std::vector<double> boundaries;
	for (std::size_t j = 1; j < k; ++j) {
		const std::size_t pos = j * n / k;
		const double lo = values[order[pos - 1]];
		const double hi = values[order[pos]];
		if (lo == hi) {
			continue; // tie straddles the cut: merge the neighbouring chunks
		}
		const double mid = lo + (hi - lo) / 2.0;
		if (!boundaries.empty() && !(boundaries.back() < mid)) {
			continue;
		}
		cuts.push_back(pos);
		boundaries.push_back(mid);
	}

	const std::size_t states = cuts.size() + 1;
	std::vector<std::size_t> labels(n);
	std::size_t state = 0;
	for (std::size_t r = 0; r < n; ++r) {
		while (state < cuts.size() && r >= cuts[state]) {
			++state;
		}
		labels[order[r]] = state;
	}
	std::vector<std::vector<double>> members(states);
	for (std::size_t t = 0; t < n; ++t) {
		members[labels[t]].push_back(values[t]);
	}
	return Discretization{DiscreteSeries{std::move(labels), states},
	                      QuantileBins(std::move(boundaries), std::move(members))};
}

Discretization discretize(const TimeSeries &series, std::size_t k_requested) {
	return discretize(series.values(), k_requested);
}

QuantileGraph::QuantileGraph(std::size_t states, std::vector<double> transition, std::vector<std::size_t> counts,
                             QuantileBins bins)
    : states_(states), transition_(std::move(transition)), counts_(std::move(counts)), bins_(std::move(bins)) {
}

std::size_t QuantileGraph::total_transitions() const noexcept {
	return std::accumulate(counts_.begin(), counts_.end(), std::size_t{0});
}

bool QuantileGraph::is_dead_end(std::size_t state) const {
	const auto begin = counts_.begin() + static_cast<std::ptrdiff_t>(state * states_);
	return std::all_of(begin, begin + static_cast<std::ptrdiff_t>(states_), [](std::size_t c) { return c == 0; });
}

std::size_t QuantileGraph::edge_count() const noexcept {
	return static_cast<std::size_t>(std::count_if(transition_.begin(), transition_.end(), [](double p) { return p > 0.0; }));
}

QuantileGraph build_graph(const DiscreteSeries &discrete, const QuantileBins &bins) {
	const std::size_t k = discrete.states;
	if (k == 0 || k != bins.states()) {
		throw InternalError("discrete series and bins disagree on the number of states");
	}
	if (discrete.labels.empty() || discrete.labels.size() != bins.total_members()) {
		throw InternalError("discrete series length does not match the binned values");
	}
	for (std::size_t label : discrete.labels) {
		if (label >= k) {
			throw InternalError("state label out of range");
		}
	}

	std::vector<std::size_t> counts(k * k, 0);
	for (std::size_t t = 0; t + 1 < discrete.labels.size(); ++t) {
		++counts[discrete.labels[t] * k + discrete.labels[t + 1]];
	}
	std::vector<double> transition(k * k, 0.0);
	for (std::size_t i = 0; i < k; ++i) {
		std::size_t out = 0;
		for (std::size_t j = 0; j < k; ++j) {
			out += counts[i * k + j];
		}
		if (out == 0) {
			transition[i * k + i] = 1.0;
			continue;
		}
		for (std::size_t j = 0; j < k; ++j) {
			transition[i * k + j] = static_cast<double>(counts[i * k + j]) / static_cast<double>(out);
		}
	}
	return QuantileGraph(k, std::move(transition), std::move(counts), bins);
}

QuantileGraph quantile_graph(std::span<const double> values, std::size_t k_requested) {
	auto d = discretize(values, k_requested);
	return build_graph(d.discrete, d.bins);
}

GraphFormat parse_graph_format(std::string_view name) {
	if (name == "dot") {
		return GraphFormat::dot;
	}
	if (name == "csv" || name == "matrix-csv") {
		return GraphFormat::matrix_csv;
	}
	throw UsageError("unknown graph format '" + std::string(name) + "' (expected dot or csv)");
}

std::string export_graph(const QuantileGraph &graph, GraphFormat format) {
	const std::size_t k = graph.states();
	std::ostringstream out;
	if (format == GraphFormat::dot) {
		out << "digraph quantile_graph {\n";
		for (std::size_t i = 0; i < k; ++i) {
			out << "  " << (i + 1) << ";\n";
		}
		char label[32];
		for (std::size_t i = 0; i < k; ++i) {
			for (std::size_t j = 0; j < k; ++j) {
				const double p = graph.probability(i, j);
				if (p > 0.0) {
					std::snprintf(label, sizeof label, "%.6f", p);
					out << "  " << (i + 1) << " -> " << (j + 1) << " [label=\"" << label << "\"];\n";
				}
			}
		}
		out << "}\n";
		return out.str();
	}
	for (std::size_t i = 0; i < k; ++i) {
		for (std::size_t j = 0; j < k; ++j) {
			if (j > 0) {
				out << ',';
			}
			out << format_double(graph.probability(i, j));
		}
		out << '\n';
	}
	return out.str();
}

} // namespace grasynda
