#pragma once

#include "grasynda/series.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace grasynda {

// States are 0-based in the API; exports number nodes from 1 so that node 1
// is the lowest quantile.
struct DiscreteSeries {
	std::vector<std::size_t> labels;
	std::size_t states = 0;
};

// Equal-frequency partition of a series' values.
class QuantileBins {
public:
	QuantileBins(std::vector<double> boundaries, std::vector<std::vector<double>> bin_values);

	std::size_t states() const noexcept {
		return members_.size();
	}
	// k-1 strictly increasing cut points.
	const std::vector<double> &boundaries() const noexcept {
		return boundaries_;
	}
	// R_j: the source values assigned to state j, in time order.
	const std::vector<double> &members(std::size_t state) const {
		return members_.at(state);
	}
	std::size_t total_members() const noexcept;
	// State whose interval contains `value`; values equal to a cut point go
	// to the lower state.
	std::size_t state_of(double value) const;

private:
	std::vector<double> boundaries_;
	std::vector<std::vector<double>> members_;
};

struct Discretization {
	DiscreteSeries discrete;
	QuantileBins bins;
};

inline constexpr std::size_t kDefaultQuantiles = 25;

// Equal-frequency binning into min(k_requested, #distinct values) states.
// Rank chunks whose shared border falls inside a run of tied values are
// merged, so k may shrink further; labels stay contiguous.
Discretization discretize(std::span<const double> values, std::size_t k_requested = kDefaultQuantiles);
Discretization discretize(const TimeSeries &series, std::size_t k_requested = kDefaultQuantiles);

// Directed weighted graph over the states with its row-stochastic
// transition matrix.
class QuantileGraph {
public:
	std::size_t states() const noexcept {
		return states_;
	}
	double probability(std::size_t from, std::size_t to) const {
		return transition_[from * states_ + to];
	}
	std::span<const double> row(std::size_t from) const {
		return std::span<const double>(transition_).subspan(from * states_, states_);
	}
	// Row-major k x k.
	const std::vector<double> &transition() const noexcept {
		return transition_;
	}
	// Observed transition counts, before dead-end self-loops are added.
	std::size_t count(std::size_t from, std::size_t to) const {
		return counts_[from * states_ + to];
	}
	std::size_t total_transitions() const noexcept;
	// States with no observed outgoing transition.
	bool is_dead_end(std::size_t state) const;
	std::size_t edge_count() const noexcept;
	const QuantileBins &bins() const noexcept {
		return bins_;
	}

	friend QuantileGraph build_graph(const DiscreteSeries &discrete, const QuantileBins &bins);

private:
	QuantileGraph(std::size_t states, std::vector<double> transition, std::vector<std::size_t> counts,
	              QuantileBins bins);

	std::size_t states_;
	std::vector<double> transition_;
	std::vector<std::size_t> counts_;
	QuantileBins bins_;
};

// p_ij = #(i -> j) / #(i -> *). A state observed only at the last position
// gets a self-loop with probability 1.
QuantileGraph build_graph(const DiscreteSeries &discrete, const QuantileBins &bins);

// Convenience: discretize then build.
QuantileGraph quantile_graph(std::span<const double> values, std::size_t k_requested = kDefaultQuantiles);

enum class GraphFormat { dot, matrix_csv };

GraphFormat parse_graph_format(std::string_view name);
std::string export_graph(const QuantileGraph &graph, GraphFormat format);

} // namespace grasynda
