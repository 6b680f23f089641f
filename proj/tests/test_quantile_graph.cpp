#include "grasynda/error.hpp"
#include "grasynda/quantile_graph.hpp"
#include "grasynda/random.hpp"
#include "oracles.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

using namespace grasynda;

namespace {

double row_sum(const QuantileGraph &g, std::size_t i) {
	const auto r = g.row(i);
	return std::accumulate(r.begin(), r.end(), 0.0);
}

} // namespace

TEST_CASE("tertiles of 1..6") {
	const std::vector<double> v{1, 2, 3, 4, 5, 6};
	const auto d = discretize(v, 3);
	CHECK(d.discrete.states == 3);
	CHECK(d.discrete.labels == std::vector<std::size_t>{0, 0, 1, 1, 2, 2});
	REQUIRE(d.bins.boundaries().size() == 2);
	CHECK(d.bins.boundaries()[0] > 2.0);
	CHECK(d.bins.boundaries()[0] < 3.0);
	CHECK(d.bins.boundaries()[1] > 4.0);
	CHECK(d.bins.boundaries()[1] < 5.0);
	CHECK(d.discrete.labels == oracle::sort_and_split_labels(v, 3));
}

TEST_CASE("constant series collapses to one state") {
	const auto d = discretize(std::vector<double>{5, 5, 5, 5}, 25);
	CHECK(d.discrete.states == 1);
	CHECK(d.discrete.labels == std::vector<std::size_t>{0, 0, 0, 0});
	CHECK(d.bins.members(0).size() == 4);
}

TEST_CASE("default quantile count") {
	CHECK(kDefaultQuantiles == 25);
}

TEST_CASE("discretize rejects bad input") {
	CHECK_THROWS_AS(discretize(std::vector<double>{}, 3), DataError);
	CHECK_THROWS_AS(discretize(std::vector<double>{1, 2}, 0), UsageError);
}

TEST_CASE("labels match the sort-and-split oracle on random series") {
	Rng rng(11);
	for (int trial = 0; trial < 500; ++trial) {
		const std::size_t n = 1 + rng.index(80);
		const std::size_t k = 1 + rng.index(30);
		std::vector<double> v(n);
		const bool coarse = rng.index(2) == 0;
		for (auto &x : v) {
			x = coarse ? static_cast<double>(rng.index(5)) : rng.normal();
		}
		const auto d = discretize(v, k);
		REQUIRE(d.discrete.labels == oracle::sort_and_split_labels(v, k));
	}
}

TEST_CASE("label/bin consistency and scale equivariance") {
	Rng rng(12);
	for (int trial = 0; trial < 200; ++trial) {
		const std::size_t n = 2 + rng.index(200);
		const std::size_t k = 2 + rng.index(24);
		auto v = testing::random_walk(rng, n);
		const auto d = discretize(v, k);
		for (std::size_t t = 0; t < n; ++t) {
			const auto &bin = d.bins.members(d.discrete.labels[t]);
			REQUIRE(std::find(bin.begin(), bin.end(), v[t]) != bin.end());
			REQUIRE(d.bins.state_of(v[t]) == d.discrete.labels[t]);
		}
		CHECK(d.bins.total_members() == n);

		const double a = 0.5 + rng.uniform() * 10.0;
		const double b = rng.normal() * 50.0;
		std::vector<double> w(n);
		std::transform(v.begin(), v.end(), w.begin(), [&](double x) { return a * x + b; });
		// Affine maps keep the ranks; exact ties could only appear by rounding,
		// which a random walk overwhelmingly avoids.
		CHECK(discretize(w, k).discrete.labels == d.discrete.labels);
	}
}

TEST_CASE("hand-counted transition matrices") {
	SUBCASE("labels 1,2,1,2,2") {
		const auto g = quantile_graph(std::vector<double>{1, 2, 1, 2, 2}, 2);
		REQUIRE(g.states() == 2);
		CHECK(g.probability(0, 0) == 0.0);
		CHECK(g.probability(0, 1) == 1.0);
		CHECK(g.probability(1, 0) == 0.5);
		CHECK(g.probability(1, 1) == 0.5);
		CHECK(g.total_transitions() == 4);
		CHECK(g.edge_count() == 3);
		const auto dot = export_graph(g, GraphFormat::dot);
		CHECK(std::count(dot.begin(), dot.end(), '>') == 3);
	}
	SUBCASE("dead end gets a self-loop") {
		const auto g = quantile_graph(std::vector<double>{1, 2}, 2);
		CHECK(g.probability(0, 1) == 1.0);
		CHECK(g.probability(1, 1) == 1.0);
		CHECK(g.probability(1, 0) == 0.0);
		CHECK(g.is_dead_end(1));
		CHECK_FALSE(g.is_dead_end(0));
		CHECK(g.count(1, 1) == 0);
	}
	SUBCASE("single self-looping state") {
		const auto g = quantile_graph(std::vector<double>{3, 3, 3}, 25);
		REQUIRE(g.states() == 1);
		CHECK(g.probability(0, 0) == 1.0);
		const auto dot = export_graph(g, GraphFormat::dot);
		CHECK(dot.find("  1;") != std::string::npos);
		CHECK(dot.find("1 -> 1 [label=\"1.000000\"]") != std::string::npos);
	}
}

TEST_CASE("matrix csv export rows parse back to one") {
	Rng rng(3);
	const auto g = quantile_graph(testing::random_walk(rng, 120), 10);
	std::istringstream in(export_graph(g, parse_graph_format("matrix-csv")));
	std::string line;
	std::size_t rows = 0;
	while (std::getline(in, line)) {
		std::stringstream ss(line);
		std::string cell;
		double sum = 0.0;
		std::size_t cols = 0;
		while (std::getline(ss, cell, ',')) {
			sum += std::stod(cell);
			++cols;
		}
		CHECK(cols == g.states());
		CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
		++rows;
	}
	CHECK(rows == g.states());
	CHECK(parse_graph_format("csv") == GraphFormat::matrix_csv);
	CHECK_THROWS_AS(parse_graph_format("png"), UsageError);
}

TEST_CASE("row-stochastic and count-conserving on random series") {
	Rng rng(5);
	for (int trial = 0; trial < 300; ++trial) {
		const std::size_t n = 2 + rng.index(300);
		const auto g = quantile_graph(testing::random_walk(rng, n), 2 + rng.index(24));
		CHECK(g.total_transitions() == n - 1);
		for (std::size_t i = 0; i < g.states(); ++i) {
			REQUIRE(std::abs(row_sum(g, i) - 1.0) <= 1e-12);
		}
	}
}

TEST_CASE("matches the brute-force pair tally on small alphabets") {
	Rng rng(99);
	for (int trial = 0; trial < 300; ++trial) {
		const std::size_t n = 1 + rng.index(12);
		const std::size_t k = 1 + rng.index(3);
		std::vector<double> v(n);
		for (auto &x : v) {
			x = static_cast<double>(rng.index(3));
		}
		const auto g = quantile_graph(v, k);
		const auto expected = oracle::pair_tally(v, k);
		REQUIRE(expected.size() == g.states() * g.states());
		CHECK(g.transition() == expected);
	}
}

TEST_CASE("build_graph rejects inconsistent inputs") {
	const auto d = discretize(std::vector<double>{1, 2, 3}, 3);
	DiscreteSeries bad = d.discrete;
	bad.labels.push_back(7);
	CHECK_THROWS(build_graph(bad, d.bins));
}
