#include "grasynda/error.hpp"
#include "grasynda/evaluation.hpp"
#include "oracles.hpp"
#include "support.hpp"
#include "table2_fixture.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

using namespace grasynda;

TEST_CASE("seasonal naive") {
	const std::vector<double> train{1, 2, 3, 4, 1, 2, 3, 4};
	CHECK(seasonal_naive(train, 4, 8) == std::vector<double>{1, 2, 3, 4, 1, 2, 3, 4});
	CHECK(seasonal_naive(train, 4, 1) == std::vector<double>{1});
	CHECK(seasonal_naive(std::vector<double>{5, 9, 7}, 1, 3) == std::vector<double>{7, 7, 7});
	CHECK_THROWS_AS(seasonal_naive(std::vector<double>{1, 2, 3}, 4, 2), DataError);

	// An exactly periodic series scores zero on a held-out full period.
	std::vector<double> y;
	for (int c = 0; c < 5; ++c) {
		y.insert(y.end(), {3.0, 8.0, 1.0, 6.0, 2.0, 7.0});
	}
	const auto parts = split(TimeSeries("p", 6, y), 6);
	const auto pred = seasonal_naive(parts.train, 6);
	CHECK(*mase(pred, parts.test, parts.train.values()) == 0.0);
}

TEST_CASE("mase") {
	const std::vector<double> train{1, 2, 4};
	CHECK(*mase(std::vector<double>{3}, std::vector<double>{5}, train) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
	CHECK(std::abs(*mase(std::vector<double>{3}, std::vector<double>{5}, train) - 1.3333333333) < 1e-9);
	CHECK(*mase(std::vector<double>{5, 6}, std::vector<double>{5, 6}, train) == 0.0);

	// The in-sample one-step naive forecast scores exactly one.
	Rng rng(1);
	const auto y = testing::random_walk(rng, 50);
	const std::vector<double> naive(y.begin(), y.end() - 1);
	const std::vector<double> actual(y.begin() + 1, y.end());
	CHECK(*mase(naive, actual, y) == doctest::Approx(1.0).epsilon(1e-12));

	// Scale-free.
	for (int trial = 0; trial < 50; ++trial) {
		auto t = testing::random_walk(rng, 30);
		auto p = testing::random_walk(rng, 6);
		auto a = testing::random_walk(rng, 6);
		const double base = *mase(p, a, t);
		for (auto *v : {&t, &p, &a}) {
			for (double &x : *v) {
				x *= 7.3;
			}
		}
		REQUIRE(std::abs(*mase(p, a, t) - base) <= 1e-9);
	}

	CHECK_FALSE(mase(std::vector<double>{1}, std::vector<double>{2}, std::vector<double>{3, 3, 3}));
	CHECK_THROWS_AS(mase(std::vector<double>{1}, std::vector<double>{2, 3}, train), UsageError);
	CHECK_THROWS_AS(mase(std::vector<double>{1}, std::vector<double>{2}, std::vector<double>{1}), DataError);
}

TEST_CASE("ridge forecaster on a linear trend") {
	std::vector<double> y(40);
	std::iota(y.begin(), y.end(), 1.0);
	const SeriesCollection c({"lin", 1, 1, 3}, {TimeSeries("a", 1, y)});
	const auto model = LinearForecaster::fit(c, 3, 1, 1e-8);
	CHECK(model.coefficients().size() == 4);
	const auto pred = model.predict(y);
	REQUIRE(pred.size() == 1);
	CHECK(std::abs(pred[0] - 41.0) < 1e-4);

	// All windows normalise to the same shape, so the unpenalised system is
	// singular.
	CHECK_THROWS_AS(LinearForecaster::fit(c, 3, 1, 0.0), UsageError);
	CHECK_THROWS_AS(LinearForecaster::fit(c, 30, 20, 1e-3), DataError);
	CHECK_THROWS_AS(LinearForecaster::fit(c, 3, 1, -1.0), UsageError);
}

TEST_CASE("ridge shrinkage limit and monotone regularisation") {
	Rng rng(2);
	std::vector<std::vector<double>> values;
	for (int i = 0; i < 8; ++i) {
		values.push_back(testing::seasonal_ar1(rng, 60, 12));
	}
	const auto c = testing::make_collection(values, 12, 6, 24);

	const auto heavy = LinearForecaster::fit(c, 24, 6, 1e9);
	for (double w : heavy.coefficients()) {
		CHECK(std::abs(w) < 1e-6);
	}
	const auto history = c[0].values();
	const auto window = history.subspan(history.size() - 24);
	const double window_mean = std::accumulate(window.begin(), window.end(), 0.0) / 24.0;
	for (double p : heavy.predict(history)) {
		CHECK(p == doctest::Approx(window_mean).epsilon(1e-6));
	}

	const auto loose = LinearForecaster::fit(c, 24, 6, 1e-6);
	const auto mid = LinearForecaster::fit(c, 24, 6, 1.0);
	CHECK(loose.training_sse() <= mid.training_sse() + 1e-9);
	CHECK(mid.training_sse() <= heavy.training_sse() + 1e-9);
	CHECK(loose.training_rows() == 8 * (60 - 24 - 6 + 1));

	// Same shape whatever the training set.
	const auto twice = testing::make_collection({values[0], values[1], values[0], values[1]}, 12, 6, 24);
	const auto other = LinearForecaster::fit(twice, 24, 6, 1e-3);
	CHECK(other.coefficients().size() == loose.coefficients().size());
	CHECK(other.predict(history).size() == 6);

	// Short histories are padded; flat windows forecast their level.
	CHECK(loose.predict(std::vector<double>{4, 4, 4}) == std::vector<double>(6, 4.0));
}

TEST_CASE("wilcoxon fixtures") {
	const std::vector<double> a{1, 2, 3, 4, 5, 6};
	CHECK(wilcoxon_signed_rank(a, a) == 1.0);
	const std::vector<double> b{0, 0, 0, 0, 0, 0};
	const std::vector<double> up{1.0, 2.5, 3.1, 4.7, 5.2, 6.9};
	CHECK(wilcoxon_signed_rank(up, b) == 0.03125);
	CHECK(wilcoxon_signed_rank(b, up) == 0.03125);
	CHECK_THROWS_AS(wilcoxon_signed_rank(std::vector<double>{1, 2, 3, 4}, std::vector<double>{0, 0, 0, 0}),
	                UsageError);
	CHECK_THROWS_AS(wilcoxon_signed_rank(a, std::vector<double>{1, 2}), UsageError);
}

TEST_CASE("exact wilcoxon matches full enumeration") {
	Rng rng(3);
	for (int trial = 0; trial < 300; ++trial) {
		const std::size_t n = 5 + rng.index(6);
		std::vector<double> a(n);
		std::vector<double> b(n);
		for (std::size_t i = 0; i < n; ++i) {
			// Coarse values force ties and zero differences.
			a[i] = trial % 2 ? std::round(rng.normal() * 2) : rng.normal();
			b[i] = trial % 2 ? std::round(rng.normal() * 2) : rng.normal() + 0.3;
		}
		const double expected = oracle::wilcoxon_enumeration(a, b);
		std::size_t nonzero = 0;
		for (std::size_t i = 0; i < n; ++i) {
			nonzero += a[i] != b[i] ? 1 : 0;
		}
		if (nonzero == 0) {
			CHECK(wilcoxon_signed_rank(a, b) == 1.0);
		} else if (nonzero < kWilcoxonMinPairs) {
			CHECK_THROWS_AS(wilcoxon_signed_rank(a, b), UsageError);
		} else {
			REQUIRE(wilcoxon_signed_rank(a, b) == doctest::Approx(expected).epsilon(1e-12));
		}
		std::vector<double> d;
		for (std::size_t i = 0; i < n; ++i) {
			if (a[i] != b[i]) {
				d.push_back(a[i] - b[i]);
			}
		}
		if (!d.empty()) {
			REQUIRE(wilcoxon_exact_p(d) == doctest::Approx(expected).epsilon(1e-12));
		}
	}
}

TEST_CASE("exact and normal routes agree at n = 25") {
	Rng rng(4);
	double worst = 0;
	for (int trial = 0; trial < 100; ++trial) {
		std::vector<double> d(25);
		for (auto &x : d) {
			x = rng.normal() + 0.2;
		}
		worst = std::max(worst, std::abs(wilcoxon_exact_p(d) - wilcoxon_normal_p(d)));
	}
	CHECK(worst <= 0.02);
	// Above the exact limit the normal route is used.
	std::vector<double> a(40);
	std::vector<double> b(40, 0.0);
	for (auto &x : a) {
		x = rng.normal() + 0.1;
	}
	std::vector<double> d(a);
	CHECK(wilcoxon_signed_rank(a, b) == doctest::Approx(wilcoxon_normal_p(d)));
}

namespace {

std::vector<ScoreRecord> grid(const std::vector<std::string> &methods, const std::vector<std::vector<double>> &means,
                              std::size_t series = 1) {
	std::vector<ScoreRecord> out;
	for (std::size_t d = 0; d < means.size(); ++d) {
		for (std::size_t m = 0; m < methods.size(); ++m) {
			for (std::size_t s = 0; s < series; ++s) {
				out.push_back({"d" + std::to_string(d), "f", methods[m], "s" + std::to_string(s), means[d][m]});
			}
		}
	}
	return out;
}

} // namespace

TEST_CASE("aggregate: trivial grids") {
	SUBCASE("single method, single dataset") {
		const auto r = aggregate_report(grid({"none"}, {{1.2}}));
		REQUIRE(r.cells.size() == 1);
		CHECK(r.cells[0].rank == 1.0);
		REQUIRE(r.effectiveness.size() == 1);
		CHECK_FALSE(r.effectiveness[0].fraction);
		CHECK(r.complete());
	}
	SUBCASE("two methods over three datasets") {
		const auto r = aggregate_report(grid({"none", "jitter"}, {{1.0, 1.1}, {1.0, 1.1}, {1.0, 1.1}}));
		CHECK(*r.summary("f", "none")->average_rank == 1.0);
		CHECK(*r.summary("f", "jitter")->average_rank == 2.0);
		CHECK(*r.summary("f", "jitter")->average_mase == doctest::Approx(1.1));
		CHECK(*r.effectiveness_of("jitter")->fraction == 0.0);
	}
	SUBCASE("no baseline, no effectiveness") {
		const auto r = aggregate_report(grid({"jitter", "mbb"}, {{1.0, 0.9}}));
		CHECK(r.effectiveness.empty());
		std::ostringstream table;
		write_report_table(table, r);
		CHECK(table.str().find("Effectiveness") == std::string::npos);
	}
}

TEST_CASE("aggregate: rank rows sum to M(M+1)/2") {
	Rng rng(5);
	for (int trial = 0; trial < 100; ++trial) {
		const std::size_t m = 1 + rng.index(9);
		std::vector<std::string> methods{"none"};
		for (std::size_t i = 1; i < m; ++i) {
			methods.push_back("m" + std::to_string(i));
		}
		std::vector<std::vector<double>> means(1 + rng.index(5), std::vector<double>(m));
		for (auto &row : means) {
			for (auto &x : row) {
				x = 1.0 + static_cast<double>(rng.index(4)) * 0.1; // plenty of ties
			}
		}
		const auto r = aggregate_report(grid(methods, means));
		for (std::size_t d = 0; d < means.size(); ++d) {
			double sum = 0;
			for (const auto &method : methods) {
				sum += r.cell("d" + std::to_string(d), "f", method)->rank;
			}
			REQUIRE(sum == doctest::Approx(static_cast<double>(m * (m + 1)) / 2.0));
		}
	}
}

TEST_CASE("aggregate: gaps, significance and pairing") {
	std::vector<ScoreRecord> scores;
	for (int s = 0; s < 12; ++s) {
		const std::string id = "s" + std::to_string(s);
		scores.push_back({"d0", "f", "none", id, 1.0 + 0.01 * s});
		scores.push_back({"d0", "f", "grasynda", id, 0.8 + 0.01 * s});
		scores.push_back({"d0", "f", "jitter", id, 1.0 + 0.01 * s + (s % 2 ? 0.001 : -0.001)});
	}
	scores.push_back({"d1", "f", "none", "x", 1.0});
	const auto r = aggregate_report(scores);
	const auto *g = r.cell("d0", "f", "grasynda");
	REQUIRE(g->p_value);
	CHECK(*g->p_value < 0.05);
	CHECK(g->significant);
	const auto *j = r.cell("d0", "f", "jitter");
	REQUIRE(j->p_value);
	CHECK_FALSE(j->significant);
	CHECK_FALSE(r.cell("d0", "f", "none")->p_value);

	CHECK_FALSE(r.complete());
	CHECK_FALSE(r.cell("d1", "f", "grasynda")->present);
	CHECK_FALSE(r.warnings.empty());
	// Aggregates use the available cells only.
	CHECK(r.summary("f", "grasynda")->datasets == 1);
	CHECK(r.summary("f", "none")->datasets == 2);
	CHECK(r.effectiveness_of("grasynda")->cells == 1);
	CHECK(r.effectiveness_of("grasynda")->wins == 1);

	std::ostringstream csv;
	write_report_csv(csv, r);
	CHECK(csv.str().rfind("dataset,forecaster,method,mean_mase,rank,p_value\n", 0) == 0);
	CHECK(csv.str().find("d1,f,grasynda,NA,NA,NA") != std::string::npos);
	std::ostringstream table;
	write_report_table(table, r);
	CHECK(table.str().find("0.8") != std::string::npos);
	CHECK(table.str().find('*') != std::string::npos);
	CHECK(table.str().find("Avg. Rank") != std::string::npos);

	std::vector<ScoreRecord> dup{{"d", "f", "none", "a", 1.0}, {"d", "f", "none", "a", 2.0}};
	CHECK_THROWS_AS(aggregate_report(dup), DataError);
}

TEST_CASE("scores round trip") {
	const std::vector<ScoreRecord> scores{{"M3-M", "ridge", "none", "N1402", 0.123456789012345},
	                                      {"M3-M", "ridge", "grasynda", "N1402", 1.0 / 3.0}};
	std::ostringstream out;
	write_scores_csv(out, scores);
	std::istringstream in(out.str());
	const auto back = read_scores_csv(in);
	REQUIRE(back.size() == 2);
	CHECK(back[1].method == "grasynda");
	CHECK(back[0].mase == scores[0].mase);
	CHECK(back[1].mase == scores[1].mase);
	std::istringstream bad("dataset,forecaster,method,series_id,mase\na,b,c,d,x\n");
	CHECK_THROWS_AS(read_scores_csv(bad), DataError);
}

TEST_CASE("published grid fixture") {
	const auto scores = fixture::records();
	const auto r = aggregate_report(scores, "none");

	const auto *g = r.effectiveness_of("grasynda");
	REQUIRE(g);
	CHECK(g->wins == 13);
	CHECK(g->cells == 18);
	CHECK(*g->fraction == doctest::Approx(0.72).epsilon(0.01));
	CHECK(std::abs(*r.summary("NHITS", "grasynda")->average_rank - 3.1) <= 0.05);

	// The whole published effectiveness row.
	for (std::size_t m = 1; m < fixture::kMethods.size(); ++m) {
		CAPTURE(fixture::kMethods[m]);
		CHECK(std::abs(*r.effectiveness_of(fixture::kMethods[m])->fraction - fixture::kEffectiveness[m]) <= 0.006);
	}
	// Every published average rank, up to its one-decimal rounding.
	for (std::size_t f = 0; f < fixture::kForecasters.size(); ++f) {
		for (std::size_t m = 0; m < fixture::kMethods.size(); ++m) {
			CAPTURE(fixture::kForecasters[f]);
			CAPTURE(fixture::kMethods[m]);
			const double rank = *r.summary(fixture::kForecasters[f], fixture::kMethods[m])->average_rank;
			CHECK(std::abs(rank - fixture::kAverageRank[f][m]) <= 0.05 + 1e-9);
		}
	}
	// Average MASE rows are reproduced exactly up to the published rounding.
	CHECK(*r.summary("NHITS", "grasynda")->average_mase == doctest::Approx(1.117).epsilon(5e-4));
	CHECK(*r.summary("KAN", "snaive")->average_mase == doctest::Approx(1.404).epsilon(5e-4));
	// Seasonal naive ranks last everywhere except where a degenerate cell beats it.
	CHECK(*r.summary("NHITS", "snaive")->average_rank == 10.0);
	CHECK(*r.summary("KAN", "snaive")->average_rank == 10.0);
}

TEST_CASE("experiment grid") {
	Rng rng(6);
	std::vector<std::vector<double>> values;
	for (int i = 0; i < 6; ++i) {
		values.push_back(testing::seasonal_ar1(rng, 72, 12));
	}
	values.push_back({1, 2, 3}); // too short to split
	const auto c = testing::make_collection(values, 12, 12, 24, "synthetic-m");

	ExperimentOptions options;
	options.forecasters = {"snaive"};
	options.seed = 3;
	const std::vector<SeriesCollection> datasets{c};
	const auto result = run_experiment(datasets, options);
	CHECK(result.report.cells.size() == 2);
	CHECK(result.report.complete());
	CHECK(result.scores.size() == 12);
	CHECK_FALSE(result.warnings.empty());
	CHECK(result.report.effectiveness_of("grasynda"));

	options.forecasters = {"ridge", "snaive"};
	options.methods = {AugmentMethod::none, AugmentMethod::jitter};
	options.method_params = Config::parse_inline("jitter.sigma=0.05");
	const auto again = run_experiment(datasets, options);
	const auto twice = run_experiment(datasets, options);
	CHECK(again.report.cells.size() == 4);
	REQUIRE(again.scores.size() == twice.scores.size());
	for (std::size_t i = 0; i < again.scores.size(); ++i) {
		REQUIRE(again.scores[i].mase == twice.scores[i].mase);
	}

	options.forecasters = {"nhits"};
	CHECK_THROWS_AS(run_experiment(datasets, options), UsageError);
	options.forecasters = {"ridge"};
	options.method_params = Config::parse_inline("jitter.width=1");
	CHECK_THROWS_AS(run_experiment(datasets, options), UsageError);
}
