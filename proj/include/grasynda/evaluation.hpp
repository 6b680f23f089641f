#pragma once

#include "grasynda/baselines.hpp"
#include "grasynda/config.hpp"
#include "grasynda/series.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace grasynda {

// ---------------------------------------------------------------------------
// Forecasters
// ---------------------------------------------------------------------------

// prediction[i] = train[T - period + (i mod period)], 0-based i.
std::vector<double> seasonal_naive(std::span<const double> train, int period, int horizon);
std::vector<double> seasonal_naive(const TimeSeries &train, int horizon);

// Global direct multi-output ridge autoregression. Every length-l window of
// every series is z-normalised by its own mean and standard deviation and
// regressed, with an intercept, on the next h values normalised the same way.
// The penalty applies to all coefficients, so a huge lambda forecasts the
// window mean. Constant windows carry no shape information and are left out
// of the fit; forecasting from one returns its level.
class LinearForecaster {
public:
	static LinearForecaster fit(const SeriesCollection &collection, int input_window, int horizon,
	                            double ridge_lambda);

	// Uses the last `input_window` values of `history`; shorter histories are
	// left-padded with their first value.
	std::vector<double> predict(std::span<const double> history) const;

	int input_window() const noexcept {
		return input_window_;
	}
	int horizon() const noexcept {
		return horizon_;
	}
	// (input_window + 1) x horizon, row-major; the last row is the intercept.
	const std::vector<double> &coefficients() const noexcept {
		return coefficients_;
	}
	std::size_t training_rows() const noexcept {
		return rows_;
	}
	// Sum of squared errors over the normalised training targets.
	double training_sse() const noexcept {
		return training_sse_;
	}

private:
	int input_window_ = 0;
	int horizon_ = 0;
	std::vector<double> coefficients_;
	std::size_t rows_ = 0;
	double training_sse_ = 0.0;
};

// ---------------------------------------------------------------------------
// Scoring and tests
// ---------------------------------------------------------------------------

// MAE of the forecast over the in-sample MAE of the one-step naive forecast.
// nullopt when the training series has no variation (the scale is zero).
std::optional<double> mase(std::span<const double> predictions, std::span<const double> actuals,
                           std::span<const double> train);

// Two-sided Wilcoxon signed-rank p-value of paired samples. Zero differences
// are dropped; ties get average ranks. Exact null distribution for n <= 25,
// normal approximation with continuity correction above. All-zero
// differences give p = 1; 1..4 non-zero differences are rejected.
double wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b);

// The two routes, over non-zero differences.
double wilcoxon_exact_p(std::span<const double> differences);
double wilcoxon_normal_p(std::span<const double> differences);

inline constexpr std::size_t kWilcoxonExactLimit = 25;
inline constexpr std::size_t kWilcoxonMinPairs = 5;
inline constexpr double kSignificanceLevel = 0.05;

// ---------------------------------------------------------------------------
// Aggregation
// ---------------------------------------------------------------------------

struct ScoreRecord {
	std::string dataset;
	std::string forecaster;
	std::string method;
	std::string series_id;
	double mase = 0.0;
};

struct ReportCell {
	std::string dataset;
	std::string forecaster;
	std::string method;
	bool present = false; // false marks a gap in the grid
	double mean_mase = 0.0;
	std::size_t series = 0;
	double rank = 0.0;
	// Against the baseline over paired per-series scores; unset for the
	// baseline itself or when too few pairs exist.
	std::optional<double> p_value;
	bool significant = false; // p < 0.05 and a lower mean than the baseline
};

struct MethodSummary {
	std::string forecaster;
	std::string method;
	std::optional<double> average_mase;
	std::optional<double> average_rank;
	std::size_t datasets = 0;
};

struct Effectiveness {
	std::string method;
	std::size_t wins = 0;
	std::size_t cells = 0;
	std::optional<double> fraction; // unset for the baseline or with no cells
};

struct EvaluationReport {
	std::string baseline;
	std::vector<std::string> datasets;
	std::vector<std::string> forecasters;
	std::vector<std::string> methods;
	std::vector<ReportCell> cells; // forecaster-major, then dataset, then method
	std::vector<MethodSummary> summaries;
	// Empty when the baseline is not among the methods.
	std::vector<Effectiveness> effectiveness;
	std::vector<std::string> warnings;

	const ReportCell *cell(std::string_view dataset, std::string_view forecaster, std::string_view method) const;
	const MethodSummary *summary(std::string_view forecaster, std::string_view method) const;
	const Effectiveness *effectiveness_of(std::string_view method) const;
	bool complete() const;
};

// Means per (dataset, forecaster, method); ranks within each
// (forecaster, dataset) row with ties averaged; averages over datasets;
// effectiveness = share of (forecaster, dataset) rows where the method's
// mean beats the baseline's. Labels keep first-appearance order.
EvaluationReport aggregate_report(std::span<const ScoreRecord> scores, const std::string &baseline = "none");

// Long-form `dataset,forecaster,method,mean_mase,rank,p_value`; gaps are NA.
void write_report_csv(std::ostream &out, const EvaluationReport &report);
// `forecaster,method,average_mase,average_rank,effectiveness`.
void write_summary_csv(std::ostream &out, const EvaluationReport &report);
// Aligned text, one block per forecaster, datasets as rows.
void write_report_table(std::ostream &out, const EvaluationReport &report);

// Per-series scores as `dataset,forecaster,method,series_id,mase`.
void write_scores_csv(std::ostream &out, std::span<const ScoreRecord> scores);
std::vector<ScoreRecord> read_scores_csv(std::istream &in, const std::string &source_name = "<scores>");

// ---------------------------------------------------------------------------
// Experiment grid
// ---------------------------------------------------------------------------

struct ExperimentOptions {
	std::vector<AugmentMethod> methods{AugmentMethod::none, AugmentMethod::grasynda};
	std::vector<std::string> forecasters{"snaive", "ridge"};
	// `<method>.<param>` entries.
	Config method_params;
	std::uint64_t seed = 0;
	double ridge_lambda = 1e-3;
	int threads = 1;
};

struct ExperimentResult {
	std::vector<ScoreRecord> scores;
	std::vector<std::string> warnings;
	EvaluationReport report;
};

bool is_known_forecaster(std::string_view name);

// For every dataset: hold out the last h points, augment the training part
// with each method, fit each forecaster, score every series by MASE and
// aggregate. Series too short to split or with undefined MASE are skipped
// with a warning.
ExperimentResult run_experiment(std::span<const SeriesCollection> datasets, const ExperimentOptions &options);

} // namespace grasynda
