#include "grasynda/evaluation.hpp"

#include "grasynda/error.hpp"
#include "grasynda/parallel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace grasynda {

std::vector<double> seasonal_naive(std::span<const double> train, int period, int horizon) {
	if (period < 1 || horizon < 1) {
		throw UsageError("seasonal naive needs period >= 1 and horizon >= 1");
	}
	const auto m = static_cast<std::size_t>(period);
	if (train.size() < m) {
		throw DataError("seasonal naive needs at least one full period of history (T=" +
		                std::to_string(train.size()) + ", period=" + std::to_string(period) + ")");
	}
	std::vector<double> out(static_cast<std::size_t>(horizon));
	const std::size_t base = train.size() - m;
	for (std::size_t i = 0; i < out.size(); ++i) {
		out[i] = train[base + i % m];
	}
	return out;
}

std::vector<double> seasonal_naive(const TimeSeries &train, int horizon) {
	return seasonal_naive(train.values(), train.period(), horizon);
}

namespace {

struct WindowStats {
	double mean;
	double sd;
};

WindowStats window_stats(std::span<const double> w) {
	const double mean = std::accumulate(w.begin(), w.end(), 0.0) / static_cast<double>(w.size());
	double ss = 0.0;
	for (double x : w) {
		ss += (x - mean) * (x - mean);
	}
	return {mean, std::sqrt(ss / static_cast<double>(w.size()))};
}

bool is_flat(const WindowStats &s) {
	return s.sd <= 1e-12 * std::max(1.0, std::abs(s.mean));
}

} // namespace

LinearForecaster LinearForecaster::fit(const SeriesCollection &collection, int input_window, int horizon,
                                       double ridge_lambda) {
	if (input_window < 1 || horizon < 1) {
		throw UsageError("input window and horizon must be >= 1");
	}
	if (!(ridge_lambda >= 0.0) || !std::isfinite(ridge_lambda)) {
		throw UsageError("ridge lambda must be a finite non-negative number");
	}
	const auto l = static_cast<std::size_t>(input_window);
	const auto h = static_cast<std::size_t>(horizon);
	const std::size_t p = l + 1;

	Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
	Eigen::MatrixXd cross = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(h));
	double target_ss = 0.0;
	std::size_t rows = 0;
	bool any_long_enough = false;
	Eigen::VectorXd x(static_cast<Eigen::Index>(p));
	Eigen::VectorXd y(static_cast<Eigen::Index>(h));

	for (const auto &s : collection.series()) {
		const auto v = s.values();
		if (v.size() < l + h) {
			continue;
		}
		any_long_enough = true;
		for (std::size_t start = 0; start + l + h <= v.size(); ++start) {
			const auto stats = window_stats(v.subspan(start, l));
			if (is_flat(stats)) {
				continue;
			}
			for (std::size_t i = 0; i < l; ++i) {
				x[static_cast<Eigen::Index>(i)] = (v[start + i] - stats.mean) / stats.sd;
			}
			x[static_cast<Eigen::Index>(l)] = 1.0;
			for (std::size_t j = 0; j < h; ++j) {
				y[static_cast<Eigen::Index>(j)] = (v[start + l + j] - stats.mean) / stats.sd;
			}
			gram.selfadjointView<Eigen::Lower>().rankUpdate(x);
			cross.noalias() += x * y.transpose();
			target_ss += y.squaredNorm();
			++rows;
		}
	}
	if (!any_long_enough) {
		throw DataError("no series has at least input_window + horizon = " + std::to_string(l + h) + " observations");
	}
	gram = gram.selfadjointView<Eigen::Lower>();
	Eigen::MatrixXd system = gram;
	system.diagonal().array() += ridge_lambda;

	const Eigen::LDLT<Eigen::MatrixXd> ldlt(system);
	const auto d = ldlt.vectorD().cwiseAbs();
	if (ldlt.info() != Eigen::Success || rows == 0 || d.minCoeff() <= 1e-12 * std::max(1.0, d.maxCoeff())) {
		throw UsageError("ridge system is singular; use a ridge lambda > 0");
	}
	const Eigen::MatrixXd beta = ldlt.solve(cross);

	LinearForecaster model;
	model.input_window_ = input_window;
	model.horizon_ = horizon;
	model.rows_ = rows;
	model.coefficients_.resize(p * h);
	for (std::size_t i = 0; i < p; ++i) {
		for (std::size_t j = 0; j < h; ++j) {
			model.coefficients_[i * h + j] = beta(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
		}
	}
	// ||XB - Y||^2 = tr(B'GB) - 2 tr(B'C) + ||Y||^2
	const double fit_term = (beta.transpose() * gram * beta).trace();
	const double cross_term = (beta.transpose() * cross).trace();
	model.training_sse_ = std::max(0.0, fit_term - 2.0 * cross_term + target_ss);
	return model;
}

std::vector<double> LinearForecaster::predict(std::span<const double> history) const {
	if (history.empty()) {
		throw UsageError("cannot forecast from an empty history");
	}
	const auto l = static_cast<std::size_t>(input_window_);
	const auto h = static_cast<std::size_t>(horizon_);
	std::vector<double> window(l);
	if (history.size() >= l) {
		std::copy(history.end() - static_cast<std::ptrdiff_t>(l), history.end(), window.begin());
	} else {
		const std::size_t pad = l - history.size();
		std::fill(window.begin(), window.begin() + static_cast<std::ptrdiff_t>(pad), history.front());
		std::copy(history.begin(), history.end(), window.begin() + static_cast<std::ptrdiff_t>(pad));
	}
	const auto stats = window_stats(window);
	std::vector<double> out(h, stats.mean);
	if (is_flat(stats)) {
		return out;
	}
	for (std::size_t j = 0; j < h; ++j) {
		double z = coefficients_[l * h + j];
		for (std::size_t i = 0; i < l; ++i) {
			z += coefficients_[i * h + j] * (window[i] - stats.mean) / stats.sd;
		}
		out[j] = stats.mean + stats.sd * z;
	}
	return out;
}

std::optional<double> mase(std::span<const double> predictions, std::span<const double> actuals,
                           std::span<const double> train) {
	if (predictions.size() != actuals.size() || predictions.empty()) {
		throw UsageError("MASE needs equally long, non-empty predictions and actuals");
	}
	if (train.size() < 2) {
		throw DataError("MASE needs at least two training observations");
	}
	double scale = 0.0;
	for (std::size_t t = 1; t < train.size(); ++t) {
		scale += std::abs(train[t] - train[t - 1]);
	}
	scale /= static_cast<double>(train.size() - 1);
	if (!(scale > 0.0)) {
		return std::nullopt;
	}
	double mae = 0.0;
	for (std::size_t i = 0; i < predictions.size(); ++i) {
		mae += std::abs(predictions[i] - actuals[i]);
	}
	mae /= static_cast<double>(predictions.size());
	return mae / scale;
}

namespace {

struct SignedRanks {
	std::vector<long> doubled; // 2 * average rank of |d|, so ties stay integral
	long w_plus_doubled = 0;
	double tie_correction = 0.0; // sum of t^3 - t over tie groups
};

SignedRanks signed_ranks(std::span<const double> differences) {
	const std::size_t n = differences.size();
	std::vector<std::size_t> order(n);
	std::iota(order.begin(), order.end(), std::size_t{0});
	std::sort(order.begin(), order.end(),
	          [&](std::size_t a, std::size_t b) { return std::abs(differences[a]) < std::abs(differences[b]); });
	SignedRanks out;
	out.doubled.assign(n, 0);
	for (std::size_t i = 0; i < n;) {
		std::size_t j = i;
		while (j + 1 < n && std::abs(differences[order[j + 1]]) == std::abs(differences[order[i]])) {
			++j;
		}
		// Positions i..j (0-based) share rank ((i+1) + (j+1)) / 2.
		const long doubled = static_cast<long>(i + j + 2);
		for (std::size_t k = i; k <= j; ++k) {
			out.doubled[order[k]] = doubled;
		}
		const double t = static_cast<double>(j - i + 1);
		out.tie_correction += t * t * t - t;
		i = j + 1;
	}
	for (std::size_t i = 0; i < n; ++i) {
		if (differences[i] > 0.0) {
			out.w_plus_doubled += out.doubled[i];
		}
	}
	return out;
}

void require_nonzero(std::span<const double> differences) {
	if (differences.empty()) {
		throw UsageError("signed-rank test needs at least one non-zero difference");
	}
	for (double d : differences) {
		if (d == 0.0 || !std::isfinite(d)) {
			throw UsageError("signed-rank differences must be finite and non-zero");
		}
	}
}

} // namespace

double wilcoxon_exact_p(std::span<const double> differences) {
	require_nonzero(differences);
	const auto ranks = signed_ranks(differences);
	const long total = std::accumulate(ranks.doubled.begin(), ranks.doubled.end(), 0L);
	// counts[s]: number of sign assignments whose doubled positive-rank sum is s.
	std::vector<double> counts(static_cast<std::size_t>(total) + 1, 0.0);
	counts[0] = 1.0;
	long reach = 0;
	for (long r : ranks.doubled) {
		for (long s = reach; s >= 0; --s) {
			counts[static_cast<std::size_t>(s + r)] += counts[static_cast<std::size_t>(s)];
		}
		reach += r;
	}
	double lower = 0.0;
	double upper = 0.0;
	for (long s = 0; s <= total; ++s) {
		if (s <= ranks.w_plus_doubled) {
			lower += counts[static_cast<std::size_t>(s)];
		}
		if (s >= ranks.w_plus_doubled) {
			upper += counts[static_cast<std::size_t>(s)];
		}
	}
	const double all = std::ldexp(1.0, static_cast<int>(differences.size()));
	return std::min(1.0, 2.0 * std::min(lower, upper) / all);
}

double wilcoxon_normal_p(std::span<const double> differences) {
	require_nonzero(differences);
	const auto ranks = signed_ranks(differences);
	const double n = static_cast<double>(differences.size());
	const double w = static_cast<double>(ranks.w_plus_doubled) / 2.0;
	const double mean = n * (n + 1.0) / 4.0;
	const double var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - ranks.tie_correction / 48.0;
	if (!(var > 0.0)) {
		return 1.0;
	}
	const double dev = std::max(0.0, std::abs(w - mean) - 0.5);
	const double z = dev / std::sqrt(var);
	return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

double wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b) {
	if (a.size() != b.size()) {
		throw UsageError("signed-rank test needs paired samples of equal length");
	}
	std::vector<double> d;
	d.reserve(a.size());
	for (std::size_t i = 0; i < a.size(); ++i) {
		const double diff = a[i] - b[i];
		if (!std::isfinite(diff)) {
			throw DataError("signed-rank test received a non-finite score");
		}
		if (diff != 0.0) {
			d.push_back(diff);
		}
	}
	if (d.empty()) {
		return 1.0;
	}
	if (d.size() < kWilcoxonMinPairs) {
		throw UsageError("signed-rank test needs at least " + std::to_string(kWilcoxonMinPairs) +
		                 " non-zero differences, got " + std::to_string(d.size()));
	}
	return d.size() <= kWilcoxonExactLimit ? wilcoxon_exact_p(d) : wilcoxon_normal_p(d);
}

bool is_known_forecaster(std::string_view name) {
	return name == "snaive" || name == "ridge";
}

ExperimentResult run_experiment(std::span<const SeriesCollection> datasets, const ExperimentOptions &options) {
	if (options.methods.empty() || options.forecasters.empty()) {
		throw UsageError("experiment needs at least one method and one forecaster");
	}
	for (const auto &f : options.forecasters) {
		if (!is_known_forecaster(f)) {
			throw UsageError("unknown forecaster '" + f + "' (expected snaive or ridge)");
		}
	}
	ExperimentResult result;
	for (const auto &dataset : datasets) {
		const int h = dataset.horizon();
		std::vector<TimeSeries> train;
		std::vector<std::vector<double>> test;
		for (const auto &s : dataset.series()) {
			if (s.size() <= static_cast<std::size_t>(h)) {
				result.warnings.push_back(dataset.name() + "/" + s.id() + ": too short for horizon, skipped");
				continue;
			}
			auto parts = split(s, h);
			train.push_back(std::move(parts.train));
			test.push_back(std::move(parts.test));
		}
		if (train.empty()) {
			result.warnings.push_back(dataset.name() + ": no series long enough to evaluate");
			continue;
		}
		const SeriesCollection train_set(dataset.metadata(), train);

		for (const AugmentMethod method : options.methods) {
			const std::string name(method_name(method));
			AugmenterSpec spec;
			spec.method = method;
			spec.params = options.method_params.subset(name + ".");
			spec.seed = options.seed;
			spec.threads = options.threads;
			const SeriesCollection augmented = augment(train_set, spec);

			for (const auto &forecaster : options.forecasters) {
				std::optional<LinearForecaster> model;
				if (forecaster == "ridge") {
					model = LinearForecaster::fit(augmented, dataset.input_window(), h, options.ridge_lambda);
				}
				std::vector<std::optional<double>> scores(train.size());
				std::vector<std::string> notes(train.size());
				parallel_for(train.size(), options.threads, [&](std::size_t i) {
					const auto history = train[i].values();
					std::vector<double> prediction;
					if (model) {
						prediction = model->predict(history);
					} else if (history.size() >= static_cast<std::size_t>(train[i].period())) {
						prediction = seasonal_naive(train[i], h);
					} else {
						notes[i] = "shorter than one period, no seasonal naive forecast";
						return;
					}
					scores[i] = mase(prediction, test[i], history);
					if (!scores[i]) {
						notes[i] = "constant training series, MASE undefined";
					}
				});
				for (std::size_t i = 0; i < train.size(); ++i) {
					if (scores[i]) {
						result.scores.push_back({dataset.name(), forecaster, name, train[i].id(), *scores[i]});
					} else {
						result.warnings.push_back(dataset.name() + "/" + train[i].id() + " [" + forecaster + ", " +
						                          name + "]: " + notes[i] + ", excluded");
					}
				}
			}
		}
	}
	result.report = aggregate_report(result.scores, std::string(method_name(AugmentMethod::none)));
	result.report.warnings.insert(result.report.warnings.begin(), result.warnings.begin(), result.warnings.end());
	return result;
}

} // namespace grasynda
