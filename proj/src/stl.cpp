#include "grasynda/stl.hpp"

#include "grasynda/error.hpp"

#include <algorithm>
#include <cmath>

namespace grasynda {

int next_odd(double x) {
	int n = static_cast<int>(std::ceil(x));
	return n % 2 == 0 ? n + 1 : n;
}

bool stl_applicable(std::size_t length, int period) {
	return period >= 2 && length >= 2 * static_cast<std::size_t>(period);
}

namespace {

// The LOESS helpers index points by their 1-based position, which is also
// the abscissa of each point; `left`/`right` are inclusive positions.

// Tricube-weighted local fit of degree 0 or 1 evaluated at abscissa `xs`.
// Returns false when every weight in the window is zero.
bool loess_estimate(std::span<const double> y, int window, int degree, double xs, int left, int right,
                    std::span<double> w, const std::vector<double> *robustness, double &out) {
	const int n = static_cast<int>(y.size());
	const double range = static_cast<double>(n) - 1.0;
	double h = std::max(xs - left, right - xs);
	if (window > n) {
		h += static_cast<double>((window - n) / 2);
	}
	const double h9 = 0.999 * h;
	const double h1 = 0.001 * h;

	double total = 0.0;
	for (int j = left; j <= right; ++j) {
		double &wj = w[j - 1];
		wj = 0.0;
		const double r = std::abs(j - xs);
		if (r <= h9) {
			if (r <= h1) {
				wj = 1.0;
			} else {
				const double q = r / h;
				const double c = 1.0 - q * q * q;
				wj = c * c * c;
			}
			if (robustness) {
				wj *= (*robustness)[j - 1];
			}
			total += wj;
		}
	}
	if (total <= 0.0) {
		return false;
	}
	for (int j = left; j <= right; ++j) {
		w[j - 1] /= total;
	}
	if (h > 0.0 && degree > 0) {
		double mean = 0.0;
		for (int j = left; j <= right; ++j) {
			mean += w[j - 1] * j;
		}
		double slope = xs - mean;
		double spread = 0.0;
		for (int j = left; j <= right; ++j) {
			spread += w[j - 1] * (j - mean) * (j - mean);
		}
		if (std::sqrt(spread) > 0.001 * range) {
			slope /= spread;
			for (int j = left; j <= right; ++j) {
				w[j - 1] *= slope * (j - mean) + 1.0;
			}
		}
	}
	double fit = 0.0;
	for (int j = left; j <= right; ++j) {
		fit += w[j - 1] * y[j - 1];
	}
	out = fit;
	return true;
}

// LOESS smooth of every point, evaluating every `jump`-th point and
// interpolating linearly in between.
void loess_smooth(std::span<const double> y, int window, int degree, int jump, const std::vector<double> *robustness,
                  std::span<double> out, std::vector<double> &work) {
	const int n = static_cast<int>(y.size());
	work.resize(y.size());
	if (n < 2) {
		out[0] = y[0];
		return;
	}
	const int step = std::min(jump, n - 1);
	int left = 1;
	int right = n;
	auto estimate = [&](int i) {
		double fit = 0.0;
		out[i - 1] = loess_estimate(y, window, degree, i, left, right, work, robustness, fit) ? fit : y[i - 1];
	};

	if (window >= n) {
		left = 1;
		right = n;
		for (int i = 1; i <= n; i += step) {
			estimate(i);
		}
	} else if (step == 1) {
		const int half = (window + 1) / 2;
		left = 1;
		right = window;
		for (int i = 1; i <= n; ++i) {
			if (i > half && right != n) {
				++left;
				++right;
			}
			estimate(i);
		}
	} else {
		const int half = (window + 1) / 2;
		for (int i = 1; i <= n; i += step) {
			if (i < half) {
				left = 1;
				right = window;
			} else if (i >= n - half + 1) {
				left = n - window + 1;
				right = n;
			} else {
				left = i - half + 1;
				right = window + i - half;
			}
			estimate(i);
		}
	}

	if (step != 1) {
		for (int i = 1; i <= n - step; i += step) {
			const double delta = (out[i + step - 1] - out[i - 1]) / step;
			for (int j = i + 1; j <= i + step - 1; ++j) {
				out[j - 1] = out[i - 1] + delta * (j - i);
			}
		}
		const int last = ((n - 1) / step) * step + 1;
		if (last != n) {
			estimate(n);
			if (last != n - 1) {
				const double delta = (out[n - 1] - out[last - 1]) / (n - last);
				for (int j = last + 1; j <= n - 1; ++j) {
					out[j - 1] = out[last - 1] + delta * (j - last);
				}
			}
		}
	}
}

// Smooths each cycle-subseries and extends it by one point on both ends.
// `extended` has length n + 2*period.
void seasonal_smooth(std::span<const double> y, int period, int window, int degree, int jump,
                     const std::vector<double> *robustness, std::vector<double> &extended) {
	const int n = static_cast<int>(y.size());
	extended.assign(static_cast<std::size_t>(n + 2 * period), 0.0);
	std::vector<double> sub;
	std::vector<double> sub_rw;
	std::vector<double> smoothed;
	std::vector<double> work;
	for (int j = 0; j < period; ++j) {
		const int k = (n - 1 - j) / period + 1;
		sub.resize(static_cast<std::size_t>(k));
		sub_rw.resize(static_cast<std::size_t>(k));
		for (int i = 0; i < k; ++i) {
			sub[i] = y[i * period + j];
			if (robustness) {
				sub_rw[i] = (*robustness)[i * period + j];
			}
		}
		const std::vector<double> *sub_robustness = robustness ? &sub_rw : nullptr;
		smoothed.assign(static_cast<std::size_t>(k + 2), 0.0);
		loess_smooth(sub, window, degree, jump, sub_robustness, std::span<double>(smoothed).subspan(1, k), work);

		work.resize(static_cast<std::size_t>(k));
		double fit = 0.0;
		const int right = std::min(window, k);
		smoothed[0] = loess_estimate(sub, window, degree, 0.0, 1, right, work, sub_robustness, fit) ? fit : smoothed[1];
		const int left = std::max(1, k - window + 1);
		smoothed[k + 1] =
		    loess_estimate(sub, window, degree, k + 1.0, left, k, work, sub_robustness, fit) ? fit : smoothed[k];
		for (int m = 0; m < k + 2; ++m) {
			extended[m * period + j] = smoothed[m];
		}
	}
}

std::vector<double> moving_average(std::span<const double> x, int window) {
	const int n = static_cast<int>(x.size());
	const int out_n = n - window + 1;
	std::vector<double> out(static_cast<std::size_t>(std::max(out_n, 0)));
	if (out_n <= 0) {
		return out;
	}
	double sum = 0.0;
	for (int i = 0; i < window; ++i) {
		sum += x[i];
	}
	out[0] = sum / window;
	for (int i = 1; i < out_n; ++i) {
		sum += x[i + window - 1] - x[i - 1];
		out[i] = sum / window;
	}
	return out;
}

std::vector<double> robustness_weights(std::span<const double> y, std::span<const double> fit) {
	const std::size_t n = y.size();
	std::vector<double> r(n);
	double scale = 0.0;
	for (std::size_t i = 0; i < n; ++i) {
		r[i] = std::abs(y[i] - fit[i]);
		scale = std::max(scale, std::abs(y[i]));
	}
	std::vector<double> sorted = r;
	const std::size_t mid1 = n / 2;
	const std::size_t mid2 = n - mid1 - 1;
	std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid1), sorted.end());
	const double a = sorted[mid1];
	std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid2), sorted.end());
	const double b = sorted[mid2];
	const double cmad = 3.0 * (a + b); // six times the median absolute residual

	std::vector<double> rw(n, 1.0);
	// An (almost) exact fit leaves nothing to downweight.
	if (cmad <= 1e-12 * scale || cmad == 0.0) {
		return rw;
	}
	const double c9 = 0.999 * cmad;
	const double c1 = 0.001 * cmad;
	for (std::size_t i = 0; i < n; ++i) {
		if (r[i] <= c1) {
			rw[i] = 1.0;
		} else if (r[i] <= c9) {
			const double q = r[i] / cmad;
			rw[i] = (1.0 - q * q) * (1.0 - q * q);
		} else {
			rw[i] = 0.0;
		}
	}
	return rw;
}

int odd_at_least_three(int w) {
	w = std::max(3, w);
	return w % 2 == 0 ? w + 1 : w;
}

} // namespace

StlDecomposition stl_decompose(std::span<const double> y, int period, const StlParams &params) {
	if (period < 2) {
		throw UsageError("STL needs a seasonal period >= 2");
	}
	if (!stl_applicable(y.size(), period)) {
		throw DataError("series too short for STL: need at least " + std::to_string(2 * period) + " observations, got " +
		                std::to_string(y.size()));
	}
	if (params.inner_iterations < 1 || params.outer_iterations < 0) {
		throw UsageError("STL iteration counts must be inner >= 1, outer >= 0");
	}
	const int n = static_cast<int>(y.size());
	const int ns = odd_at_least_three(params.seasonal_window);
	const int nt = odd_at_least_three(params.trend_window > 0
	                                      ? params.trend_window
	                                      : next_odd(1.5 * period / (1.0 - 1.5 / static_cast<double>(ns))));
	const int nl = odd_at_least_three(params.lowpass_window > 0 ? params.lowpass_window : next_odd(period));
	auto jump_of = [](int window) { return std::max(1, static_cast<int>(std::ceil(window / 10.0))); };
	const int ns_jump = jump_of(ns);
	const int nt_jump = jump_of(nt);
	const int nl_jump = jump_of(nl);

	std::vector<double> trend(static_cast<std::size_t>(n), 0.0);
	std::vector<double> seasonal(static_cast<std::size_t>(n), 0.0);
	std::vector<double> detrended(static_cast<std::size_t>(n));
	std::vector<double> deseasonal(static_cast<std::size_t>(n));
	std::vector<double> extended;
	std::vector<double> lowpass(static_cast<std::size_t>(n));
	std::vector<double> work;
	std::vector<double> robustness;
	bool robust = false;

	for (int outer = 0;; ++outer) {
		const std::vector<double> *rw = robust ? &robustness : nullptr;
		for (int inner = 0; inner < params.inner_iterations; ++inner) {
			for (int i = 0; i < n; ++i) {
				detrended[i] = y[i] - trend[i];
			}
			seasonal_smooth(detrended, period, ns, params.seasonal_degree, ns_jump, rw, extended);
			auto filtered = moving_average(extended, period);
			filtered = moving_average(filtered, period);
			filtered = moving_average(filtered, 3);
			loess_smooth(filtered, nl, params.lowpass_degree, nl_jump, nullptr, lowpass, work);
			for (int i = 0; i < n; ++i) {
				seasonal[i] = extended[period + i] - lowpass[i];
				deseasonal[i] = y[i] - seasonal[i];
			}
			loess_smooth(deseasonal, nt, params.trend_degree, nt_jump, rw, trend, work);
		}
		if (outer >= params.outer_iterations) {
			break;
		}
		std::vector<double> fit(static_cast<std::size_t>(n));
		for (int i = 0; i < n; ++i) {
			fit[i] = trend[i] + seasonal[i];
		}
		robustness = robustness_weights(y, fit);
		robust = true;
	}

	// Zero-mean each full cycle; a trailing partial cycle takes the shift of
	// the last full one.
	const int cycles = n / period;
	double shift = 0.0;
	for (int c = 0; c <= cycles; ++c) {
		const int begin = c * period;
		const int end = std::min(n, begin + period);
		if (begin >= end) {
			break;
		}
		if (end - begin == period) {
			double sum = 0.0;
			for (int i = begin; i < end; ++i) {
				sum += seasonal[i];
			}
			shift = sum / period;
		}
		for (int i = begin; i < end; ++i) {
			seasonal[i] -= shift;
			trend[i] += shift;
		}
	}

	StlDecomposition out;
	out.period = period;
	out.remainder.resize(static_cast<std::size_t>(n));
	for (int i = 0; i < n; ++i) {
		out.remainder[i] = y[i] - trend[i] - seasonal[i];
	}
	out.trend = std::move(trend);
	out.seasonal = std::move(seasonal);
	return out;
}

StlDecomposition stl_decompose(const TimeSeries &series, const StlParams &params) {
	return stl_decompose(series.values(), series.period(), params);
}

std::vector<double> recombine(const StlDecomposition &decomposition, std::span<const double> new_remainder) {
	if (new_remainder.size() != decomposition.size()) {
		throw UsageError("recombine: remainder length " + std::to_string(new_remainder.size()) +
		                 " does not match decomposition length " + std::to_string(decomposition.size()));
	}
	std::vector<double> out(new_remainder.size());
	for (std::size_t t = 0; t < out.size(); ++t) {
		out[t] = decomposition.trend[t] + decomposition.seasonal[t] + new_remainder[t];
	}
	return out;
}

} // namespace grasynda
