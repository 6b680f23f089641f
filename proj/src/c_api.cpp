#include "grasynda/grasynda.h"

#include "grasynda/baselines.hpp"
#include "grasynda/error.hpp"
#include "grasynda/evaluation.hpp"
#include "grasynda/generator.hpp"
#include "grasynda/quantile_graph.hpp"
#include "grasynda/series.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

struct grasynda_collection {
	grasynda::CollectionMetadata metadata;
	std::vector<grasynda::TimeSeries> series;
	std::unordered_set<std::string> ids;

	grasynda::SeriesCollection view() const {
		return grasynda::SeriesCollection(metadata, series);
	}
};

struct grasynda_graph {
	grasynda::QuantileGraph graph;
};

struct grasynda_report {
	std::vector<grasynda::ScoreRecord> scores;
	grasynda::EvaluationReport report;
	std::vector<std::string> warnings;
};

namespace {

thread_local std::string last_error;

int fail(int code, std::string message) {
	last_error = std::move(message);
	return code;
}

// Runs `fn`, translating exceptions into status codes.
template <class Fn> int guarded(Fn &&fn) noexcept {
	try {
		fn();
		return GRASYNDA_OK;
	} catch (const grasynda::Error &e) {
		return fail(static_cast<int>(e.kind()), e.what());
	} catch (const std::bad_alloc &) {
		return fail(GRASYNDA_ERR_INTERNAL, "out of memory");
	} catch (const std::exception &e) {
		return fail(GRASYNDA_ERR_INTERNAL, e.what());
	} catch (...) {
		return fail(GRASYNDA_ERR_INTERNAL, "unknown error");
	}
}

char *copy_string(const std::string &s) {
	auto *out = static_cast<char *>(std::malloc(s.size() + 1));
	if (out == nullptr) {
		throw std::bad_alloc();
	}
	std::memcpy(out, s.c_str(), s.size() + 1);
	return out;
}

void require(bool condition, const char *message) {
	if (!condition) {
		throw grasynda::UsageError(message);
	}
}

std::vector<std::string> split_list(const char *list) {
	std::vector<std::string> out;
	if (list == nullptr) {
		return out;
	}
	std::stringstream ss(list);
	std::string item;
	while (std::getline(ss, item, ',')) {
		const auto b = item.find_first_not_of(" \t");
		const auto e = item.find_last_not_of(" \t");
		if (b != std::string::npos) {
			out.push_back(item.substr(b, e - b + 1));
		}
	}
	return out;
}

grasynda::Config inline_params(const char *params) {
	return params == nullptr ? grasynda::Config{} : grasynda::Config::parse_inline(params);
}

std::optional<bool> stl_choice(int use_stl) {
	if (use_stl < 0) {
		return std::nullopt;
	}
	return use_stl != 0;
}

grasynda_collection *wrap(const grasynda::SeriesCollection &c) {
	auto *out = new grasynda_collection{c.metadata(), c.series(), {}};
	for (const auto &s : out->series) {
		out->ids.insert(s.id());
	}
	return out;
}

double or_nan(const std::optional<double> &v) {
	return v.value_or(std::numeric_limits<double>::quiet_NaN());
}

} // namespace

extern "C" {

const char *grasynda_version(void) {
	return "0.1.0";
}

const char *grasynda_last_error(void) {
	return last_error.c_str();
}

void grasynda_string_free(char *s) {
	std::free(s);
}

int grasynda_metadata_preset(const char *name, int *period, int *horizon, int *input_window) {
	if (name == nullptr) {
		return 0;
	}
	const auto preset = grasynda::metadata_preset(name);
	if (!preset) {
		return 0;
	}
	if (period) {
		*period = preset->period;
	}
	if (horizon) {
		*horizon = preset->horizon;
	}
	if (input_window) {
		*input_window = preset->input_window;
	}
	return 1;
}

int grasynda_collection_load(const char *path, const char *name, int period, int horizon, int input_window,
                             grasynda_collection **out) {
	return guarded([&] {
		require(path != nullptr && out != nullptr, "collection_load: null argument");
		grasynda::CollectionMetadata m{name ? name : "", period, horizon, input_window};
		*out = wrap(grasynda::load_collection(path, m));
	});
}

int grasynda_collection_create(const char *name, int period, int horizon, int input_window,
                               grasynda_collection **out) {
	return guarded([&] {
		require(out != nullptr, "collection_create: null argument");
		require(period >= 1 && horizon >= 1 && input_window >= 1,
		        "collection_create: period, horizon and input window must be >= 1");
		*out = new grasynda_collection{{name ? name : "", period, horizon, input_window}, {}, {}};
	});
}

int grasynda_collection_add_series(grasynda_collection *c, const char *id, const double *values, size_t n) {
	return guarded([&] {
		require(c != nullptr && id != nullptr && (values != nullptr || n == 0), "collection_add_series: null argument");
		if (c->ids.count(id) != 0) {
			throw grasynda::DataError(std::string("duplicate series id '") + id + "'");
		}
		grasynda::TimeSeries s(id, c->metadata.period, std::vector<double>(values, values + n));
		c->ids.insert(s.id());
		c->series.push_back(std::move(s));
	});
}

int grasynda_collection_save(const grasynda_collection *c, const char *path) {
	return guarded([&] {
		require(c != nullptr && path != nullptr, "collection_save: null argument");
		grasynda::save_collection(path, c->view());
	});
}

int grasynda_collection_write(const grasynda_collection *c, char **out) {
	return guarded([&] {
		require(c != nullptr && out != nullptr, "collection_write: null argument");
		std::ostringstream os;
		grasynda::write_collection(os, c->view());
		*out = copy_string(os.str());
	});
}

void grasynda_collection_free(grasynda_collection *c) {
	delete c;
}

size_t grasynda_collection_size(const grasynda_collection *c) {
	return c ? c->series.size() : 0;
}

size_t grasynda_collection_total_observations(const grasynda_collection *c) {
	size_t total = 0;
	if (c) {
		for (const auto &s : c->series) {
			total += s.size();
		}
	}
	return total;
}

int grasynda_collection_period(const grasynda_collection *c) {
	return c ? c->metadata.period : 0;
}

int grasynda_collection_horizon(const grasynda_collection *c) {
	return c ? c->metadata.horizon : 0;
}

int grasynda_collection_input_window(const grasynda_collection *c) {
	return c ? c->metadata.input_window : 0;
}

int grasynda_collection_series(const grasynda_collection *c, size_t index, const char **id, const double **values,
                               size_t *n) {
	return guarded([&] {
		require(c != nullptr, "collection_series: null collection");
		require(index < c->series.size(), "collection_series: index out of range");
		const auto &s = c->series[index];
		if (id) {
			*id = s.id().c_str();
		}
		if (values) {
			*values = s.values().data();
		}
		if (n) {
			*n = s.size();
		}
	});
}

void grasynda_generator_options_default(grasynda_generator_options *options) {
	if (options) {
		*options = {0, 0, 1, grasynda::kDefaultQuantiles, -1, 1};
	}
}

int grasynda_generate(const grasynda_collection *in, const grasynda_generator_options *options,
                      grasynda_collection **out) {
	return guarded([&] {
		require(in != nullptr && options != nullptr && out != nullptr, "generate: null argument");
		grasynda::GeneratorConfig config;
		config.seed = options->seed;
		if (options->length > 0) {
			config.length = options->length;
		}
		config.replicas = options->replicas;
		config.quantiles = options->quantiles;
		config.use_stl = stl_choice(options->use_stl);
		const auto synthetic = grasynda::grasynda(in->view(), config, options->threads);
		std::vector<grasynda::TimeSeries> series;
		series.reserve(synthetic.size());
		for (const auto &s : synthetic) {
			series.push_back(s.series);
		}
		*out = wrap(grasynda::SeriesCollection(in->metadata, std::move(series)));
	});
}

int grasynda_stl_usage(const grasynda_collection *in, int use_stl, size_t *decomposed) {
	return guarded([&] {
		require(in != nullptr && decomposed != nullptr, "stl_usage: null argument");
		grasynda::GeneratorConfig config;
		config.use_stl = stl_choice(use_stl);
		size_t count = 0;
		for (const auto &s : in->series) {
			count += grasynda::uses_stl(s, config) ? 1 : 0;
		}
		*decomposed = count;
	});
}

int grasynda_augment(const grasynda_collection *in, const char *method, const char *params, uint64_t seed,
                     int threads, grasynda_collection **out) {
	return guarded([&] {
		require(in != nullptr && method != nullptr && out != nullptr, "augment: null argument");
		grasynda::AugmenterSpec spec;
		spec.method = grasynda::parse_method(method);
		spec.params = inline_params(params);
		spec.seed = seed;
		spec.threads = threads;
		*out = wrap(grasynda::augment(in->view(), spec));
	});
}

int grasynda_augment_params(const char *method, const char *params, int period, char **out) {
	return guarded([&] {
		require(method != nullptr && out != nullptr, "augment_params: null argument");
		const auto resolved = grasynda::resolved_params(grasynda::parse_method(method), inline_params(params), period);
		std::ostringstream os;
		resolved.write(os);
		*out = copy_string(os.str());
	});
}

int grasynda_graph_build(const double *values, size_t n, size_t quantiles, grasynda_graph **out) {
	return guarded([&] {
		require(values != nullptr && out != nullptr, "graph_build: null argument");
		*out = new grasynda_graph{grasynda::quantile_graph(std::span<const double>(values, n), quantiles)};
	});
}

int grasynda_graph_build_series(const grasynda_collection *c, size_t index, size_t quantiles, int use_stl,
                                grasynda_graph **out) {
	return guarded([&] {
		require(c != nullptr && out != nullptr, "graph_build_series: null argument");
		require(index < c->series.size(), "graph_build_series: index out of range");
		const auto &s = c->series[index];
		grasynda::GeneratorConfig config;
		config.use_stl = stl_choice(use_stl);
		if (grasynda::uses_stl(s, config)) {
			const auto dec = grasynda::stl_decompose(s);
			*out = new grasynda_graph{grasynda::quantile_graph(dec.remainder, quantiles)};
		} else {
			*out = new grasynda_graph{grasynda::quantile_graph(s.values(), quantiles)};
		}
	});
}

size_t grasynda_graph_states(const grasynda_graph *g) {
	return g ? g->graph.states() : 0;
}

int grasynda_graph_transition(const grasynda_graph *g, size_t from, size_t to, double *p) {
	return guarded([&] {
		require(g != nullptr && p != nullptr, "graph_transition: null argument");
		require(from < g->graph.states() && to < g->graph.states(), "graph_transition: state out of range");
		*p = g->graph.probability(from, to);
	});
}

int grasynda_graph_export(const grasynda_graph *g, const char *format, char **out) {
	return guarded([&] {
		require(g != nullptr && format != nullptr && out != nullptr, "graph_export: null argument");
		*out = copy_string(grasynda::export_graph(g->graph, grasynda::parse_graph_format(format)));
	});
}

void grasynda_graph_free(grasynda_graph *g) {
	delete g;
}

void grasynda_evaluate_options_default(grasynda_evaluate_options *options) {
	if (options) {
		*options = {"none,grasynda", "snaive,ridge", nullptr, 0, 1e-3, 1};
	}
}

int grasynda_evaluate(const grasynda_collection *const *datasets, size_t n, const grasynda_evaluate_options *options,
                      grasynda_report **out) {
	return guarded([&] {
		require(datasets != nullptr && options != nullptr && out != nullptr, "evaluate: null argument");
		require(n > 0, "evaluate: no datasets");
		std::vector<grasynda::SeriesCollection> collections;
		collections.reserve(n);
		for (size_t i = 0; i < n; ++i) {
			require(datasets[i] != nullptr, "evaluate: null dataset");
			collections.push_back(datasets[i]->view());
		}
		grasynda::ExperimentOptions opts;
		opts.methods.clear();
		for (const auto &m : split_list(options->methods)) {
			opts.methods.push_back(grasynda::parse_method(m));
		}
		opts.forecasters = split_list(options->forecasters);
		opts.method_params = inline_params(options->params);
		opts.seed = options->seed;
		opts.ridge_lambda = options->ridge_lambda;
		opts.threads = options->threads;
		auto result = grasynda::run_experiment(collections, opts);
		*out = new grasynda_report{std::move(result.scores), std::move(result.report), std::move(result.warnings)};
	});
}

int grasynda_report_from_scores(const char *path, const char *baseline, grasynda_report **out) {
	return guarded([&] {
		require(path != nullptr && out != nullptr, "report_from_scores: null argument");
		std::ifstream in(path, std::ios::binary);
		if (!in) {
			throw grasynda::DataError(std::string("cannot open ") + path);
		}
		auto scores = grasynda::read_scores_csv(in, path);
		auto report = grasynda::aggregate_report(scores, baseline ? baseline : "none");
		auto warnings = report.warnings;
		*out = new grasynda_report{std::move(scores), std::move(report), std::move(warnings)};
	});
}

int grasynda_report_write(const grasynda_report *r, const char *kind, char **out) {
	return guarded([&] {
		require(r != nullptr && kind != nullptr && out != nullptr, "report_write: null argument");
		const std::string k = kind;
		std::ostringstream os;
		if (k == "csv") {
			grasynda::write_report_csv(os, r->report);
		} else if (k == "summary") {
			grasynda::write_summary_csv(os, r->report);
		} else if (k == "table") {
			grasynda::write_report_table(os, r->report);
		} else if (k == "scores") {
			grasynda::write_scores_csv(os, r->scores);
		} else {
			throw grasynda::UsageError("unknown report kind '" + k + "'");
		}
		*out = copy_string(os.str());
	});
}

size_t grasynda_report_warning_count(const grasynda_report *r) {
	return r ? r->warnings.size() : 0;
}

const char *grasynda_report_warning(const grasynda_report *r, size_t index) {
	return r && index < r->warnings.size() ? r->warnings[index].c_str() : nullptr;
}

int grasynda_report_effectiveness(const grasynda_report *r, const char *method, double *fraction, size_t *wins,
                                  size_t *cells) {
	return guarded([&] {
		require(r != nullptr && method != nullptr, "report_effectiveness: null argument");
		const auto *e = r->report.effectiveness_of(method);
		if (e == nullptr) {
			throw grasynda::UsageError(std::string("no effectiveness for method '") + method + "'");
		}
		if (fraction) {
			*fraction = or_nan(e->fraction);
		}
		if (wins) {
			*wins = e->wins;
		}
		if (cells) {
			*cells = e->cells;
		}
	});
}

int grasynda_report_average_rank(const grasynda_report *r, const char *forecaster, const char *method, double *rank) {
	return guarded([&] {
		require(r != nullptr && forecaster != nullptr && method != nullptr && rank != nullptr,
		        "report_average_rank: null argument");
		const auto *s = r->report.summary(forecaster, method);
		if (s == nullptr) {
			throw grasynda::UsageError(std::string("no summary for ") + forecaster + "/" + method);
		}
		*rank = or_nan(s->average_rank);
	});
}

int grasynda_report_mean_mase(const grasynda_report *r, const char *dataset, const char *forecaster,
                              const char *method, double *mase) {
	return guarded([&] {
		require(r != nullptr && dataset != nullptr && forecaster != nullptr && method != nullptr && mase != nullptr,
		        "report_mean_mase: null argument");
		const auto *c = r->report.cell(dataset, forecaster, method);
		if (c == nullptr) {
			throw grasynda::UsageError(std::string("no cell ") + dataset + "/" + forecaster + "/" + method);
		}
		*mase = c->present ? c->mean_mase : std::numeric_limits<double>::quiet_NaN();
	});
}

void grasynda_report_free(grasynda_report *r) {
	delete r;
}

int grasynda_mase(const double *predictions, const double *actuals, size_t h, const double *train, size_t n,
                  double *out) {
	return guarded([&] {
		require(predictions != nullptr && actuals != nullptr && train != nullptr && out != nullptr,
		        "mase: null argument");
		const auto v = grasynda::mase(std::span<const double>(predictions, h), std::span<const double>(actuals, h),
		                              std::span<const double>(train, n));
		if (!v) {
			throw grasynda::DataError("MASE is undefined: the training series has a zero naive scale");
		}
		*out = *v;
	});
}

int grasynda_wilcoxon(const double *a, const double *b, size_t n, double *p) {
	return guarded([&] {
		require(a != nullptr && b != nullptr && p != nullptr, "wilcoxon: null argument");
		*p = grasynda::wilcoxon_signed_rank(std::span<const double>(a, n), std::span<const double>(b, n));
	});
}

} // extern "C"
