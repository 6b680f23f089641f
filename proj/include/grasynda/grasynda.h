/*
 * C interface to the grasynda library.
 *
 * Every fallible call returns a status code; on failure the message is
 * available from grasynda_last_error() on the calling thread until the next
 * failing call. Strings returned through `char **` are owned by the caller
 * and released with grasynda_string_free().
 */
#ifndef GRASYNDA_H
#define GRASYNDA_H

#include <stddef.h>
#include <stdint.h>

#if defined(GRASYNDA_BUILDING_LIBRARY)
#define GRASYNDA_API __attribute__((visibility("default")))
#else
#define GRASYNDA_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

enum grasynda_status {
	GRASYNDA_OK = 0,
	GRASYNDA_ERR_USAGE = 1,    /* bad arguments or configuration */
	GRASYNDA_ERR_DATA = 2,     /* malformed or unsuitable input data */
	GRASYNDA_ERR_INTERNAL = 3, /* invariant violation or resource failure */
};

typedef struct grasynda_collection grasynda_collection;
typedef struct grasynda_graph grasynda_graph;
typedef struct grasynda_report grasynda_report;

GRASYNDA_API const char *grasynda_version(void);
GRASYNDA_API const char *grasynda_last_error(void);
GRASYNDA_API void grasynda_string_free(char *s);

/* Period, horizon and input window for a known dataset family name.
 * Returns 1 when the name matched, 0 otherwise (outputs untouched). */
GRASYNDA_API int grasynda_metadata_preset(const char *name, int *period, int *horizon, int *input_window);

/* ---- collections -------------------------------------------------------- */

GRASYNDA_API int grasynda_collection_load(const char *path, const char *name, int period, int horizon,
                                          int input_window, grasynda_collection **out);
GRASYNDA_API int grasynda_collection_create(const char *name, int period, int horizon, int input_window,
                                            grasynda_collection **out);
GRASYNDA_API int grasynda_collection_add_series(grasynda_collection *c, const char *id, const double *values,
                                                size_t n);
GRASYNDA_API int grasynda_collection_save(const grasynda_collection *c, const char *path);
GRASYNDA_API int grasynda_collection_write(const grasynda_collection *c, char **out);
GRASYNDA_API void grasynda_collection_free(grasynda_collection *c);

GRASYNDA_API size_t grasynda_collection_size(const grasynda_collection *c);
GRASYNDA_API size_t grasynda_collection_total_observations(const grasynda_collection *c);
GRASYNDA_API int grasynda_collection_period(const grasynda_collection *c);
GRASYNDA_API int grasynda_collection_horizon(const grasynda_collection *c);
GRASYNDA_API int grasynda_collection_input_window(const grasynda_collection *c);
/* Borrowed pointers, valid until the collection is modified or freed. */
GRASYNDA_API int grasynda_collection_series(const grasynda_collection *c, size_t index, const char **id,
                                            const double **values, size_t *n);

/* ---- generation and augmentation ---------------------------------------- */

typedef struct grasynda_generator_options {
	uint64_t seed;
	size_t length;    /* 0: the source length */
	size_t replicas;  /* synthetic series per source */
	size_t quantiles; /* requested number of states */
	int use_stl;      /* -1 automatic, 0 never, 1 always */
	int threads;
} grasynda_generator_options;

GRASYNDA_API void grasynda_generator_options_default(grasynda_generator_options *options);

/* Synthetic series only, ordered by source then replica. */
GRASYNDA_API int grasynda_generate(const grasynda_collection *in, const grasynda_generator_options *options,
                                   grasynda_collection **out);

/* Number of series the generator would decompose under `use_stl`. */
GRASYNDA_API int grasynda_stl_usage(const grasynda_collection *in, int use_stl, size_t *decomposed);

/* Originals followed by one synthetic per series. `params` is a
 * comma-separated `key=value` list of method parameters, or NULL. */
GRASYNDA_API int grasynda_augment(const grasynda_collection *in, const char *method, const char *params,
                                  uint64_t seed, int threads, grasynda_collection **out);

/* Effective parameters (defaults merged with `params`) as `key = value`
 * lines. */
GRASYNDA_API int grasynda_augment_params(const char *method, const char *params, int period, char **out);

/* ---- quantile graphs ---------------------------------------------------- */

GRASYNDA_API int grasynda_graph_build(const double *values, size_t n, size_t quantiles, grasynda_graph **out);
/* The graph the generator samples from for one series of a collection: the
 * STL remainder's graph when `use_stl` selects decomposition. */
GRASYNDA_API int grasynda_graph_build_series(const grasynda_collection *c, size_t index, size_t quantiles,
                                             int use_stl, grasynda_graph **out);
GRASYNDA_API size_t grasynda_graph_states(const grasynda_graph *g);
GRASYNDA_API int grasynda_graph_transition(const grasynda_graph *g, size_t from, size_t to, double *p);
/* `format`: "dot" or "csv". */
GRASYNDA_API int grasynda_graph_export(const grasynda_graph *g, const char *format, char **out);
GRASYNDA_API void grasynda_graph_free(grasynda_graph *g);

/* ---- evaluation --------------------------------------------------------- */

typedef struct grasynda_evaluate_options {
	const char *methods;     /* comma-separated, e.g. "none,grasynda" */
	const char *forecasters; /* comma-separated, e.g. "snaive,ridge" */
	const char *params;      /* `<method>.<param>=value` list, or NULL */
	uint64_t seed;
	double ridge_lambda;
	int threads;
} grasynda_evaluate_options;

GRASYNDA_API void grasynda_evaluate_options_default(grasynda_evaluate_options *options);
GRASYNDA_API int grasynda_evaluate(const grasynda_collection *const *datasets, size_t n,
                                   const grasynda_evaluate_options *options, grasynda_report **out);
/* Aggregates a `dataset,forecaster,method,series_id,mase` file. */
GRASYNDA_API int grasynda_report_from_scores(const char *path, const char *baseline, grasynda_report **out);

/* `kind`: "csv", "summary", "table" or "scores". */
GRASYNDA_API int grasynda_report_write(const grasynda_report *r, const char *kind, char **out);
GRASYNDA_API size_t grasynda_report_warning_count(const grasynda_report *r);
GRASYNDA_API const char *grasynda_report_warning(const grasynda_report *r, size_t index);
/* Unset values (baseline effectiveness, empty cells) come back as NaN. */
GRASYNDA_API int grasynda_report_effectiveness(const grasynda_report *r, const char *method, double *fraction,
                                               size_t *wins, size_t *cells);
GRASYNDA_API int grasynda_report_average_rank(const grasynda_report *r, const char *forecaster, const char *method,
                                              double *rank);
GRASYNDA_API int grasynda_report_mean_mase(const grasynda_report *r, const char *dataset, const char *forecaster,
                                           const char *method, double *mase);
GRASYNDA_API void grasynda_report_free(grasynda_report *r);

/* ---- metrics ------------------------------------------------------------ */

/* GRASYNDA_ERR_DATA when the training series has a zero naive scale. */
GRASYNDA_API int grasynda_mase(const double *predictions, const double *actuals, size_t h, const double *train,
                               size_t n, double *out);
GRASYNDA_API int grasynda_wilcoxon(const double *a, const double *b, size_t n, double *p);

#ifdef __cplusplus
}
#endif

#endif
