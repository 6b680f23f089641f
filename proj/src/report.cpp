#include "grasynda/error.hpp"
#include "grasynda/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

namespace grasynda {

namespace {

void remember(std::vector<std::string> &order, const std::string &label) {
	if (std::find(order.begin(), order.end(), label) == order.end()) {
		order.push_back(label);
	}
}

using CellKey = std::tuple<std::string, std::string, std::string>; // dataset, forecaster, method

std::string fixed6(double v) {
	char buf[64];
	std::snprintf(buf, sizeof buf, "%.6g", v);
	return buf;
}

} // namespace

const ReportCell *EvaluationReport::cell(std::string_view dataset, std::string_view forecaster,
                                         std::string_view method) const {
	for (const auto &c : cells) {
		if (c.dataset == dataset && c.forecaster == forecaster && c.method == method) {
			return &c;
		}
	}
	return nullptr;
}

const MethodSummary *EvaluationReport::summary(std::string_view forecaster, std::string_view method) const {
	for (const auto &s : summaries) {
		if (s.forecaster == forecaster && s.method == method) {
			return &s;
		}
	}
	return nullptr;
}

const Effectiveness *EvaluationReport::effectiveness_of(std::string_view method) const {
	for (const auto &e : effectiveness) {
		if (e.method == method) {
			return &e;
		}
	}
	return nullptr;
}

bool EvaluationReport::complete() const {
	return std::all_of(cells.begin(), cells.end(), [](const ReportCell &c) { return c.present; });
}

EvaluationReport aggregate_report(std::span<const ScoreRecord> scores, const std::string &baseline) {
	EvaluationReport report;
	report.baseline = baseline;
	std::map<CellKey, std::map<std::string, double>> by_cell; // series id -> score
	for (const auto &s : scores) {
		if (!std::isfinite(s.mase)) {
			throw DataError("score for " + s.dataset + "/" + s.series_id + " is not finite");
		}
		remember(report.datasets, s.dataset);
		remember(report.forecasters, s.forecaster);
		remember(report.methods, s.method);
		auto &series = by_cell[{s.dataset, s.forecaster, s.method}];
		if (!series.emplace(s.series_id, s.mase).second) {
			throw DataError("duplicate score for " + s.dataset + "/" + s.forecaster + "/" + s.method + "/" +
			                s.series_id);
		}
	}
	const bool has_baseline =
	    std::find(report.methods.begin(), report.methods.end(), baseline) != report.methods.end();

	for (const auto &forecaster : report.forecasters) {
		for (const auto &dataset : report.datasets) {
			const auto base_it = by_cell.find({dataset, forecaster, baseline});
			const std::size_t row_begin = report.cells.size();
			for (const auto &method : report.methods) {
				ReportCell cell;
				cell.dataset = dataset;
				cell.forecaster = forecaster;
				cell.method = method;
				const auto it = by_cell.find({dataset, forecaster, method});
				if (it == by_cell.end()) {
					report.warnings.push_back("missing cell " + dataset + "/" + forecaster + "/" + method);
					report.cells.push_back(std::move(cell));
					continue;
				}
				cell.present = true;
				cell.series = it->second.size();
				double sum = 0.0;
				for (const auto &[id, v] : it->second) {
					sum += v;
				}
				cell.mean_mase = sum / static_cast<double>(cell.series);

				if (method != baseline && base_it != by_cell.end()) {
					std::vector<double> a;
					std::vector<double> b;
					for (const auto &[id, v] : it->second) {
						if (auto m = base_it->second.find(id); m != base_it->second.end()) {
							a.push_back(v);
							b.push_back(m->second);
						}
					}
					std::size_t nonzero = 0;
					for (std::size_t i = 0; i < a.size(); ++i) {
						nonzero += a[i] != b[i] ? 1 : 0;
					}
					if (nonzero == 0 && !a.empty()) {
						cell.p_value = 1.0;
					} else if (nonzero >= kWilcoxonMinPairs) {
						cell.p_value = wilcoxon_signed_rank(a, b);
					}
				}
				report.cells.push_back(std::move(cell));
			}

			// Ranks across the present cells of this row, ties averaged.
			std::vector<ReportCell *> row;
			for (std::size_t i = row_begin; i < report.cells.size(); ++i) {
				if (report.cells[i].present) {
					row.push_back(&report.cells[i]);
				}
			}
			std::stable_sort(row.begin(), row.end(),
			                 [](const ReportCell *x, const ReportCell *y) { return x->mean_mase < y->mean_mase; });
			for (std::size_t i = 0; i < row.size();) {
				std::size_t j = i;
				while (j + 1 < row.size() && row[j + 1]->mean_mase == row[i]->mean_mase) {
					++j;
				}
				const double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
				for (std::size_t k = i; k <= j; ++k) {
					row[k]->rank = rank;
				}
				i = j + 1;
			}
			if (base_it != by_cell.end()) {
				const double base_mean = report.cell(dataset, forecaster, baseline)->mean_mase;
				for (auto *c : row) {
					c->significant = c->p_value && *c->p_value < kSignificanceLevel && c->mean_mase < base_mean;
				}
			}
		}
	}

	for (const auto &forecaster : report.forecasters) {
		for (const auto &method : report.methods) {
			MethodSummary s;
			s.forecaster = forecaster;
			s.method = method;
			double mase_sum = 0.0;
			double rank_sum = 0.0;
			for (const auto &dataset : report.datasets) {
				const auto *c = report.cell(dataset, forecaster, method);
				if (c && c->present) {
					mase_sum += c->mean_mase;
					rank_sum += c->rank;
					++s.datasets;
				}
			}
			if (s.datasets > 0) {
				s.average_mase = mase_sum / static_cast<double>(s.datasets);
				s.average_rank = rank_sum / static_cast<double>(s.datasets);
			}
			report.summaries.push_back(std::move(s));
		}
	}

	if (has_baseline) {
		for (const auto &method : report.methods) {
			Effectiveness e;
			e.method = method;
			if (method != baseline) {
				for (const auto &forecaster : report.forecasters) {
					for (const auto &dataset : report.datasets) {
						const auto *c = report.cell(dataset, forecaster, method);
						const auto *b = report.cell(dataset, forecaster, baseline);
						if (c && b && c->present && b->present) {
							++e.cells;
							e.wins += c->mean_mase < b->mean_mase ? 1 : 0;
						}
					}
				}
				if (e.cells > 0) {
					e.fraction = static_cast<double>(e.wins) / static_cast<double>(e.cells);
				}
			}
			report.effectiveness.push_back(std::move(e));
		}
	}
	return report;
}

void write_report_csv(std::ostream &out, const EvaluationReport &report) {
	out << "dataset,forecaster,method,mean_mase,rank,p_value\n";
	for (const auto &c : report.cells) {
		out << c.dataset << ',' << c.forecaster << ',' << c.method << ',';
		if (!c.present) {
			out << "NA,NA,NA\n";
			continue;
		}
		out << format_double(c.mean_mase) << ',' << format_double(c.rank) << ',';
		out << (c.p_value ? format_double(*c.p_value) : "NA") << '\n';
	}
}

void write_summary_csv(std::ostream &out, const EvaluationReport &report) {
	out << "forecaster,method,average_mase,average_rank,effectiveness\n";
	for (const auto &s : report.summaries) {
		out << s.forecaster << ',' << s.method << ',';
		out << (s.average_mase ? format_double(*s.average_mase) : "NA") << ',';
		out << (s.average_rank ? format_double(*s.average_rank) : "NA") << ',';
		const auto *e = report.effectiveness_of(s.method);
		out << (e && e->fraction ? format_double(*e->fraction) : "NA") << '\n';
	}
}

void write_report_table(std::ostream &out, const EvaluationReport &report) {
	std::size_t label_width = std::string("Effectiveness").size();
	for (const auto &d : report.datasets) {
		label_width = std::max(label_width, d.size());
	}
	std::size_t col_width = 9;
	for (const auto &m : report.methods) {
		col_width = std::max(col_width, m.size() + 1);
	}
	auto pad = [](std::string s, std::size_t w) {
		if (s.size() < w) {
			s.insert(0, w - s.size(), ' ');
		}
		return s;
	};
	auto left = [](std::string s, std::size_t w) {
		if (s.size() < w) {
			s.append(w - s.size(), ' ');
		}
		return s;
	};

	for (const auto &forecaster : report.forecasters) {
		out << left(forecaster, label_width) << " |";
		for (const auto &m : report.methods) {
			out << ' ' << pad(m, col_width);
		}
		out << '\n' << std::string(label_width + 2 + report.methods.size() * (col_width + 1), '-') << '\n';
		for (const auto &dataset : report.datasets) {
			out << left(dataset, label_width) << " |";
			for (const auto &m : report.methods) {
				const auto *c = report.cell(dataset, forecaster, m);
				std::string v = c && c->present ? fixed6(c->mean_mase) + (c->significant ? "*" : "") : "--";
				out << ' ' << pad(v, col_width);
			}
			out << '\n';
		}
		out << left("Avg.", label_width) << " |";
		for (const auto &m : report.methods) {
			const auto *s = report.summary(forecaster, m);
			out << ' ' << pad(s && s->average_mase ? fixed6(*s->average_mase) : "--", col_width);
		}
		out << '\n' << left("Avg. Rank", label_width) << " |";
		for (const auto &m : report.methods) {
			const auto *s = report.summary(forecaster, m);
			out << ' ' << pad(s && s->average_rank ? fixed6(*s->average_rank) : "--", col_width);
		}
		out << "\n\n";
	}
	if (!report.effectiveness.empty()) {
		out << left("Effectiveness", label_width) << " |";
		for (const auto &m : report.methods) {
			const auto *e = report.effectiveness_of(m);
			out << ' ' << pad(e && e->fraction ? fixed6(*e->fraction) : "--", col_width);
		}
		out << '\n';
	}
}

void write_scores_csv(std::ostream &out, std::span<const ScoreRecord> scores) {
	out << "dataset,forecaster,method,series_id,mase\n";
	for (const auto &s : scores) {
		out << s.dataset << ',' << s.forecaster << ',' << s.method << ',' << s.series_id << ','
		    << format_double(s.mase) << '\n';
	}
}

std::vector<ScoreRecord> read_scores_csv(std::istream &in, const std::string &source_name) {
	std::vector<ScoreRecord> out;
	std::string line;
	std::size_t line_no = 0;
	bool header = true;
	while (std::getline(in, line)) {
		++line_no;
		if (!line.empty() && line.back() == '\r') {
			line.pop_back();
		}
		if (line.empty() || line[0] == '#') {
			continue;
		}
		if (header) {
			header = false;
			if (line != "dataset,forecaster,method,series_id,mase") {
				throw DataError(source_name + ":" + std::to_string(line_no) +
				                ": expected header dataset,forecaster,method,series_id,mase");
			}
			continue;
		}
		std::vector<std::string> fields;
		std::stringstream ss(line);
		std::string field;
		while (std::getline(ss, field, ',')) {
			fields.push_back(field);
		}
		if (fields.size() != 5) {
			throw DataError(source_name + ":" + std::to_string(line_no) + ": expected 5 fields");
		}
		double v = 0.0;
		const auto *end = fields[4].data() + fields[4].size();
		auto [ptr, ec] = std::from_chars(fields[4].data(), end, v);
		if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
			throw DataError(source_name + ":" + std::to_string(line_no) + ": invalid mase value '" + fields[4] + "'");
		}
		out.push_back({fields[0], fields[1], fields[2], fields[3], v});
	}
	if (header) {
		throw DataError(source_name + ": missing header");
	}
	return out;
}

} // namespace grasynda
