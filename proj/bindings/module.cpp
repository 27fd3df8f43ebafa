#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

#include "tempoclust/corpus.hpp"
#include "tempoclust/features.hpp"
#include "tempoclust/kmeans.hpp"
#include "tempoclust/pipeline.hpp"
#include "tempoclust/regress.hpp"
#include "tempoclust/report.hpp"
#include "tempoclust/synth.hpp"
#include "tempoclust/validity.hpp"
#include "tempoclust/version.hpp"

namespace py = pybind11;
using namespace tempoclust;

namespace {

py::object number_or_none(double value) {
  if (std::isnan(value)) return py::none();
  return py::float_(value);
}

py::dict fit_to_dict(const RegressionFit& fit) {
  py::dict d;
  d["n"] = fit.n;
  d["slope"] = fit.slope;
  d["intercept"] = fit.intercept;
  d["r_squared"] = fit.r_squared;
  d["slope_se"] = fit.slope_se;
  d["t"] = number_or_none(fit.t_stat);
  d["df"] = fit.df;
  d["p"] = fit.p_value;
  d["degenerate"] = fit.degenerate;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Tempo-tradition corpus analysis core";
  m.attr("__version__") = kVersion;

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  m.def("t_cdf", &t_cdf, py::arg("t"), py::arg("df"),
        "Student t cumulative distribution function");
  m.def("p_two_tailed", &p_two_tailed, py::arg("t"), py::arg("df"),
        "Two-tailed p-value for a t statistic");
  m.def("pearson_r", &pearson_r, py::arg("x"), py::arg("y"),
        "Pearson correlation coefficient");
  m.def("chi_square_sf", &chi_square_sf, py::arg("x"), py::arg("df"),
        "Chi-square survival function");

  m.def(
      "ols_fit",
      [](const std::vector<double>& x, const std::vector<double>& y) {
        return fit_to_dict(ols_fit(x, y));
      },
      py::arg("x"), py::arg("y"),
      "Simple least squares of y on x with a t test on the slope");

  m.def(
      "z_standardize",
      [](const std::vector<std::vector<double>>& rows,
         const std::vector<std::string>& columns) {
        FeatureMatrix matrix;
        matrix.columns = columns;
        matrix.values = rows;
        for (std::size_t i = 0; i < rows.size(); ++i) {
          matrix.row_ids.push_back(std::to_string(i));
        }
        const StandardizedMatrix out = z_standardize(matrix);
        py::dict d;
        d["values"] = out.values;
        d["column_means"] = out.column_means;
        d["column_sds"] = out.column_sds;
        d["degenerate_columns"] = out.degenerate_columns;
        return d;
      },
      py::arg("rows"), py::arg("columns"),
      "Column z-scores with sample SD; degenerate columns map to zeros");

  m.def(
      "kmeans_fit",
      [](const std::vector<Point>& points, int k, int restarts,
         std::uint64_t seed) {
        const ClusterModel model = kmeans_fit(points, k, restarts, seed);
        py::dict d;
        d["k"] = model.k;
        d["centroids"] = model.centroids_std;
        d["assignments"] = model.assignments;
        d["inertia"] = model.inertia;
        d["winning_restart"] = model.winning_restart;
        d["iterations"] = model.iterations;
        d["reduced_k"] = model.reduced_k;
        return d;
      },
      py::arg("points"), py::arg("k"), py::arg("restarts") = 100,
      py::arg("seed") = 0,
      "Restarted k-means++ with Lloyd descent; deterministic per seed");

  m.def(
      "silhouette",
      [](const std::vector<Point>& points, const std::vector<int>& assignments) {
        const SilhouetteResult result = silhouette(points, assignments);
        py::dict d;
        d["scores"] = result.scores;
        d["mean"] = result.mean;
        return d;
      },
      py::arg("points"), py::arg("assignments"),
      "Euclidean silhouette scores and their mean");

  m.def(
      "analyze_to_json",
      [](const std::string& movements_csv, const std::string& recordings_csv,
         const std::string& bars_csv, int k_target, int restarts,
         std::uint64_t seed, int split_year, int jobs) {
        const Corpus corpus =
            parse_corpus(movements_csv, recordings_csv, bars_csv);
        PipelineConfig config;
        config.k_target = k_target;
        config.restarts = restarts;
        config.seed = seed;
        config.split_year = split_year;
        config.jobs = jobs;
        return emit_json(analyze_corpus(corpus, config).bundle);
      },
      py::arg("movements_csv"), py::arg("recordings_csv"), py::arg("bars_csv"),
      py::arg("k_target") = 3, py::arg("restarts") = 100, py::arg("seed") = 0,
      py::arg("split_year") = 1970, py::arg("jobs") = 0,
      "Full pipeline over in-memory corpus CSVs; returns canonical JSON");

  m.def(
      "synth_corpus_csv",
      [](const std::string& spec_json) {
        const CorpusText text =
            corpus_to_csv(synth_corpus(load_synth_specs_json(spec_json)));
        return py::make_tuple(text.movements_csv, text.recordings_csv,
                              text.bars_csv);
      },
      py::arg("spec_json"),
      "Materialize a spec JSON into (movements, recordings, bars) CSV text");
}
