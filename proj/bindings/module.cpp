#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "extremes/cluster.hpp"
#include "extremes/clusters.hpp"
#include "extremes/config.hpp"
#include "extremes/espace.hpp"
#include "extremes/experiments.hpp"
#include "extremes/io.hpp"
#include "extremes/limitpp.hpp"
#include "extremes/models.hpp"
#include "extremes/records.hpp"
#include "extremes/stats.hpp"
#include "extremes/sums.hpp"

namespace py = pybind11;
using namespace extremes;

namespace {

limitpp::QSampler q_sampler_from(const py::object& source) {
  if (py::isinstance<Cluster>(source))
    return limitpp::deterministic_q(source.cast<Cluster>());
  if (py::isinstance<py::list>(source) || py::isinstance<py::tuple>(source)) {
    auto seq = source.cast<std::vector<py::object>>();
    if (!seq.empty() && py::isinstance<Cluster>(seq[0])) {
      std::vector<Cluster> shapes;
      for (const auto& o : seq) shapes.push_back(o.cast<Cluster>());
      return limitpp::empirical_q(std::move(shapes));
    }
    // A plain list of numbers is a single deterministic shape.
    return limitpp::deterministic_q(
        Cluster(source.cast<std::vector<double>>()));
  }
  if (py::isinstance<models::LinearModel>(source))
    return limitpp::linear_q(source.cast<models::LinearModel>());
  throw std::invalid_argument(
      "q source must be a Cluster, list of numbers, list of Clusters, or "
      "LinearModel");
}

ClusterFunctional functional_from(const std::string& kind, double a, double b) {
  if (kind == "sup_threshold") return sup_threshold_functional(a);
  if (kind == "capped_abs_sum") return capped_abs_sum_functional(a, b);
  throw std::invalid_argument("unknown functional kind: " + kind);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Heavy-tailed stationary series laboratory: cluster point processes, "
      "shift-metric sequence space, decorated-path geometry, stable limits, "
      "and record-time laws.";

  // ----------------------------------------------------------- seqspace --
  py::class_<Cluster>(m, "Cluster")
      .def(py::init<>())
      .def(py::init<std::vector<double>, long>(), py::arg("values"),
           py::arg("offset") = 0)
      .def_property_readonly("values", &Cluster::values)
      .def_property_readonly("offset", &Cluster::offset)
      .def("is_zero", &Cluster::is_zero)
      .def("sup_norm", &Cluster::sup_norm)
      .def("sum", &Cluster::sum)
      .def("abs_sum", &Cluster::abs_sum)
      .def("prefix_sum_range", &Cluster::prefix_sum_range)
      .def("scaled", &Cluster::scaled)
      .def("shifted", &Cluster::shifted)
      .def("__eq__", [](const Cluster& a, const Cluster& b) { return a == b; })
      .def("__repr__", [](const Cluster& c) {
        return "Cluster(" + io::cluster_to_json(c).dump() + ")";
      });

  m.def("shift_metric", &seqspace::shift_metric, py::arg("a"), py::arg("b"));
  m.def("boundedness_metric", &seqspace::boundedness_metric, py::arg("a"),
        py::arg("b"));
  m.def("truncate", &seqspace::truncate, py::arg("a"), py::arg("zeta"));
  m.def(
      "polar",
      [](const Cluster& a) {
        const auto p = seqspace::polar(a);
        return py::make_tuple(p.magnitude, p.shape);
      },
      py::arg("a"));

  // ------------------------------------------------------------- models --
  py::class_<models::RegVarLaw>(m, "RegVarLaw")
      .def(py::init([](double alpha, double p) {
             models::RegVarLaw law{alpha, p};
             law.validate();
             return law;
           }),
           py::arg("alpha"), py::arg("p") = 1.0)
      .def_readonly("alpha", &models::RegVarLaw::alpha)
      .def_readonly("p", &models::RegVarLaw::p);

  py::class_<models::LinearModel>(m, "LinearModel")
      .def(py::init([](std::vector<double> coeffs, double alpha, double p,
                       long j_min) {
             models::LinearModel lm;
             lm.coeffs = std::move(coeffs);
             lm.j_min = j_min;
             lm.innovation = models::RegVarLaw{alpha, p};
             lm.validate();
             return lm;
           }),
           py::arg("coeffs"), py::arg("alpha"), py::arg("p") = 1.0,
           py::arg("j_min") = 0)
      .def_readonly("coeffs", &models::LinearModel::coeffs)
      .def_readonly("j_min", &models::LinearModel::j_min)
      .def_readonly("innovation", &models::LinearModel::innovation);

  py::class_<models::GarchModel>(m, "GarchModel")
      .def(py::init([](double a0, double a1, double b1,
                       std::optional<double> hint) {
             models::GarchModel gm{a0, a1, b1, hint};
             gm.validate();
             return gm;
           }),
           py::arg("a0"), py::arg("a1"), py::arg("b1"),
           py::arg("tail_alpha_hint") = std::nullopt)
      .def_readonly("a0", &models::GarchModel::a0)
      .def_readonly("a1", &models::GarchModel::a1)
      .def_readonly("b1", &models::GarchModel::b1);

  py::class_<models::SeriesSample>(m, "SeriesSample")
      .def_readonly("values", &models::SeriesSample::values)
      .def_readonly("model_desc", &models::SeriesSample::model_desc)
      .def_readonly("seed", &models::SeriesSample::seed)
      .def("__len__", &models::SeriesSample::size);

  m.def("sample_regvar", &models::sample_regvar, py::arg("law"), py::arg("n"),
        py::arg("seed"));
  m.def("simulate_linear", &models::simulate_linear, py::arg("model"),
        py::arg("n"), py::arg("seed"));
  m.def("simulate_garch", &models::simulate_garch, py::arg("model"),
        py::arg("n"), py::arg("burnin"), py::arg("seed"));
  m.def("linear_filter", &models::linear_filter, py::arg("model"),
        py::arg("innovations"));
  m.def("hill_estimate", &models::hill_estimate, py::arg("sample"),
        py::arg("k"));
  m.def("theta_linear", &models::theta_linear, py::arg("model"));
  m.def("linear_sign_prob", &models::linear_sign_prob, py::arg("model"));
  m.def(
      "q_sequence_linear",
      [](const models::LinearModel& lm, std::uint64_t seed) {
        return models::q_sequence_linear(lm, seed);
      },
      py::arg("model"), py::arg("seed"));
  m.def("spectral_tail_empirical", &models::spectral_tail_empirical,
        py::arg("sample"), py::arg("u"), py::arg("m"),
        py::arg("min_exceedances") = 100);
  m.def("quantile_an",
        py::overload_cast<const models::RegVarLaw&, std::size_t>(
            &models::quantile_an),
        py::arg("law"), py::arg("n"));
  m.def("quantile_an",
        py::overload_cast<const models::LinearModel&, std::size_t>(
            &models::quantile_an),
        py::arg("model"), py::arg("n"));
  m.def("quantile_an",
        py::overload_cast<const models::GarchModel&, std::size_t>(
            &models::quantile_an),
        py::arg("model"), py::arg("n"));
  m.def("pareto_truncated_mean", &models::pareto_truncated_mean,
        py::arg("law"), py::arg("u"));

  // ------------------------------------------------------------ clusters --
  py::class_<clusters::BlockingPlan>(m, "BlockingPlan")
      .def(py::init([](std::size_t n, std::size_t r_n, double a_n, double u) {
             clusters::BlockingPlan plan{n, r_n, a_n, u};
             plan.validate();
             return plan;
           }),
           py::arg("n"), py::arg("r_n"), py::arg("a_n"), py::arg("u") = 1.0)
      .def_readonly("n", &clusters::BlockingPlan::n)
      .def_readonly("r_n", &clusters::BlockingPlan::r_n)
      .def_readonly("a_n", &clusters::BlockingPlan::a_n)
      .def_readonly("u", &clusters::BlockingPlan::u)
      .def("k_n", &clusters::BlockingPlan::k_n);

  py::class_<clusters::ClusterPP>(m, "ClusterPP")
      .def_readonly("points", &clusters::ClusterPP::points);

  py::class_<clusters::ThetaEstimate>(m, "ThetaEstimate")
      .def_readonly("value", &clusters::ThetaEstimate::value)
      .def_readonly("se", &clusters::ThetaEstimate::se)
      .def_readonly("low_counts", &clusters::ThetaEstimate::low_counts);

  py::class_<clusters::ClusterLawPair>(m, "ClusterLawPair")
      .def_readonly("l", &clusters::ClusterLawPair::l)
      .def_readonly("q", &clusters::ClusterLawPair::q);

  m.def("block_series", &clusters::block_series, py::arg("sample"),
        py::arg("plan"));
  m.def("empirical_theta", &clusters::empirical_theta, py::arg("sample"),
        py::arg("plan"));
  m.def(
      "empirical_theta_pooled",
      [](const py::object& model, std::size_t n, std::size_t r_n, double u,
         std::size_t replications, std::uint64_t seed) {
        clusters::BlockingPlan plan;
        plan.n = n;
        plan.r_n = r_n;
        plan.u = u;
        clusters::SeriesGen gen;
        if (py::isinstance<models::LinearModel>(model)) {
          const auto lm = model.cast<models::LinearModel>();
          plan.a_n = models::quantile_an(lm, n);
          gen = [lm, n](std::uint64_t s) {
            return models::simulate_linear(lm, n, s);
          };
        } else if (py::isinstance<models::RegVarLaw>(model)) {
          const auto law = model.cast<models::RegVarLaw>();
          plan.a_n = models::quantile_an(law, n);
          gen = [law, n](std::uint64_t s) {
            return models::sample_regvar(law, n, s);
          };
        } else {
          throw std::invalid_argument(
              "empirical_theta_pooled: model must be LinearModel or "
              "RegVarLaw");
        }
        clusters::ThetaCounts pooled;
        for (std::uint64_t rep = 0; rep < replications; ++rep)
          pooled.accumulate(gen(Rng::derive(seed, rep)), plan);
        return clusters::theta_from_counts(pooled);
      },
      py::arg("model"), py::arg("n"), py::arg("r_n"), py::arg("u") = 1.0,
      py::arg("replications") = 100, py::arg("seed") = 1);
  m.def(
      "laplace_gap_diagnostic",
      [](const py::object& model, std::size_t n, std::size_t r_n, double u,
         double scale, double y0, std::size_t replications,
         std::uint64_t seed, int threads) {
        clusters::BlockingPlan plan;
        plan.n = n;
        plan.r_n = r_n;
        plan.u = u;
        clusters::SeriesGen gen;
        if (py::isinstance<models::LinearModel>(model)) {
          const auto lm = model.cast<models::LinearModel>();
          plan.a_n = models::quantile_an(lm, n);
          gen = [lm, n](std::uint64_t s) {
            return models::simulate_linear(lm, n, s);
          };
        } else if (py::isinstance<models::RegVarLaw>(model)) {
          const auto law = model.cast<models::RegVarLaw>();
          plan.a_n = models::quantile_an(law, n);
          gen = [law, n](std::uint64_t s) {
            return models::sample_regvar(law, n, s);
          };
        } else {
          throw std::invalid_argument(
              "laplace_gap_diagnostic: model must be LinearModel or "
              "RegVarLaw");
        }
        const auto f = [scale, y0](double, const Cluster& c) {
          return c.sup_norm() > y0 ? scale : 0.0;
        };
        const auto g = clusters::laplace_gap_diagnostic(gen, plan, f,
                                                        replications, seed,
                                                        threads);
        return py::dict(py::arg("gap") = g.gap, py::arg("se") = g.se,
                        py::arg("dependent_term") = g.dependent_term,
                        py::arg("independent_term") = g.independent_term,
                        py::arg("low_replications") = g.low_replications);
      },
      py::arg("model"), py::arg("n"), py::arg("r_n"), py::arg("u") = 1.0,
      py::arg("scale") = 2.0, py::arg("y0") = 1.0,
      py::arg("replications") = 200, py::arg("seed") = 1,
      py::arg("threads") = 1);
  m.def("anticluster_diagnostic", &clusters::anticluster_diagnostic,
        py::arg("sample"), py::arg("plan"), py::arg("m"));
  m.def("empirical_cluster_law", &clusters::empirical_cluster_law,
        py::arg("sample"), py::arg("plan"));
  m.def(
      "cluster_functional_nu",
      [](const models::SeriesSample& s, const clusters::BlockingPlan& plan,
         const std::string& kind, double a, double b) {
        return clusters::cluster_functional_nu(s, plan,
                                               functional_from(kind, a, b));
      },
      py::arg("sample"), py::arg("plan"), py::arg("kind"), py::arg("a"),
      py::arg("b") = 0.0);
  m.def(
      "independence_test_LQ",
      [](const std::vector<clusters::ClusterLawPair>& pairs,
         const std::function<double(const Cluster&)>& g, std::size_t min_pairs,
         int permutations, std::uint64_t seed) {
        const auto r = clusters::independence_test_LQ(pairs, g, min_pairs,
                                                      permutations, seed);
        return py::dict(
            py::arg("statistic") = r.statistic, py::arg("p_value") = r.p_value,
            py::arg("p_asymptotic") = r.p_asymptotic,
            py::arg("degenerate") = r.degenerate, py::arg("n_low") = r.n_low,
            py::arg("n_high") = r.n_high);
      },
      py::arg("pairs"), py::arg("g"), py::arg("min_pairs") = 500,
      py::arg("permutations") = 999, py::arg("seed") = 12345);

  // ------------------------------------------------------------- limitpp --
  py::class_<limitpp::LimitPoint>(m, "LimitPoint")
      .def_readonly("t", &limitpp::LimitPoint::t)
      .def_readonly("p", &limitpp::LimitPoint::p)
      .def_readonly("q", &limitpp::LimitPoint::q);

  py::class_<limitpp::LimitPointProcess>(m, "LimitPointProcess")
      .def_readonly("points", &limitpp::LimitPointProcess::points)
      .def_readonly("theta", &limitpp::LimitPointProcess::theta)
      .def_readonly("alpha", &limitpp::LimitPointProcess::alpha)
      .def_readonly("p_min", &limitpp::LimitPointProcess::p_min)
      .def_readonly("t_max", &limitpp::LimitPointProcess::t_max)
      .def("to_csv", [](const limitpp::LimitPointProcess& pp) {
        return io::limit_pp_to_csv(pp);
      });

  m.def(
      "sample_limit_pp",
      [](double theta, double alpha, const py::object& q, double p_min,
         double t_max, std::uint64_t seed) {
        return limitpp::sample_limit_pp(theta, alpha, q_sampler_from(q), p_min,
                                        t_max, seed);
      },
      py::arg("theta"), py::arg("alpha"), py::arg("q"), py::arg("p_min"),
      py::arg("t_max"), py::arg("seed"));
  m.def(
      "nu_limit",
      [](const std::string& kind, double a, double b, double theta,
         double alpha, const py::object& q, std::size_t mc,
         std::uint64_t seed) {
        const auto r = limitpp::nu_limit(functional_from(kind, a, b), theta,
                                         alpha, q_sampler_from(q), mc, seed);
        return py::make_tuple(r.value, r.se);
      },
      py::arg("kind"), py::arg("a"), py::arg("b"), py::arg("theta"),
      py::arg("alpha"), py::arg("q"), py::arg("mc_samples") = 10000,
      py::arg("seed") = 1);

  // -------------------------------------------------------------- espace --
  py::class_<espace::StepPath>(m, "StepPath")
      .def(py::init<double, std::vector<double>, std::vector<double>>(),
           py::arg("initial"), py::arg("times"), py::arg("levels"))
      .def_property_readonly("times", &espace::StepPath::times)
      .def_property_readonly("levels", &espace::StepPath::levels)
      .def_property_readonly("initial", &espace::StepPath::initial)
      .def("value", &espace::StepPath::value)
      .def("left_limit", &espace::StepPath::left_limit);

  py::class_<espace::Decoration>(m, "Decoration")
      .def(py::init<double, double, double>(), py::arg("t"), py::arg("lo"),
           py::arg("hi"))
      .def_readonly("t", &espace::Decoration::t)
      .def_readonly("lo", &espace::Decoration::lo)
      .def_readonly("hi", &espace::Decoration::hi);

  py::class_<espace::DecoratedPath>(m, "DecoratedPath")
      .def(py::init<espace::StepPath, std::vector<espace::Decoration>>(),
           py::arg("step"), py::arg("decorations"))
      .def_property_readonly("step", &espace::DecoratedPath::step)
      .def_property_readonly("decorations",
                             &espace::DecoratedPath::decorations)
      .def("negated", &espace::DecoratedPath::negated)
      .def("to_json", [](const espace::DecoratedPath& p) {
        return io::decorated_path_to_json(p).dump();
      });

  py::class_<espace::GraphSet>(m, "GraphSet")
      .def("to_csv",
           [](const espace::GraphSet& g) { return io::graph_to_csv(g); })
      .def("__len__",
           [](const espace::GraphSet& g) { return g.segments.size(); });

  m.def("embed_cadlag", &espace::embed_cadlag, py::arg("step"));
  m.def("graph", &espace::graph, py::arg("path"));
  m.def("hausdorff_graphs", &espace::hausdorff_graphs, py::arg("a"),
        py::arg("b"));
  m.def("hausdorff_graphs_grid", &espace::hausdorff_graphs_grid, py::arg("a"),
        py::arg("b"), py::arg("delta"));
  m.def("uniform_metric", &espace::uniform_metric, py::arg("a"), py::arg("b"));
  m.def("local_max", &espace::local_max, py::arg("path"), py::arg("t1"),
        py::arg("t2"));
  m.def("sup_path", &espace::sup_path, py::arg("path"));
  m.def("inf_path", &espace::inf_path, py::arg("path"));
  m.def(
      "add_continuous",
      [](const espace::DecoratedPath& p, const std::vector<double>& ts,
         const std::vector<double>& vals, int grid) {
        return espace::add_continuous(p, espace::PiecewiseLinear{ts, vals},
                                      grid);
      },
      py::arg("path"), py::arg("ts"), py::arg("vals"), py::arg("grid") = 1024);

  m.def(
      "m2_convergence_check",
      [](const std::vector<espace::DecoratedPath>& paths,
         const espace::DecoratedPath& limit,
         const std::vector<std::pair<double, double>>& windows,
         double tolerance) {
        std::vector<espace::Window> ws;
        for (const auto& [t1, t2] : windows) ws.push_back({t1, t2});
        const auto rep = espace::m2_convergence_check(paths, limit, ws,
                                                      tolerance);
        py::list rows;
        for (const auto& w : rep.windows)
          rows.append(py::dict(
              py::arg("t1") = w.window.t1, py::arg("t2") = w.window.t2,
              py::arg("negated") = w.negated, py::arg("gaps") = w.gaps,
              py::arg("limit_value") = w.limit_value,
              py::arg("last_quartile_mean") = w.last_quartile_mean,
              py::arg("converged") = w.converged));
        return py::make_tuple(rep.all_converged, rows);
      },
      py::arg("paths"), py::arg("limit"), py::arg("windows"),
      py::arg("tolerance"));

  // ---------------------------------------------------------------- sums --
  m.def("partial_sum_path", &sums::partial_sum_path, py::arg("values"),
        py::arg("a_n"));
  m.def(
      "centered_path",
      [](const std::vector<double>& values, double a_n, double epsilon,
         std::optional<double> analytic_mean, double sign_prob) {
        sums::CenteringSpec spec;
        spec.mode = sums::CenteringSpec::Mode::truncated_mean;
        spec.epsilon = epsilon;
        spec.analytic_mean = analytic_mean;
        spec.sign_prob = sign_prob;
        bool low = false;
        auto path = sums::centered_path(values, a_n, spec, &low);
        return py::make_tuple(std::move(path), low);
      },
      py::arg("values"), py::arg("a_n"), py::arg("epsilon") = 1.0,
      py::arg("analytic_mean") = std::nullopt, py::arg("sign_prob") = 1.0);
  m.def(
      "limit_decorated_path",
      [](const limitpp::LimitPointProcess& pp, double alpha, double epsilon,
         double sign_prob, int grid) {
        sums::CenteringSpec spec;
        if (alpha >= 1.0) {
          spec.mode = sums::CenteringSpec::Mode::truncated_mean;
          spec.epsilon = epsilon;
          spec.sign_prob = sign_prob;
        }
        return sums::limit_decorated_path(pp, alpha, spec, grid);
      },
      py::arg("pp"), py::arg("alpha"), py::arg("epsilon") = 1.0,
      py::arg("sign_prob") = 1.0, py::arg("grid") = 1024);

  py::class_<sums::StableParams>(m, "StableParams")
      .def_readonly("alpha", &sums::StableParams::alpha)
      .def_readonly("sigma", &sums::StableParams::sigma)
      .def_readonly("beta", &sums::StableParams::beta)
      .def_readonly("location", &sums::StableParams::location)
      .def_readonly("c0", &sums::StableParams::c0)
      .def_readonly("sigma_alpha", &sums::StableParams::sigma_alpha)
      .def_readonly("sigma_alpha_se", &sums::StableParams::sigma_alpha_se)
      .def_readonly("beta_se", &sums::StableParams::beta_se)
      .def_readonly("location_se", &sums::StableParams::location_se)
      .def_readonly("dh95_residual", &sums::StableParams::dh95_residual)
      .def_readonly("dh95_se", &sums::StableParams::dh95_se)
      .def_readonly("flagged", &sums::StableParams::flagged);

  m.def(
      "stable_params_from_Q",
      [](double alpha, double theta, const py::object& q, double p,
         std::size_t mc, std::uint64_t seed) {
        return sums::stable_params_from_Q(alpha, theta, q_sampler_from(q), p,
                                          mc, seed);
      },
      py::arg("alpha"), py::arg("theta"), py::arg("q"), py::arg("p"),
      py::arg("mc_samples") = 20000, py::arg("seed") = 1);
  m.def(
      "stable_params_from_forward_theta_linear",
      [](const models::LinearModel& lm, std::size_t mc, std::uint64_t seed) {
        return sums::stable_params_from_forward_theta(
            lm.innovation.alpha, sums::forward_theta_linear(lm), mc, seed);
      },
      py::arg("model"), py::arg("mc_samples") = 20000, py::arg("seed") = 1);
  m.def(
      "m2_condition_check",
      [](const std::vector<Cluster>& qs) {
        const auto r = sums::m2_condition_check(qs);
        return py::make_tuple(r.fraction, r.per_sample);
      },
      py::arg("q_samples"));
  m.def(
      "small_jump_diagnostic",
      [](const std::vector<double>& values, double a_n,
         const std::vector<double>& eps_grid,
         std::optional<models::RegVarLaw> law) {
        std::vector<std::pair<double, double>> out;
        for (const auto& p :
             sums::small_jump_diagnostic(values, a_n, eps_grid, law))
          out.emplace_back(p.epsilon, p.value);
        return out;
      },
      py::arg("values"), py::arg("a_n"), py::arg("eps_grid"),
      py::arg("analytic_law") = std::nullopt);
  m.def("karamata_check", [](double alpha, double eps, std::size_t n,
                             std::size_t mc, std::uint64_t seed) {
    const auto r = sums::karamata_check(alpha, eps, n, mc, seed);
    return py::make_tuple(r.estimate, r.se, r.target);
  });
  m.def("c0_constant", &stats::c0_constant);

  // ------------------------------------------------------------- records --
  py::class_<records::RecordMeasure>(m, "RecordMeasure")
      .def_readonly("atoms", &records::RecordMeasure::atoms)
      .def("total_mass", &records::RecordMeasure::total_mass)
      .def("to_csv", [](const records::RecordMeasure& rm) {
        return io::record_measure_to_csv(rm);
      });

  m.def("cluster_records", &records::cluster_records, py::arg("x"),
        py::arg("y"));
  m.def("series_record_times", &records::series_record_times, py::arg("x"));
  m.def("record_pp_from_clusters", &records::record_pp_from_clusters,
        py::arg("points"));
  m.def(
      "simulate_limit_records",
      [](double alpha, const py::object& q, double s, double t,
         std::uint64_t seed) {
        return records::simulate_limit_records(alpha, q_sampler_from(q), s, t,
                                               seed);
      },
      py::arg("alpha"), py::arg("q"), py::arg("s"), py::arg("t"),
      py::arg("seed"));
  m.def("ma1_kappa_law", &records::ma1_kappa_law, py::arg("c"),
        py::arg("alpha"));
  m.def("exact_kappa_law", &records::exact_kappa_law, py::arg("q_unit"),
        py::arg("alpha"));

  // --------------------------------------------------------- experiments --
  m.def(
      "run_experiment_json",
      [](const std::string& config_json) {
        const auto doc = nlohmann::json::parse(config_json);
        const auto cfg = config::parse_config(doc, "");
        const auto report = experiments::run(cfg);
        return py::make_tuple(report.body.dump(), report.pass);
      },
      py::arg("config_json"),
      "Run an experiment from a JSON config string; returns (report_json, "
      "pass).");
  m.def("experiment_catalog", []() {
    py::list entries;
    for (const auto& e : experiments::catalog())
      entries.append(py::dict(py::arg("name") = e.name,
                              py::arg("description") = e.description,
                              py::arg("verifies") = e.verifies));
    return entries;
  });
}
