#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pdnf/pdnf.hpp"

namespace py = pybind11;
using namespace pdnf;

namespace {

std::tuple<double, double, double> as_tuple(const ProbTriple& p) { return {p.neg, p.eps, p.pos}; }

ProbTriple from_tuple(const std::tuple<double, double, double>& t) {
  ProbTriple p{std::get<0>(t), std::get<1>(t), std::get<2>(t)};
  require_valid(p, 1e-9);
  return p;
}

std::vector<std::tuple<double, double, double>> as_tuples(const std::vector<ProbTriple>& grid) {
  std::vector<std::tuple<double, double, double>> out;
  out.reserve(grid.size());
  for (const auto& p : grid) out.push_back(as_tuple(p));
  return out;
}

ShapePolicy policy_of(const std::string& s) {
  if (s == "pad") return ShapePolicy::kPad;
  if (s == "strict") return ShapePolicy::kStrict;
  throw Error("policy must be 'pad' or 'strict'");
}

WalkProcess walk_process(std::size_t m, std::size_t horizon, double p_up, double p_down, double scale, double initial,
                         double initial_variance) {
  WalkProcess p = WalkProcess::uniform(m, StepDistribution::lattice(p_up, p_down, scale), initial, horizon);
  p.initial_variance.assign(m, initial_variance);
  p.validate();
  return p;
}

std::vector<std::vector<double>> encoder_rows(const Encoder& e) { return decode(e).rows(); }

}  // namespace

PYBIND11_MODULE(_pdnf, m) {
  m.doc() = "Probabilistic disjunctive normal forms";

  auto base = py::register_exception<Error>(m, "PdnfError", PyExc_ValueError);
  py::register_exception<ContradictoryEvidence>(m, "ContradictoryEvidence", base.ptr());

  py::class_<WeightMatrix>(m, "WeightMatrix")
      .def(py::init(&WeightMatrix::from_rows), py::arg("rows"))
      .def_property_readonly("n", &WeightMatrix::n)
      .def_property_readonly("m", &WeightMatrix::m)
      .def("rows", &WeightMatrix::rows)
      .def("__getitem__", [](const WeightMatrix& w, std::pair<std::size_t, std::size_t> ij) {
        if (ij.first >= w.n() || ij.second >= w.m()) throw py::index_error();
        return w(ij.first, ij.second);
      })
      .def("__eq__", [](const WeightMatrix& a, const WeightMatrix& b) { return a == b; })
      .def("__repr__", [](const WeightMatrix& w) { return "WeightMatrix(" + w.shape_string() + ")"; });

  m.def("add", [](const WeightMatrix& a, const WeightMatrix& b, const std::string& policy) { return add(a, b, policy_of(policy)); },
        py::arg("a"), py::arg("b"), py::arg("policy") = "pad");
  m.def("subtract", [](const WeightMatrix& a, const WeightMatrix& b, const std::string& policy) { return subtract(a, b, policy_of(policy)); },
        py::arg("a"), py::arg("b"), py::arg("policy") = "pad");
  m.def("scale", &scale, py::arg("alpha"), py::arg("z"));
  m.def("norm_l1", &norm_l1);
  m.def("distance_l1", [](const WeightMatrix& a, const WeightMatrix& b, const std::string& policy) { return distance_l1(a, b, policy_of(policy)); },
        py::arg("a"), py::arg("b"), py::arg("policy") = "pad");

  py::class_<SoftmaxFamily>(m, "SoftmaxFamily")
      .def(py::init<std::vector<SoftmaxFamily::Coefficients>>(), py::arg("alpha"))
      .def_static("symmetric", &SoftmaxFamily::symmetric, py::arg("m"))
      .def_property_readonly("m", &SoftmaxFamily::m)
      .def_property_readonly("alpha", &SoftmaxFamily::alpha)
      .def("eval", [](const SoftmaxFamily& f, std::size_t j, double xi) { return as_tuple(ProbabilityFamily(f).eval(j, xi)); });

  py::class_<ThresholdFamily>(m, "ThresholdFamily")
      .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("low"), py::arg("high"))
      .def_property_readonly("m", &ThresholdFamily::m)
      .def_property_readonly("low", &ThresholdFamily::low)
      .def_property_readonly("high", &ThresholdFamily::high)
      .def("eval", [](const ThresholdFamily& f, std::size_t j, double xi) { return as_tuple(ProbabilityFamily(f).eval(j, xi)); });

  py::class_<Pdnf>(m, "Pdnf")
      .def(py::init([](const WeightMatrix& w, const SoftmaxFamily& f) { return Pdnf(w, f); }), py::arg("weights"), py::arg("family"))
      .def(py::init([](const WeightMatrix& w, const ThresholdFamily& f) { return Pdnf(w, f); }), py::arg("weights"), py::arg("family"))
      .def_property_readonly("n", &Pdnf::n)
      .def_property_readonly("m", &Pdnf::m)
      .def_property_readonly("weights", &Pdnf::weights)
      .def_property_readonly("family_kind", [](const Pdnf& z) { return z.family().kind(); })
      .def("probabilities", [](const Pdnf& z) { return as_tuples(z.probabilities()); })
      .def("to_json", &to_json, py::arg("indent") = 2)
      .def_static("from_json", &pdnf_from_json)
      .def_static("load", [](const std::string& path) { return load_pdnf(path); })
      .def("save", [](const Pdnf& z, const std::string& path) { save_pdnf(z, path); });

  m.def("total_entropy", py::overload_cast<const Pdnf&>(&total_entropy));
  m.def("entropy", [](const std::tuple<double, double, double>& p) { return entropy(from_tuple(p)); });
  m.def("partition_probs", [](std::size_t pos, std::size_t neg, std::size_t eps) { return as_tuple(partition_probs(pos, neg, eps)); },
        py::arg("pos"), py::arg("neg"), py::arg("eps"));

  m.def("encode", [](const WeightMatrix& w) { return encode(w).heights(); });
  m.def("l1_norm_encoder", [](const WeightMatrix& w) { return l1_norm(encode(w)); });

  py::class_<Venjunction>(m, "Venjunction")
      .def(py::init(&parse_venjunction), py::arg("text"))
      .def_property_readonly("n", &Venjunction::n)
      .def_property_readonly("m", &Venjunction::m)
      .def_property_readonly("code", &Venjunction::code)
      .def("literals", [](const Venjunction& v) {
        std::vector<int> out;
        for (Literal l : v.literals()) out.push_back(to_int(l));
        return out;
      })
      .def("__str__", &Venjunction::to_string)
      .def("__repr__", [](const Venjunction& v) { return "Venjunction('" + v.to_string() + "')"; })
      .def("__eq__", [](const Venjunction& a, const Venjunction& b) { return a == b; })
      .def("__hash__", [](const Venjunction& v) { return py::hash(py::str(v.to_string())); });
  m.def("distance", &venjunction_distance);

  py::class_<VenjunctionMeasure>(m, "Measure")
      .def(py::init<const Pdnf&>(), py::arg("pdnf"))
      .def(py::init([](std::size_t n, std::size_t mm, const std::vector<std::tuple<double, double, double>>& triples) {
             std::vector<ProbTriple> grid;
             for (const auto& t : triples) grid.push_back(from_tuple(t));
             return VenjunctionMeasure(n, mm, std::move(grid));
           }),
           py::arg("n"), py::arg("m"), py::arg("triples"))
      .def_property_readonly("n", &VenjunctionMeasure::n)
      .def_property_readonly("m", &VenjunctionMeasure::m)
      .def("mass", &mass)
      .def("support", &enumerate_support, py::arg("cap") = kDefaultEnumerationCap)
      .def("sample", [](const VenjunctionMeasure& meas, std::size_t count, std::uint64_t seed) {
             Rng rng(seed);
             return sample(meas, rng, count);
           },
           py::arg("count"), py::arg("seed"))
      .def("language_size", [](const VenjunctionMeasure& meas) { return language(meas).size(); })
      .def("language_regex", [](const VenjunctionMeasure& meas) { return language(meas).regex(); });

  m.def("hidden_variable_encoding", [](const std::vector<Venjunction>& support) {
    const auto enc = hidden_variable_encoding(support);
    std::vector<std::vector<int>> hidden;
    for (const auto& row : enc.hidden) {
      std::vector<int> r;
      for (Literal l : row) r.push_back(to_int(l));
      hidden.push_back(r);
    }
    return py::make_tuple(enc.hidden_count, hidden);
  });
  m.def("mixture_measure", [](const std::vector<std::pair<double, VenjunctionMeasure>>& comps, const std::vector<Venjunction>& event) {
    std::vector<MixtureComponent> c;
    for (const auto& [w, meas] : comps) c.push_back({w, meas});
    return mixture_measure(c, event);
  });

  m.def("fuse", [](const std::tuple<double, double, double>& p, const std::tuple<double, double, double>& q) {
    return as_tuple(fuse(from_tuple(p), from_tuple(q)));
  });
  m.def("fuse_pdnf", &fuse_pdnf);
  m.def("check_composition", &check_composition, py::arg("family"), py::arg("j"), py::arg("xi"), py::arg("eta"));
  m.def("check_characterization",
        [](const std::function<std::tuple<double, double, double>(double)>& f, const std::vector<double>& grid, double tol)
            -> std::optional<std::tuple<double, double, double>> {
          const auto w = check_characterization([&](double x) { return from_tuple(f(x)); }, grid, tol);
          if (!w) return std::nullopt;
          return std::make_tuple(w->xi, w->eta, w->deviation);
        },
        py::arg("weight_map"), py::arg("grid"), py::arg("tolerance") = 1e-6);
  m.def("convergence_experiment",
        [](const SoftmaxFamily& f, std::size_t j, const std::vector<double>& stream, double eps) {
          return convergence_experiment(f, j, stream, eps);
        },
        py::arg("family"), py::arg("j"), py::arg("stream"), py::arg("epsilon"));
  m.def("coupon_bound", [](double p_min, double delta, std::size_t n, std::size_t mm) { return coupon_bound(p_min, delta, n, mm).draws; },
        py::arg("p_min"), py::arg("delta"), py::arg("n"), py::arg("m"));
  m.def("identification_experiment",
        [](const VenjunctionMeasure& meas, std::size_t trials, double delta, std::uint64_t seed, std::optional<double> p_min) {
          Rng rng(seed);
          const auto r = identification_experiment(meas, rng, trials, delta, p_min);
          py::dict out;
          out["draws"] = r.bound.draws;
          out["p_min"] = r.bound.p_min;
          out["support_size"] = r.support_size;
          out["success_rate"] = r.success_rate;
          return out;
        },
        py::arg("measure"), py::arg("trials"), py::arg("delta"), py::arg("seed"), py::arg("p_min") = std::nullopt);

  py::class_<DistanceDistribution>(m, "DistanceDistribution")
      .def_readonly("coeffs", &DistanceDistribution::coeffs)
      .def_readonly("mean", &DistanceDistribution::mean)
      .def_readonly("stddev", &DistanceDistribution::stddev)
      .def("ball", &ball_probability, py::arg("rho"))
      .def("normal_approx", &normal_approx, py::arg("rho"));
  m.def("distance_distribution", &distance_distribution, py::arg("measure"), py::arg("target"));

  m.def("walk_moments",
        [](std::size_t mm, std::size_t horizon, double p_up, double p_down, double scale, double initial, double initial_variance) {
          const WalkProcess p = walk_process(mm, horizon, p_up, p_down, scale, initial, initial_variance);
          return py::make_tuple(encoder_rows(mean_encoder(p)), encoder_rows(variance_encoder(p)));
        },
        py::arg("m"), py::arg("horizon"), py::arg("p_up") = 0.5, py::arg("p_down") = 1.0 / 3.0, py::arg("scale") = 1.0,
        py::arg("initial") = 0.0, py::arg("initial_variance") = 0.0);
  m.def("simulate_walks",
        [](std::size_t mm, std::size_t horizon, std::size_t count, std::uint64_t seed, double p_up, double p_down, double scale) {
          Rng rng(seed);
          return simulate_walks(walk_process(mm, horizon, p_up, p_down, scale, 0.0, 0.0), rng, count);
        },
        py::arg("m"), py::arg("horizon"), py::arg("count"), py::arg("seed"), py::arg("p_up") = 0.5, py::arg("p_down") = 1.0 / 3.0,
        py::arg("scale") = 1.0);

  m.def("sensor_demo",
        [](std::size_t experiments, std::uint64_t seed, const std::string& coin) {
          SensorConfig cfg;
          if (coin == "ramp") cfg.coin = ErrorCoin::kRamp;
          else if (coin != "fair") throw Error("coin must be 'fair' or 'ramp'");
          Rng rng(seed);
          py::list out;
          for (const auto& r : run_demo(cfg, experiments, rng)) {
            out.append(py::make_tuple(r.sensor, r.t, r.component, r.analytic_avg, r.empirical_freq, r.std_err));
          }
          return out;
        },
        py::arg("experiments"), py::arg("seed"), py::arg("coin") = "fair");
  m.def("decide",
        [](const std::vector<double>& theta, const std::vector<double>& pressure, const std::vector<bool>& triggered) {
          if (theta.size() != pressure.size() || theta.size() != triggered.size()) throw Error("reading series differ in length");
          std::vector<SensorReading> r;
          for (std::size_t k = 0; k < theta.size(); ++k) r.push_back({theta[k], pressure[k], triggered[k], triggered[k]});
          const Decision d = decision_rule(SensorConfig{}, r);
          return py::make_tuple(d.act, d.failing_index, d.clause);
        });
}
