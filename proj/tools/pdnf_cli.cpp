// pdnf: command-line front end. Every subcommand writes CSV (or a model JSON
// where noted) preceded by one "# key=value ..." header line.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pdnf/pdnf.hpp"

using namespace pdnf;

namespace {

class Header {
 public:
  explicit Header(std::string command) { text_ = "# command=" + command; }
  Header& add(const std::string& key, const std::string& value) {
    text_ += " " + key + "=" + value;
    return *this;
  }
  Header& add(const std::string& key, double value) { return add(key, format_real(value)); }
  Header& add(const std::string& key, std::uint64_t value) { return add(key, std::to_string(value)); }
  const std::string& str() const { return text_; }

 private:
  std::string text_;
};

struct Output {
  std::string path;
  std::ofstream file;
  std::ostream& stream() {
    if (path.empty() || path == "-") return std::cout;
    if (!file.is_open()) {
      file.open(path);
      if (!file) throw Error("cannot open output file '" + path + "'");
    }
    return file;
  }
};

struct Options {
  std::string model;
  std::string model2;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::size_t count = 1000;
  std::size_t trials = 200;
};

std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

Pdnf need_model(const std::string& path, const char* flag = "--model") {
  if (path.empty()) throw CLI::RequiredError(flag);
  return load_pdnf(path);
}

ProbTriple parse_triple(const std::string& text) {
  std::vector<double> v;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      v.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw Error("cannot read triple '" + text + "'");
    }
  }
  if (v.size() != 3) throw Error("a triple needs three comma-separated values, got '" + text + "'");
  ProbTriple p{v[0], v[1], v[2]};
  require_valid(p, 1e-9);
  return p;
}

Venjunction target_or_default(const std::string& text, const Pdnf& z) {
  if (text.empty()) return Venjunction(z.n(), z.m(), std::vector<Literal>(z.n() * z.m(), Literal::kPresent));
  return parse_venjunction(text);
}

std::string triple_csv(const ProbTriple& p) {
  return format_real(p.neg) + "," + format_real(p.eps) + "," + format_real(p.pos);
}

void write_grid(std::ostream& out, std::size_t n, std::size_t m, const std::vector<ProbTriple>& grid) {
  out << "t,j,p_neg,p_eps,p_pos\n";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) out << i + 1 << "," << j + 1 << "," << triple_csv(grid[i * m + j]) << "\n";
  }
}

void write_matrix(std::ostream& out, const WeightMatrix& w) {
  out << "t,j,weight\n";
  for (std::size_t i = 0; i < w.n(); ++i) {
    for (std::size_t j = 0; j < w.m(); ++j) out << i + 1 << "," << j + 1 << "," << format_real(w(i, j)) << "\n";
  }
}

struct WalkOptions {
  std::size_t m = 1;
  std::size_t horizon = 10;
  double p_up = 0.5;
  double p_down = 1.0 / 3.0;
  double scale = 1.0;
  double initial = 0.0;
  double initial_variance = 0.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--vars", m, "Number of variables m")->check(CLI::PositiveNumber);
    cmd->add_option("--horizon", horizon, "Observation times t = 1..horizon")->check(CLI::PositiveNumber);
    cmd->add_option("--p-up", p_up, "Probability of a +1 step");
    cmd->add_option("--p-down", p_down, "Probability of a -1 step");
    cmd->add_option("--scale", scale, "Step multiplier");
    cmd->add_option("--initial", initial, "Initial weight");
    cmd->add_option("--initial-variance", initial_variance, "Variance of a normal initial weight");
  }
  WalkProcess process() const {
    WalkProcess p = WalkProcess::uniform(m, StepDistribution::lattice(p_up, p_down, scale), initial, horizon);
    p.initial_variance.assign(m, initial_variance);
    p.validate();
    return p;
  }
  void describe(Header& h) const {
    h.add("vars", std::uint64_t{m}).add("horizon", std::uint64_t{horizon}).add("p_up", p_up).add("p_down", p_down);
    h.add("scale", scale).add("initial", initial).add("initial_variance", initial_variance);
  }
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> v;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) v.push_back(std::stod(item));
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probabilistic disjunctive normal forms: sampling, fusion, identification and distances"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--model", opt.model, "PDNF model (JSON)");
  app.add_option("--model2", opt.model2, "Second PDNF model (JSON)");
  app.add_option("--out", opt.out, "Output path (default stdout)");
  app.add_option("--seed", opt.seed, "64-bit seed; generated and echoed when absent");
  app.add_option("--count", opt.count, "Number of draws / walks")->check(CLI::PositiveNumber);
  app.add_option("--trials", opt.trials, "Number of experiment trials")->check(CLI::PositiveNumber);
  int digits = 12;
  app.add_option("--digits", digits, "Significant digits in output (0: shortest exact form)")->check(CLI::Range(0, 17));

  Output out;
  std::function<void()> action;

  // algebra
  std::string op = "norm";
  std::string policy = "pad";
  double alpha = 1.0;
  std::string save;
  auto* algebra = app.add_subcommand("algebra", "Vector-space operations on weight matrices");
  algebra->add_option("--op", op, "add, subtract, scale, norm or distance")
      ->check(CLI::IsMember({"add", "subtract", "scale", "norm", "distance"}));
  algebra->add_option("--alpha", alpha, "Scalar for --op scale");
  algebra->add_option("--policy", policy, "Shape mismatch in n: pad or strict")->check(CLI::IsMember({"pad", "strict"}));
  algebra->add_option("--save", save, "Write the resulting model as JSON");
  algebra->callback([&] {
    action = [&] {
      const Pdnf a = need_model(opt.model);
      const ShapePolicy pol = policy == "pad" ? ShapePolicy::kPad : ShapePolicy::kStrict;
      Header h("algebra");
      h.add("op", op).add("model", opt.model);
      auto& os = out.stream();
      if (op == "norm") {
        os << h.str() << "\nnorm_l1\n" << format_real(norm_l1(a.weights())) << "\n";
        return;
      }
      if (op == "scale") {
        const WeightMatrix r = scale(alpha, a.weights());
        os << h.add("alpha", alpha).str() << "\n";
        write_matrix(os, r);
        if (!save.empty()) save_pdnf(Pdnf(r, a.family()), save);
        return;
      }
      const Pdnf b = need_model(opt.model2, "--model2");
      h.add("model2", opt.model2).add("policy", policy);
      if (op == "distance") {
        os << h.str() << "\ndistance_l1\n" << format_real(distance_l1(a.weights(), b.weights(), pol)) << "\n";
        return;
      }
      const WeightMatrix r = op == "add" ? add(a.weights(), b.weights(), pol) : subtract(a.weights(), b.weights(), pol);
      os << h.str() << "\n";
      write_matrix(os, r);
      if (!save.empty()) save_pdnf(Pdnf(r, a.family()), save);
    };
  });

  // probs
  std::optional<std::vector<double>> check_range;
  std::size_t check_points = 1001;
  auto* probs = app.add_subcommand("probs", "Literal probabilities per position");
  probs->add_option("--check", check_range, "Validate the family on [lo, hi]")->expected(2);
  probs->add_option("--points", check_points, "Grid points for --check");
  probs->callback([&] {
    action = [&] {
      const Pdnf z = need_model(opt.model);
      auto& os = out.stream();
      os << Header("probs").add("model", opt.model).add("family", z.family().kind()).str() << "\n";
      write_grid(os, z.n(), z.m(), z.probabilities());
      if (check_range) {
        const auto r = validate_definition(z.family(), (*check_range)[0], (*check_range)[1], check_points);
        os << "\nj,pos_nondecreasing,neg_nonincreasing,sums_to_one,pos_zero_at_origin,neg_zero_at_origin\n";
        for (std::size_t j = 0; j < r.variables.size(); ++j) {
          const auto& v = r.variables[j];
          os << j + 1 << "," << v.pos_nondecreasing << "," << v.neg_nonincreasing << "," << v.sums_to_one << ","
             << v.pos_zero_at_origin << "," << v.neg_zero_at_origin << "\n";
        }
        os << "# definition " << (r.strict() ? "strict" : "non-strict") << "\n";
      }
    };
  });

  auto* ent = app.add_subcommand("entropy", "Per-position and total entropy (nats)");
  ent->callback([&] {
    action = [&] {
      const Pdnf z = need_model(opt.model);
      const auto grid = z.probabilities();
      auto& os = out.stream();
      os << Header("entropy").add("model", opt.model).add("total", total_entropy(z)).str() << "\nt,j,entropy\n";
      for (std::size_t i = 0; i < z.n(); ++i) {
        for (std::size_t j = 0; j < z.m(); ++j) os << i + 1 << "," << j + 1 << "," << format_real(entropy(grid[i * z.m() + j])) << "\n";
      }
    };
  });

  auto* samp = app.add_subcommand("sample", "Draw venjunctions");
  samp->callback([&] {
    action = [&] {
      const Pdnf z = need_model(opt.model);
      const std::uint64_t seed = resolve_seed(opt);
      Rng rng(seed);
      const auto draws = sample(VenjunctionMeasure(z), rng, opt.count);
      auto& os = out.stream();
      os << Header("sample").add("model", opt.model).add("seed", seed).add("draws", std::uint64_t{opt.count}).str()
         << "\ndraw,venjunction\n";
      for (std::size_t k = 0; k < draws.size(); ++k) os << k + 1 << "," << draws[k].to_string() << "\n";
    };
  });

  std::uint64_t cap = kDefaultEnumerationCap;
  auto* sup = app.add_subcommand("support", "Enumerate the positive-mass venjunctions");
  sup->add_option("--cap", cap, "Largest 3^(nm) to enumerate");
  sup->callback([&] {
    action = [&] {
      const Pdnf z = need_model(opt.model);
      const auto support = enumerate_support(VenjunctionMeasure(z), cap);
      auto& os = out.stream();
      os << Header("support").add("model", opt.model).add("size", std::uint64_t{support.size()}).str() << "\n";
      write_support_csv(os, support);
    };
  });

  auto* lang = app.add_subcommand("language", "Support as a product of local languages");
  lang->callback([&] {
    action = [&] {
      const Pdnf z = need_model(opt.model);
      const Language l = language(VenjunctionMeasure(z));
      auto& os = out.stream();
      os << Header("language").add("model", opt.model).str() << "\nsize,log_size,regex\n";
      os << (l.size() ? std::to_string(*l.size()) : std::string("overflow")) << "," << format_real(l.log_size()) << ",\""
         << l.regex() << "\"\n";
    };
  });

  std::vector<std::string> given;
  auto* hidden = app.add_subcommand("hidden-encode", "Deterministic form of a support with hidden variables");
  hidden->add_option("venjunctions", given, "Venjunctions (text form); default: support of --model");
  hidden->callback([&] {
    action = [&] {
      std::vector<Venjunction> support;
      if (given.empty()) {
        for (auto& [v, p] : enumerate_support(VenjunctionMeasure(need_model(opt.model)))) support.push_back(v);
      } else {
        for (const auto& s : given) support.push_back(parse_venjunction(s));
      }
      const auto enc = hidden_variable_encoding(support);
      auto& os = out.stream();
      os << Header("hidden-encode").add("support_size", std::uint64_t{support.size()}).add("hidden", std::uint64_t{enc.hidden_count}).str()
         << "\nindex,observed,hidden\n";
      for (std::size_t r = 0; r < support.size(); ++r) {
        std::string code;
        for (Literal l : enc.hidden[r]) code += l == Literal::kNegated ? '-' : (l == Literal::kAbsent ? 'e' : '+');
        os << r + 1 << "," << enc.observed[r].to_string() << "," << (code.empty() ? "e" : code) << "\n";
      }
    };
  });

  std::string p_text, q_text;
  auto* fz = app.add_subcommand("fuse", "Bayesian fusion of two triples or two models");
  fz->add_option("--p", p_text, "First triple neg,eps,pos");
  fz->add_option("--q", q_text, "Second triple neg,eps,pos");
  fz->add_option("--save", save, "Write the fused softmax model as JSON");
  fz->callback([&] {
    action = [&] {
      auto& os = out.stream();
      if (!p_text.empty() || !q_text.empty()) {
        if (p_text.empty() || q_text.empty()) throw CLI::RequiredError("--p and --q");
        const ProbTriple f = fuse(parse_triple(p_text), parse_triple(q_text));
        os << Header("fuse").add("p", p_text).add("q", q_text).str() << "\np_neg,p_eps,p_pos\n" << triple_csv(f) << "\n";
        return;
      }
      const Pdnf a = need_model(opt.model);
      const Pdnf b = need_model(opt.model2, "--model2");
      Header h("fuse");
      h.add("model", opt.model).add("model2", opt.model2);
      if (a.family().is_softmax() && b.family().is_softmax() &&
          a.family().softmax()->alpha() == b.family().softmax()->alpha()) {
        const Pdnf f = fuse_pdnf(a, b);
        os << h.add("mode", "weights").str() << "\n";
        write_grid(os, f.n(), f.m(), f.probabilities());
        if (!save.empty()) save_pdnf(f, save);
      } else {
        if (!save.empty()) throw Error("--save needs two softmax models with the same coefficients");
        os << h.add("mode", "positions").str() << "\n";
        write_grid(os, a.n(), a.m(), fuse_positions(a, b));
      }
    };
  });

  std::optional<double> xi, eta;
  std::size_t var = 1;
  double range = 50.0;
  std::optional<std::vector<double>> grid;
  auto* comp = app.add_subcommand("compose-check", "Check F(xi + eta) against fuse(F(xi), F(eta))");
  comp->add_option("--xi", xi, "First weight");
  comp->add_option("--eta", eta, "Second weight");
  comp->add_option("--var", var, "Variable index j (1-based)")->check(CLI::PositiveNumber);
  comp->add_option("--range", range, "Random sweep draws xi, eta from [-range, range]");
  comp->add_option("--grid", grid, "Characterization search on lo,hi,points")->expected(3);
  comp->callback([&] {
    action = [&] {
      const Pdnf z = need_model(opt.model);
      const ProbabilityFamily fam = z.family();
      const std::size_t j = var - 1;
      const WeightMap map = [&](double x) { return fam.eval(j, x); };
      auto& os = out.stream();
      Header h("compose-check");
      h.add("model", opt.model).add("var", std::uint64_t{var});
      if (grid) {
        const auto points = static_cast<std::size_t>((*grid)[2]);
        if (points < 2) throw Error("--grid needs at least two points");
        std::vector<double> g(points);
        for (std::size_t k = 0; k < points; ++k) g[k] = (*grid)[0] + ((*grid)[1] - (*grid)[0]) * static_cast<double>(k) / static_cast<double>(points - 1);
        const auto w = check_characterization(map, g);
        os << h.add("grid", format_real((*grid)[0]) + ":" + format_real((*grid)[1]) + ":" + std::to_string(points)).str()
           << "\nxi,eta,deviation\n";
        if (w) os << format_real(w->xi) << "," << format_real(w->eta) << "," << format_real(w->deviation) << "\n";
        else os << "# none found on grid\n";
        return;
      }
      if (xi || eta) {
        if (!xi || !eta) throw CLI::RequiredError("--xi and --eta");
        os << h.str() << "\nxi,eta,deviation\n"
           << format_real(*xi) << "," << format_real(*eta) << "," << format_real(composition_deviation(map, *xi, *eta)) << "\n";
        return;
      }
      const std::uint64_t seed = resolve_seed(opt);
      Rng rng(seed);
      os << h.add("seed", seed).add("draws", std::uint64_t{opt.count}).add("range", range).str() << "\nxi,eta,deviation\n";
      double worst = 0.0;
      for (std::size_t k = 0; k < opt.count; ++k) {
        const double a = -range + 2 * range * rng.uniform();
        const double b = -range + 2 * range * rng.uniform();
        const double d = composition_deviation(map, a, b);
        worst = std::max(worst, d);
        os << format_real(a) << "," << format_real(b) << "," << format_real(d) << "\n";
      }
      os << "# max_deviation=" << format_real(worst) << "\n";
    };
  });

  double delta = 0.1;
  std::optional<double> pmin;
  auto* ident = app.add_subcommand("identify", "Coupon-collector identification experiment");
  ident->add_option("--delta", delta, "Failure probability");
  ident->add_option("--pmin", pmin, "Mass lower bound (default: smallest enumerated mass)");
  ident->add_option("--cap", cap, "Largest 3^(nm) to enumerate");
  ident->callback([&] {
    action = [&] {
      const Pdnf z = need_model(opt.model);
      const std::uint64_t seed = resolve_seed(opt);
      Rng rng(seed);
      const auto r = identification_experiment(VenjunctionMeasure(z), rng, opt.trials, delta, pmin, cap);
      auto& os = out.stream();
      os << Header("identify")
                .add("model", opt.model)
                .add("seed", seed)
                .add("trials", std::uint64_t{opt.trials})
                .add("delta", delta)
                .add("p_min", r.bound.p_min)
                .add("draws", r.bound.draws)
                .str()
         << "\n";
      write_identification_csv(os, r);
    };
  });

  std::size_t bn = 1, bm = 1;
  double bpmin = 0.1, bdelta = 0.05;
  auto* bound = app.add_subcommand("bound", "Draws needed to see the whole support");
  bound->add_option("--pmin", bpmin, "Mass lower bound")->required();
  bound->add_option("--delta", bdelta, "Failure probability")->required();
  bound->add_option("--n", bn, "Number of conjunctions")->check(CLI::PositiveNumber);
  bound->add_option("--m", bm, "Number of variables")->check(CLI::PositiveNumber);
  bound->callback([&] {
    action = [&] {
      const auto b = coupon_bound(bpmin, bdelta, bn, bm);
      auto& os = out.stream();
      os << Header("bound").str() << "\np_min,delta,n,m,N\n"
         << format_real(b.p_min) << "," << format_real(b.delta) << "," << b.n << "," << b.m << "," << b.draws << "\n"
         << "# N=" << b.draws << "\n";
    };
  });

  std::string target;
  auto* dist = app.add_subcommand("distance", "Exact law of the distance to a target venjunction");
  dist->add_option("--target", target, "Target venjunction (default: every literal present)");
  dist->callback([&] {
    action = [&] {
      const Pdnf z = need_model(opt.model);
      const Venjunction tv = target_or_default(target, z);
      const auto d = distance_distribution(VenjunctionMeasure(z), tv);
      auto& os = out.stream();
      os << Header("distance").add("model", opt.model).add("target", "\"" + tv.to_string() + "\"").add("mean", d.mean).add("stddev", d.stddev).str() << "\n";
      write_distance_csv(os, d);
    };
  });

  int rho = 0;
  auto* ball = app.add_subcommand("ball", "P{d(V, target) <= rho}");
  ball->add_option("--rho", rho, "Radius")->required();
  ball->add_option("--target", target, "Target venjunction (default: every literal present)");
  ball->callback([&] {
    action = [&] {
      const Pdnf z = need_model(opt.model);
      const Venjunction tv = target_or_default(target, z);
      const auto d = distance_distribution(VenjunctionMeasure(z), tv);
      const double p = ball_probability(d, rho);
      auto& os = out.stream();
      os << Header("ball").add("model", opt.model).add("target", "\"" + tv.to_string() + "\"").str() << "\nrho,probability\n"
         << rho << "," << format_real(p) << "\n";
    };
  });

  auto* norm = app.add_subcommand("normal-approx", "Normal approximation of the ball probability");
  norm->add_option("--rho", rho, "Radius")->required();
  norm->add_option("--target", target, "Target venjunction (default: every literal present)");
  norm->callback([&] {
    action = [&] {
      const Pdnf z = need_model(opt.model);
      const Venjunction tv = target_or_default(target, z);
      const auto d = distance_distribution(VenjunctionMeasure(z), tv);
      const double exact = rho >= 0 && static_cast<std::size_t>(rho) <= d.max_distance() ? ball_probability(d, rho) : (rho < 0 ? 0.0 : 1.0);
      const double approx = normal_approx(d, rho);
      auto& os = out.stream();
      os << Header("normal-approx").add("model", opt.model).add("target", "\"" + tv.to_string() + "\"").add("mean", d.mean).add("stddev", d.stddev).str()
         << "\nrho,normal_approx,exact\n"
         << rho << "," << format_real(approx) << "," << format_real(exact) << "\n";
    };
  });

  WalkOptions walk_opt;
  bool analytic = false;
  auto* walk = app.add_subcommand("walk", "Simulate lattice random-walk weight trajectories");
  walk_opt.attach(walk);
  walk->add_flag("--analytic", analytic, "Print the closed-form moments instead");
  walk->callback([&] {
    action = [&] {
      const WalkProcess proc = walk_opt.process();
      auto& os = out.stream();
      Header h("walk");
      walk_opt.describe(h);
      if (analytic) {
        os << h.add("mode", "analytic").str() << "\n";
        write_moments_csv(os, proc);
        return;
      }
      const std::uint64_t seed = resolve_seed(opt);
      Rng rng(seed);
      const auto walks = simulate_walks(proc, rng, opt.count);
      os << h.add("seed", seed).add("walks", std::uint64_t{opt.count}).str() << "\n";
      write_trajectories_csv(os, walks);
    };
  });

  WalkOptions mean_opt;
  auto* mean = app.add_subcommand("mean-encoder", "Monte Carlo mean encoder against the closed form");
  mean_opt.attach(mean);
  mean->callback([&] {
    action = [&] {
      const WalkProcess proc = mean_opt.process();
      const std::uint64_t seed = resolve_seed(opt);
      Rng rng(seed);
      const auto est = monte_carlo_mean_encoder(proc, rng, opt.count);
      const Encoder exact = mean_encoder(proc);
      auto& os = out.stream();
      Header h("mean-encoder");
      mean_opt.describe(h);
      os << h.add("seed", seed).add("walks", std::uint64_t{opt.count}).add("l1_error", est.l1_error).str()
         << "\nt,j,mc_mean,analytic_mean\n";
      for (std::size_t s = 0; s < proc.horizon; ++s) {
        for (std::size_t j = 0; j < proc.m(); ++j) {
          os << s + 1 << "," << j + 1 << "," << format_real(est.mean.height(s, j)) << "," << format_real(exact.height(s, j)) << "\n";
        }
      }
    };
  });

  WalkOptions hmm_opt;
  auto* hmm = app.add_subcommand("hmm", "Hidden random walk with venjunction emissions");
  hmm_opt.attach(hmm);
  hmm->callback([&] {
    action = [&] {
      const WalkProcess proc = hmm_opt.process();
      // The family comes from --model when given; the weights there are ignored.
      const ProbabilityFamily fam = opt.model.empty() ? ProbabilityFamily(SoftmaxFamily::symmetric(proc.m())) : load_pdnf(opt.model).family();
      const std::uint64_t seed = resolve_seed(opt);
      Rng rng(seed);
      const auto draws = hmm_samples(proc, fam, rng, opt.count);
      auto& os = out.stream();
      Header h("hmm");
      hmm_opt.describe(h);
      os << h.add("family", fam.kind()).add("seed", seed).add("draws", std::uint64_t{opt.count}).str() << "\ndraw,venjunction\n";
      for (std::size_t k = 0; k < draws.size(); ++k) os << k + 1 << "," << draws[k].emission.to_string() << "\n";
    };
  });

  SensorConfig cfg;
  std::string coin = "fair";
  std::vector<std::size_t> times;
  auto* sensor = app.add_subcommand("sensor-demo", "Temperature/pressure sensor experiment");
  sensor->add_option("--theta-x", cfg.theta_x, "Temperature false-trigger threshold");
  sensor->add_option("--theta-0", cfg.theta_0, "Temperature trigger threshold");
  sensor->add_option("--p-y", cfg.p_y, "Pressure false-trigger threshold");
  sensor->add_option("--p-0", cfg.p_0, "Pressure trigger threshold");
  sensor->add_option("--sigma-theta", cfg.sigma_theta, "Temperature margin fraction");
  sensor->add_option("--sigma-p", cfg.sigma_p, "Pressure margin fraction");
  sensor->add_option("--times", times, "Observation times (default 30..39)");
  sensor->add_option("--theta-base", cfg.theta_base, "Temperature walk offset");
  sensor->add_option("--theta-scale", cfg.theta_scale, "Temperature walk scale");
  sensor->add_option("--p-base", cfg.p_base, "Pressure walk offset");
  sensor->add_option("--p-scale", cfg.p_scale, "Pressure walk scale");
  sensor->add_option("--p-up", cfg.p_up, "Probability of a +1 step");
  sensor->add_option("--p-down", cfg.p_down, "Probability of a -1 step");
  sensor->add_option("--coin", coin, "Error variable inside the band: fair or ramp")->check(CLI::IsMember({"fair", "ramp"}));
  sensor->callback([&] {
    action = [&] {
      if (!times.empty()) cfg.times = times;
      cfg.coin = coin == "fair" ? ErrorCoin::kFair : ErrorCoin::kRamp;
      cfg.validate();
      const std::uint64_t seed = resolve_seed(opt);
      Rng rng(seed);
      const std::size_t experiments = app.count("--count") ? opt.count : 10000;
      const auto rows = run_demo(cfg, experiments, rng);
      auto& os = out.stream();
      os << Header("sensor-demo")
                .add("theta_x", cfg.theta_x)
                .add("theta_0", cfg.theta_0)
                .add("p_y", cfg.p_y)
                .add("p_0", cfg.p_0)
                .add("coin", coin)
                .add("seed", seed)
                .add("experiments", std::uint64_t{experiments})
                .str()
         << "\n";
      write_demo_csv(os, rows);
    };
  });

  std::string theta_list, p_list, trig_list;
  auto* decide = app.add_subcommand("decide", "Safety-margin decision rule over a reading series");
  decide->add_option("--theta", theta_list, "Measured temperatures, comma separated")->required();
  decide->add_option("--pressure", p_list, "Measured pressures, comma separated")->required();
  decide->add_option("--triggered", trig_list, "Both-sensors-triggered flags (0/1), default all 1");
  decide->add_option("--sigma-theta", cfg.sigma_theta, "Temperature margin fraction");
  decide->add_option("--sigma-p", cfg.sigma_p, "Pressure margin fraction");
  decide->callback([&] {
    action = [&] {
      cfg.validate();
      const auto th = parse_list(theta_list), pr = parse_list(p_list);
      const auto tr = trig_list.empty() ? std::vector<double>(th.size(), 1.0) : parse_list(trig_list);
      if (th.size() != pr.size() || th.size() != tr.size()) throw Error("reading series differ in length");
      std::vector<SensorReading> readings;
      for (std::size_t k = 0; k < th.size(); ++k) readings.push_back({th[k], pr[k], tr[k] != 0.0, tr[k] != 0.0});
      const Decision d = decision_rule(cfg, readings);
      auto& os = out.stream();
      os << Header("decide").add("margin_theta", cfg.margin_theta()).add("margin_p", cfg.margin_p()).str()
         << "\ndecision,failing_index,clause\n"
         << (d.act ? "act" : "hold") << "," << (d.failing_index ? std::to_string(*d.failing_index + 1) : "") << ",\""
         << d.clause << "\"\n";
    };
  });

  auto* enc = app.add_subcommand("encode", "Piecewise-constant encoder of the weights");
  enc->callback([&] {
    action = [&] {
      const Encoder e = encode(need_model(opt.model).weights());
      auto& os = out.stream();
      os << Header("encode").add("model", opt.model).add("l1", l1_norm(e)).add("asymmetry", asymmetry(e)).str() << "\n";
      write_csv(os, e);
    };
  });

  try {
    app.parse(argc, argv);
    set_significant_digits(digits);
    out.path = opt.out;
    action();
    out.stream().flush();
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    if (argc == 1) std::cerr << app.help();
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
