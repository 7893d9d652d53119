#pragma once

// The `repstat` command line: every subcommand builds one Table and streams
// it as CSV or JSON to stdout or --out.
//
// Exit codes: 0 success, 2 usage or parameter error, 3 sweep-cap refusal,
// 4 internal invariant violation.

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "repstat/bigint.hpp"
#include "repstat/error.hpp"
#include "repstat/kirillov.hpp"
#include "repstat/partitions.hpp"
#include "repstat/qseries.hpp"
#include "repstat/symstats.hpp"
#include "repstat/table.hpp"

namespace repstat {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitCap = 3,
  kExitInvariant = 4,
};

/// Parsed flags shared by the subcommands.
struct RunConfig {
  int n = 0;
  int nmin = 5;
  int nmax = 0;
  int bins = 20;
  int count = 1000;
  int workers = 1;
  int order = 25;
  int p = 0;
  double alpha = 0.4;
  double beta = 0.8;
  std::uint64_t seed = 1;
  std::string q = "2";
  std::string what = "dimsq";
  std::string algebra = "heis3";
  std::string format = "csv";
  std::string out;
  std::optional<int> cap;

  int sweep_cap() const { return cap.value_or(kDefaultSweepCap); }
};

namespace cli {

inline std::vector<Cell> poly_row(int n, const QPolynomial& poly) {
  return {std::int64_t{n}, std::int64_t{poly.degree()}, poly.to_string(), poly.coeff_strings()};
}

inline Table sym_sweep(const RunConfig& c) {
  Table t{{"lambda", "dim", "class_size", "ln_dim_sq", "ln_class"}, {}};
  for (const auto& r : sweep(c.n, c.sweep_cap()))
    t.add({to_string(r.lambda), r.dim, r.class_size, r.log_dim_sq, r.log_class});
  return t;
}

inline Table sym_hist(const RunConfig& c) {
  const auto records = sweep(c.n, c.sweep_cap());
  std::vector<double> values;
  for (const auto& r : records) {
    if (c.what == "dim") values.push_back(r.dim.convert_to<double>());
    else if (c.what == "dimsq") values.push_back(r.log_dim_sq);
    else values.push_back(r.log_class);
  }
  const Histogram h = histogram(values, c.bins);
  Table t{{"bin", "lower", "upper", "count"}, {}};
  for (std::size_t i = 0; i < h.counts.size(); ++i)
    t.add({static_cast<std::int64_t>(i), h.bin_edges[i], h.bin_edges[i + 1], h.counts[i]});
  return t;
}

inline Table sym_angle(const RunConfig& c) {
  Table t{{"n", "sum_dim", "sum_dim_sq", "count", "cos_sq", "log_ratio", "predicted_log",
           "difference"},
          {}};
  for (int n = 1; n <= c.nmax; ++n) {
    const AngleReport a = angle_report(n, c.sweep_cap());
    t.add({std::int64_t{n}, a.sum_dim, a.sum_dim_sq, a.count, a.cos_sq, a.log_ratio,
           a.predicted_log, a.log_ratio - a.predicted_log});
  }
  return t;
}

inline Table sym_intervals(const RunConfig& c) {
  Table t{{"n", "alpha", "beta", "count_A", "count_B", "ratio"}, {}};
  const int lo = c.n > 0 ? c.n : c.nmin;
  const int hi = c.n > 0 ? c.n : c.nmax;
  if (lo < 1 || hi < lo) throw ValidationError("intervals needs --n, or 1 <= --nmin <= --nmax");
  for (int n = lo; n <= hi; ++n) {
    const IntervalCounts ic = interval_counts(n, c.alpha, c.beta, c.sweep_cap());
    Cell ratio = std::monostate{};
    if (ic.count_B > 0) ratio = static_cast<double>(ic.count_A) / static_cast<double>(ic.count_B);
    t.add({std::int64_t{n}, c.alpha, c.beta, ic.count_A, ic.count_B, ratio});
  }
  return t;
}

inline Table sym_layers(const RunConfig& c) {
  const auto records = sweep(c.n, c.sweep_cap());
  Table t{{"k", "a", "b"}, {}};
  for (int k = 1; k <= c.n; ++k) {
    const LayerSums s = layer_sums(records, k);
    t.add({std::int64_t{k}, s.a, s.b});
  }
  return t;
}

inline Table sym_maxdim(const RunConfig& c) {
  Table t{{"n", "max_dim", "argmax", "vk_ratio", "mean_dim", "asymptotic_avg"}, {}};
  for (int n = 1; n <= c.nmax; ++n) {
    const auto records = sweep(n, c.sweep_cap());
    const MaxDimension md = max_dimension(records);
    std::vector<std::string> argmax;
    for (const auto& lambda : md.argmax) argmax.push_back(to_string(lambda));
    const Rational mean(involution_count(n), partition_count(n));
    t.add({std::int64_t{n}, md.m, argmax, vk_ratio(records), to_double(mean),
           std::exp(asymptotic_estimates(n).log_avg_asym)});
  }
  return t;
}

inline Table sym_plancherel(const RunConfig& c) {
  const auto samples = sample_plancherel(c.n, c.seed, c.count, c.workers);
  const double root = std::sqrt(static_cast<double>(c.n));
  Table t{{"index", "shape", "log_pl", "neg_log_pl_over_sqrt_n"}, {}};
  for (std::size_t i = 0; i < samples.size(); ++i)
    t.add({static_cast<std::int64_t>(i), to_string(samples[i].shape), samples[i].log_pl,
           -samples[i].log_pl / root});
  return t;
}

inline Table gl_poly(const RunConfig& c, const std::string& which) {
  if (c.nmax < 1) throw ValidationError("--nmax must be at least 1");
  Table t{{"n", "degree", "polynomial", "coeffs"}, {}};
  if (which == "classes") {
    const auto table = feit_fine(c.nmax);
    for (int n = 0; n <= c.nmax; ++n) t.add(poly_row(n, table[static_cast<std::size_t>(n)]));
  } else {
    for (int n = 1; n <= c.nmax; ++n) t.add(poly_row(n, which == "gow" ? gow_sum(n) : gl_order(n)));
  }
  return t;
}

/// 1/gamma(q) reference value from enough partial-sum terms that the tail
/// bound is negligible at double precision.
inline double inverse_gamma_reference(const Rational& q, Rational* tail = nullptr) {
  GammaPartial g = gamma_q(q, 1);
  for (int terms = 2; terms <= 200 && to_double(g.tail_bound / g.sum) > 1e-17; ++terms)
    g = gamma_q(q, terms);
  if (tail) *tail = g.tail_bound;
  return to_double(1 / g.sum);
}

inline Table gl_ratio(const RunConfig& c) {
  if (c.nmax < 1) throw ValidationError("--nmax must be at least 1");
  const Rational q = parse_rational(c.q);
  if (q <= 1) throw ValidationError("--q must exceed 1");
  const double ref = inverse_gamma_reference(q);
  const auto classes = feit_fine(c.nmax);
  Table t{{"n", "ratio", "ratio_value", "inv_gamma", "difference"}, {}};
  for (int n = 1; n <= c.nmax; ++n) {
    const Rational r = log_constant_ratio(n, q, classes);
    t.add({std::int64_t{n}, format_rational(r), to_double(r), ref, to_double(r) - ref});
  }
  return t;
}

inline BigInt integer_q(const std::string& text) {
  const Rational q = parse_rational(text);
  if (boost::multiprecision::denominator(q) != 1) throw ValidationError("--q must be an integer here");
  return boost::multiprecision::numerator(q);
}

inline Table gl_census(const RunConfig& c) {
  const Gl2Census g = gl2_census(integer_q(c.q));
  Table t{{"section", "item", "count", "value"}, {}};
  for (std::size_t i = 0; i < g.reps.size(); ++i)
    t.add({"rep", std::to_string(i + 1), g.reps[i].count, g.reps[i].value});
  for (std::size_t i = 0; i < g.classes.size(); ++i)
    t.add({"class", std::to_string(i + 1), g.classes[i].count, g.classes[i].value});
  t.add({"class", "4-centralizer-index", g.classes[3].count, g.elliptic_size_centralizer});
  t.add({"total", "group_order", std::monostate{}, g.group_order});
  t.add({"total", "rep_square_sum", std::monostate{}, g.rep_square_sum});
  t.add({"total", "class_sum_stated", std::monostate{}, g.class_sum_stated});
  t.add({"total", "class_sum_centralizer", std::monostate{}, g.class_sum_centralizer});
  t.add({"check", "reps", std::monostate{}, g.reps_ok});
  t.add({"check", "classes_stated", std::monostate{}, g.classes_stated_ok});
  t.add({"check", "classes_centralizer", std::monostate{}, g.classes_centralizer_ok});
  t.add({"check", "class_count", std::monostate{}, g.class_count_ok});
  t.add({"check", "symbolic_reps", std::monostate{}, g.symbolic_reps_ok});
  t.add({"check", "symbolic_classes_stated", std::monostate{}, g.symbolic_classes_stated_ok});
  t.add({"check", "symbolic_classes_centralizer", std::monostate{},
         g.symbolic_classes_centralizer_ok});
  return t;
}

inline Table gl_sl2(const RunConfig& c) {
  const BigInt q = integer_q(c.q);
  const Sl2Pgl2Check s = sl2_pgl2_leading_check(q);
  Table t{{"family", "twice_dim_sq", "class_size", "ratio", "ratio_value", "leading_terms_equal"}, {}};
  for (const auto& [name, pair] : {std::pair{"(q+1)/2", s.plus}, std::pair{"(q-1)/2", s.minus}})
    t.add({std::string(name), pair.twice_dim_sq, pair.class_size, format_rational(pair.ratio),
           to_double(pair.ratio), s.leading_terms_equal});
  return t;
}

inline Table gl_gauss(const RunConfig& c) {
  Table t{{"order", "identity_holds"}, {}};
  t.add({std::int64_t{c.order}, gauss_identity_check(c.order)});
  return t;
}

inline Table kirillov_table(const RunConfig& c) {
  const NilAlgebra alg = NilAlgebra::preset(c.algebra, c.p);
  const OrbitReport r = kirillov_report(alg);
  Table t{{"algebra", "p", "group_order", "orbit_count", "class_count", "orbit_sizes",
           "class_sizes", "rep_dims", "even_powers", "match_kirillov", "match_naive"},
          {}};
  t.add({r.algebra, std::int64_t{r.p}, r.group_order, static_cast<std::int64_t>(r.orbit_sizes.size()),
         static_cast<std::int64_t>(r.class_sizes.size()), r.orbit_sizes, r.class_sizes, r.rep_dims,
         r.even_powers, r.match_kirillov, r.match_naive});
  return t;
}

}  // namespace cli

/// Runs the command line. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Dimension and class-size statistics for S_n, GL_n(F_q) and small unipotent groups",
               "repstat"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--out", cfg.out, "Write to this file instead of stdout");
  app.add_option("--cap", cfg.cap, "Raise (or lower) the sweep limit on n")->check(CLI::Range(1, 200));

  std::map<CLI::App*, std::function<Table()>> actions;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                  std::function<Table()> action) {
    CLI::App* sub = parent->add_subcommand(name, help);
    actions[sub] = std::move(action);
    return sub;
  };
  const auto positive = CLI::Range(1, 1 << 20);

  CLI::App* sym = app.add_subcommand("sym", "Symmetric-group tables");
  sym->require_subcommand(1);
  leaf(sym, "sweep", "Per-partition dimension and class size",
       [&] { return cli::sym_sweep(cfg); })
      ->add_option("--n", cfg.n)->required()->check(positive);
  {
    auto* s = leaf(sym, "hist", "Histogram of d, ln d^2 or ln c", [&] { return cli::sym_hist(cfg); });
    s->add_option("--n", cfg.n)->required()->check(positive);
    s->add_option("--what", cfg.what)->check(CLI::IsMember({"dim", "dimsq", "class"}))->capture_default_str();
    s->add_option("--bins", cfg.bins)->check(CLI::Range(1, 100000))->capture_default_str();
  }
  leaf(sym, "angle", "Cosine between (d_lambda) and the ones vector, n = 1..nmax",
       [&] { return cli::sym_angle(cfg); })
      ->add_option("--nmax", cfg.nmax)->required()->check(positive);
  {
    auto* s = leaf(sym, "intervals", "Window counts of ln d^2 and ln c",
                   [&] { return cli::sym_intervals(cfg); });
    auto* n_opt = s->add_option("--n", cfg.n)->check(positive);
    auto* nmax_opt = s->add_option("--nmax", cfg.nmax)->check(positive);
    s->add_option("--nmin", cfg.nmin)->check(positive)->capture_default_str();
    n_opt->excludes(nmax_opt);
    s->add_option("--alpha", cfg.alpha)->check(CLI::Range(0.0, 1.0))->capture_default_str();
    s->add_option("--beta", cfg.beta)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  }
  leaf(sym, "layers", "Layer sums a^{n,k}, b^{n,k} for k = 1..n", [&] { return cli::sym_layers(cfg); })
      ->add_option("--n", cfg.n)->required()->check(positive);
  leaf(sym, "maxdim", "Maximal dimension, argmax and averages, n = 1..nmax",
       [&] { return cli::sym_maxdim(cfg); })
      ->add_option("--nmax", cfg.nmax)->required()->check(positive);
  {
    auto* s = leaf(sym, "plancherel", "Plancherel samples via RSK of uniform permutations",
                   [&] { return cli::sym_plancherel(cfg); });
    s->add_option("--n", cfg.n)->required()->check(CLI::Range(1, 100000));
    s->add_option("--count", cfg.count)->check(CLI::Range(1, 10000000))->capture_default_str();
    s->add_option("--seed", cfg.seed)->capture_default_str();
    s->add_option("--workers", cfg.workers)->check(CLI::Range(1, 256))->capture_default_str();
  }

  CLI::App* gl = app.add_subcommand("gl", "GL_n(F_q) polynomial tables");
  gl->require_subcommand(1);
  for (const char* which : {"gow", "classes", "order"}) {
    const std::string w = which;
    leaf(gl, w, "Polynomial table for n up to nmax", [&cfg, w] { return cli::gl_poly(cfg, w); })
        ->add_option("--nmax", cfg.nmax)->required()->check(CLI::Range(1, 200));
  }
  {
    auto* s = leaf(gl, "ratio", "B_n^2 / (C_n D_n) at q against 1/gamma(q)",
                   [&] { return cli::gl_ratio(cfg); });
    s->add_option("--nmax", cfg.nmax)->required()->check(CLI::Range(1, 200));
    s->add_option("--q", cfg.q, "Integer or fraction a/b")->capture_default_str();
  }
  leaf(gl, "census", "GL_2(F_q) representation and class census", [&] { return cli::gl_census(cfg); })
      ->add_option("--q", cfg.q)->required();
  leaf(gl, "sl2", "SL_2 / PGL_2 leading-term comparison (odd q)", [&] { return cli::gl_sl2(cfg); })
      ->add_option("--q", cfg.q)->required();
  leaf(gl, "gauss", "Coefficient check of the Gauss triangular-number identity",
       [&] { return cli::gl_gauss(cfg); })
      ->add_option("--order", cfg.order)->required()->check(CLI::Range(1, 5000));

  {
    auto* s = leaf(&app, "kirillov", "Coadjoint orbits vs conjugacy classes",
                   [&] { return cli::kirillov_table(cfg); });
    s->add_option("--alg", cfg.algebra)->required()->check(CLI::IsMember({"heis3", "ut4"}));
    s->add_option("--p", cfg.p)->required()->check(CLI::Range(2, 255));
  }

  std::vector<std::string> argv_store{"repstat"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "repstat: " << e.what() << '\n';
    return kExitUsage;
  }

  std::function<Table()>* action = nullptr;
  for (auto& [sub, fn] : actions)
    if (sub->parsed()) action = &fn;
  if (!action) {
    err << "repstat: no subcommand selected\n";
    return kExitUsage;
  }
  if (cfg.alpha >= cfg.beta) {
    err << "repstat: --alpha must be smaller than --beta\n";
    return kExitUsage;
  }
  if (cfg.cap && *cfg.cap != kDefaultSweepCap)
    err << "repstat: note: sweep cap set to " << *cfg.cap << " (default " << kDefaultSweepCap << ")\n";

  std::ofstream file;
  std::ostream* sink = &out;
  if (!cfg.out.empty()) {
    file.open(cfg.out, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "repstat: cannot write to '" << cfg.out << "'\n";
      return kExitUsage;
    }
    sink = &file;
  }

  try {
    const Table table = (*action)();
    std::string invocation = "repstat";
    for (const auto& a : args) invocation += " " + a;
    if (cfg.format == "json") {
      const bool seeded = app.get_subcommand("sym")->get_subcommand("plancherel")->parsed();
      write_json(*sink, table, {invocation, kVersion, seeded ? std::optional(cfg.seed) : std::nullopt});
    } else {
      write_csv(*sink, table);
    }
    sink->flush();
    if (!*sink) {
      err << "repstat: failed writing output\n";
      return kExitUsage;
    }
  } catch (const CapExceeded& e) {
    err << "repstat: " << e.what() << '\n';
    return kExitCap;
  } catch (const InvariantViolation& e) {
    err << "repstat: internal invariant violated: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::invalid_argument& e) {
    err << "repstat: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "repstat: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace repstat
