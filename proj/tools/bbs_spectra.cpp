#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bbs/automaton.hpp"
#include "bbs/conjectures.hpp"
#include "bbs/dynamics.hpp"
#include "bbs/errors.hpp"
#include "bbs/gasket.hpp"
#include "bbs/invariants.hpp"
#include "bbs/level_matrix.hpp"
#include "bbs/report_io.hpp"
#include "bbs/spectrum.hpp"
#include "bbs/transition.hpp"

namespace {

enum Exit { kOk = 0, kInvariant = 1, kInfeasible = 2, kNumerical = 3 };

struct Common {
  std::string system = "bbs";
  unsigned k = 1;
  double tol = 1e-8;
  double match = 1e-6;
  std::optional<unsigned> max_n;
  std::string output;
  unsigned jobs = 1;

  bbs::System make_system() const {
    if (system == "bbs") return bbs::System::bbs(k);
    if (system == "lamplighter") return bbs::System::lamplighter();
    throw CLI::ValidationError("--system", "expected bbs or lamplighter");
  }

  bbs::SpectrumSettings settings() const {
    bbs::SpectrumSettings s;
    s.cluster_gap = tol;
    s.match_tolerance = match;
    if (const char* env = std::getenv("BBS_SPECTRA_MAX_N")) s.max_dense_level = std::stoul(env);
    if (max_n) s.max_dense_level = *max_n;
    s.validate();
    return s;
  }
};

// Writes to --output when given, else to stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw std::runtime_error("cannot open " + path);
    }
  }
  std::ostream& out() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void add_system_options(CLI::App* cmd, Common& c) {
  cmd->add_option("--system", c.system, "bbs or lamplighter")
      ->check(CLI::IsMember({"bbs", "lamplighter"}));
  cmd->add_option("--k", c.k, "carrier capacity (bbs)")->check(CLI::Range(1u, 64u));
}

void add_spectral_options(CLI::App* cmd, Common& c) {
  cmd->add_option("--tol", c.tol, "clustering gap")->check(CLI::PositiveNumber);
  cmd->add_option("--match", c.match, "candidate match tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--max-n", c.max_n, "dense-solve level cap (default 12, at most 14)");
}

bbs::SpectrumMethod parse_method(const std::string& m) {
  if (m == "exact") return bbs::SpectrumMethod::Exact;
  if (m == "numeric") return bbs::SpectrumMethod::Numeric;
  return bbs::SpectrumMethod::Auto;
}

// Runs body(i) for i in [0, count) on up to `jobs` threads.
template <typename F>
void parallel_for(std::size_t count, unsigned jobs, F body) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < count;) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

nlohmann::json labeled(const std::vector<bbs::LabeledValue>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : v) out.push_back({{"label", x.label}, {"value", bbs::round_significant(x.value)}});
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of box-ball and lamplighter transition operators"};
  app.require_subcommand(1);
  Common c;

  // simulate
  auto* sim = app.add_subcommand("simulate", "evolve a ball configuration by carrier passes");
  std::string sim_k = "inf", sim_config, sim_format = "text";
  unsigned sim_steps = 10;
  sim->add_option("--k", sim_k, "carrier capacity or 'inf'");
  sim->add_option("--steps", sim_steps, "number of time steps");
  sim->add_option("--config", sim_config, "initial 0/1 string")->required();
  sim->add_option("--format", sim_format)->check(CLI::IsMember({"text", "csv"}));
  sim->add_option("--output", c.output);

  // matrix
  auto* mat = app.add_subcommand("matrix", "export a level matrix or S as triplets");
  unsigned mat_n = 2;
  std::optional<unsigned> mat_state;
  add_system_options(mat, c);
  mat->add_option("--n", mat_n)->required();
  mat->add_option("--state", mat_state, "state index; omit for S = sum (a_i + a_i^T)");
  mat->add_option("--output", c.output);

  // spectrum
  auto* spec = app.add_subcommand("spectrum", "spectrum JSON of M at one level");
  unsigned spec_n = 1;
  std::string spec_method = "auto";
  add_system_options(spec, c);
  add_spectral_options(spec, c);
  spec->add_option("--n", spec_n)->required();
  spec->add_option("--method", spec_method)->check(CLI::IsMember({"auto", "exact", "numeric"}));
  spec->add_option("--output", c.output);

  // tables
  auto* tab = app.add_subcommand("tables", "multiplicity table CSV for n = 1..n-max");
  unsigned tab_nmax = 10;
  tab->add_option("--k", c.k)->check(CLI::Range(1u, 64u));
  tab->add_option("--n-max", tab_nmax)->required();
  add_spectral_options(tab, c);
  tab->add_option("--jobs", c.jobs)->check(CLI::Range(1u, 256u));
  tab->add_option("--output", c.output);

  // conjugacy
  auto* conj = app.add_subcommand("conjugacy", "verify the gasket conjugacy at one level");
  unsigned conj_n = 10;
  std::string emit_sigma, emit_gasket;
  conj->add_option("--n", conj_n)->required();
  conj->add_option("--emit-sigma", emit_sigma, "write index,image CSV");
  conj->add_option("--emit-gasket", emit_gasket, "write gasket rows 1..n");

  // check
  auto* chk = app.add_subcommand("check", "run the invariant suite");
  bbs::InvariantOptions inv;
  std::string only;
  chk->add_option("--only", only)->check(CLI::IsMember(bbs::invariant_names()));
  chk->add_option("--n", inv.n, "largest level exercised");
  chk->add_flag("--corrupt", inv.corrupt, "negative control: bump one entry of S");
  add_spectral_options(chk, c);

  // histogram
  auto* hist = app.add_subcommand("histogram", "eigenvalue histogram CSV over [-1, 1]");
  unsigned hist_n = 1, bins = 200;
  add_system_options(hist, c);
  add_spectral_options(hist, c);
  hist->add_option("--n", hist_n)->required();
  hist->add_option("--bins", bins)->check(CLI::Range(1u, 1000000u));
  hist->add_option("--output", c.output);

  // report
  auto* rep = app.add_subcommand("report", "non-asserting analyses");
  rep->require_subcommand(1);
  auto* rates = rep->add_subcommand("rates", "multiple-eigenvalue rates per level");
  unsigned rates_nmax = 10;
  rates->add_option("--k", c.k)->check(CLI::Range(1u, 64u));
  rates->add_option("--n-max", rates_nmax);
  add_spectral_options(rates, c);
  auto* c1 = rep->add_subcommand("conjecture1", "multiple eigenvalues vs the k=1 spectrum");
  unsigned c1_j = 2, c1_from = 6, c1_to = 10;
  c1->add_option("--j", c1_j);
  c1->add_option("--n-from", c1_from);
  c1->add_option("--n-to", c1_to);
  add_spectral_options(c1, c);
  auto* c2 = rep->add_subcommand("conjecture2", "monotone multiplicity scan");
  unsigned c2_j = 2, c2_nmax = 10;
  c2->add_option("--j", c2_j);
  c2->add_option("--n-max", c2_nmax);
  add_spectral_options(c2, c);
  auto* cdf = rep->add_subcommand("cdf", "counting function in both normalizations");
  unsigned cdf_n = 6, cdf_points = 21;
  add_system_options(cdf, c);
  add_spectral_options(cdf, c);
  cdf->add_option("--n", cdf_n);
  cdf->add_option("--points", cdf_points)->check(CLI::Range(2u, 100000u));
  auto* sym = rep->add_subcommand("symmetry", "lambda / -lambda multiplicity discrepancies");
  unsigned sym_n = 8;
  add_system_options(sym, c);
  add_spectral_options(sym, c);
  sym->add_option("--n", sym_n);
  for (auto* r : {rates, c1, c2, cdf, sym}) r->add_option("--output", c.output);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      const bbs::Capacity cap = bbs::Capacity::parse(sim_k);
      const bbs::Trajectory t =
          bbs::run_trajectory(bbs::BallConfiguration::parse(sim_config), cap, sim_steps);
      Sink sink(c.output);
      if (sim_format == "text") {
        for (const auto& step : t.steps) sink.out() << step.str() << '\n';
      } else {
        sink.out() << "t,position,bit\n";
        for (std::size_t s = 0; s < t.steps.size(); ++s) {
          for (std::size_t i = 0; i < t.steps[s].bits.size(); ++i) {
            sink.out() << s << ',' << i << ',' << int(t.steps[s].bits[i]) << '\n';
          }
        }
      }
      return kOk;
    }

    if (mat->parsed()) {
      const bbs::System sys = c.make_system();
      const std::vector<bbs::LevelMatrix> levels = bbs::build_level(sys, mat_n);
      Sink sink(c.output);
      if (mat_state) {
        if (*mat_state >= levels.size()) throw CLI::ValidationError("--state", "no such state");
        bbs::write_triplets(sink.out(), levels[*mat_state].to_sparse(), mat_n);
      } else {
        bbs::write_triplets(sink.out(), bbs::transition_from_levels(levels).integer_part(), mat_n);
      }
      return kOk;
    }

    if (spec->parsed()) {
      const bbs::SpectrumSettings s = c.settings();
      const bbs::SpectrumReport r = bbs::compute_spectrum(c.make_system(), spec_n, s,
                                                          parse_method(spec_method));
      Sink sink(c.output);
      sink.out() << bbs::spectrum_to_json(r, s).dump(2) << '\n';
      return kOk;
    }

    if (tab->parsed()) {
      const bbs::SpectrumSettings s = c.settings();
      const bbs::System sys = bbs::System::bbs(c.k);
      std::vector<std::vector<bbs::TableRow>> per_level(tab_nmax);
      parallel_for(tab_nmax, c.jobs, [&](std::size_t i) {
        per_level[i] = bbs::table_rows(bbs::compute_spectrum(sys, static_cast<unsigned>(i + 1), s));
      });
      std::vector<bbs::TableRow> rows;
      for (auto& r : per_level) rows.insert(rows.end(), r.begin(), r.end());
      Sink sink(c.output);
      bbs::write_table_csv(sink.out(), rows, s);
      return kOk;
    }

    if (conj->parsed()) {
      const bbs::ConjugacyResult r = bbs::verify_conjugacy(conj_n);
      if (!emit_sigma.empty()) {
        Sink sink(emit_sigma);
        bbs::write_sigma_csv(sink.out(), bbs::sigma(std::max(conj_n, 1u)));
      }
      if (!emit_gasket.empty()) {
        Sink sink(emit_gasket);
        bbs::write_gasket_rows(sink.out(), std::max(conj_n, 1u));
      }
      nlohmann::json j{{"n", conj_n},
                       {"level_identity", r.level_identity},
                       {"operator_identity", r.operator_identity},
                       {"passed", r.passed()}};
      std::cout << j.dump() << '\n';
      return r.passed() ? kOk : kInvariant;
    }

    if (chk->parsed()) {
      inv.settings = c.settings();
      if (!only.empty()) inv.only = only;
      const auto results = bbs::run_invariants(inv);
      nlohmann::json j = nlohmann::json::array();
      bool all = true;
      for (const auto& r : results) {
        j.push_back({{"invariant", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        all = all && r.passed;
        if (!r.passed) std::cerr << "invariant failed: " << r.name << " (" << r.detail << ")\n";
      }
      std::cout << nlohmann::json{{"passed", all}, {"checks", j}}.dump() << '\n';
      return all ? kOk : kInvariant;
    }

    if (hist->parsed()) {
      const bbs::SpectrumSettings s = c.settings();
      const bbs::SpectrumReport r = bbs::compute_spectrum(c.make_system(), hist_n, s);
      Sink sink(c.output);
      bbs::write_histogram_csv(sink.out(), bbs::histogram(r, bins), s);
      return kOk;
    }

    if (rep->parsed()) {
      const bbs::SpectrumSettings s = c.settings();
      nlohmann::json j;
      j["note"] = "report only; nothing here is asserted";
      if (rates->parsed()) {
        j["k"] = c.k;
        for (unsigned n = 1; n <= rates_nmax; ++n) {
          const auto r = bbs::multiple_eigenvalue_rate(bbs::compute_spectrum(bbs::System::bbs(c.k), n, s));
          j["rates"].push_back({{"n", n},
                                {"multiple_rate", bbs::round_significant(r.multiple_rate)},
                                {"class_rate", bbs::round_significant(r.class_rate)}});
        }
      } else if (c1->parsed()) {
        bbs::SpectrumCache cache(s);
        for (unsigned n = c1_from; n <= c1_to; ++n) {
          const auto r = bbs::conjecture1_check(c1_j, n, cache);
          j["checks"].push_back({{"j", r.j}, {"n", r.n}, {"k1_level", r.k1_level},
                                 {"equal", r.equal()}, {"observed", labeled(r.observed)},
                                 {"expected", labeled(r.expected)}, {"missing", labeled(r.missing)},
                                 {"extra", labeled(r.extra)}});
        }
      } else if (c2->parsed()) {
        bbs::SpectrumCache cache(s);
        const auto r = bbs::conjecture2_scan(c2_j, c2_nmax, cache);
        j["j"] = r.j;
        j["n_max"] = r.nmax;
        for (const auto& line : r.lines) {
          j["lines"].push_back({{"label", line.label},
                                {"value", bbs::round_significant(line.value)},
                                {"multiplicities", line.multiplicities},
                                {"first_appearance", line.first_appearance},
                                {"n_lambda", line.n_lambda},
                                {"monotone_from_first", line.monotone_from_first},
                                {"passes", line.passes}});
        }
        j["passing"] = labeled(r.passing);
        j["failing"] = labeled(r.failing);
        j["passing_not_in_k1"] = labeled(r.passing_not_in_k1);
      } else if (cdf->parsed()) {
        const auto r = bbs::compute_spectrum(c.make_system(), cdf_n, s);
        for (unsigned i = 0; i < cdf_points; ++i) {
          const double x = static_cast<double>(i) / (cdf_points - 1);
          j["points"].push_back({{"x", bbs::round_significant(x)},
                                 {"normalized", bbs::round_significant(bbs::empirical_cdf(r, x))},
                                 {"literal", bbs::round_significant(bbs::empirical_cdf_literal(r, x))}});
        }
      } else if (sym->parsed()) {
        const auto r = bbs::compute_spectrum(c.make_system(), sym_n, s);
        j["discrepancies"] = nlohmann::json::array();
        for (const auto& d : bbs::symmetry_discrepancies(r, s.match_tolerance)) {
          j["discrepancies"].push_back({{"label", d.label},
                                        {"value", bbs::round_significant(d.value)},
                                        {"positive", d.positive},
                                        {"negative", d.negative}});
        }
      }
      Sink sink(c.output);
      sink.out() << j.dump(2) << '\n';
      return kOk;
    }
  } catch (const bbs::InfeasibleSize& e) {
    std::cerr << "infeasible size: " << e.what() << '\n';
    return kInfeasible;
  } catch (const bbs::EigensolverFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvariant;
  }
  return kOk;
}
