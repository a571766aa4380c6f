// Command-line surface for the braid engine.
//
// Exit codes: 0 success (conj: conjugate), 1 not conjugate, 2 usage or parse
// error, 3 unresolved / budget exhausted.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "braid/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnresolved = 3;

// Inline words are accepted wherever a file path is; the "n=" prefix tells
// them apart.
std::string load_word_text(const std::string& arg) {
  if (arg.rfind("n=", 0) == 0) return arg;
  std::ifstream in(arg);
  if (!in) throw std::runtime_error("cannot open input file: " + arg);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

braid::CanonicalBraid load_braid(const std::string& arg) {
  const std::string text = load_word_text(arg);
  if (!text.empty() && text[0] == '{') {
    return braid::canonical_from_json(braid::Json::parse(text));
  }
  return braid::CanonicalBraid::from_word(braid::parse_word(text));
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content << std::endl;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
}

std::uint64_t ensure_seed(std::optional<std::uint64_t> seed) {
  if (seed) return *seed;
  return std::random_device{}();  // recorded in every output
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoi(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Garside braid engine: canonical forms, summit sets, conjugacy"};
  app.require_subcommand(1);
  int jobs = 1;
  if (const char* env = std::getenv("BRAID_JOBS")) jobs = std::max(1, std::atoi(env));
  app.add_option("--jobs", jobs, "worker count for parallelizable subcommands");

  // nf
  auto* nf = app.add_subcommand("nf", "left-weighted canonical form of a word");
  std::string nf_input, nf_output;
  bool nf_expand = false;
  nf->add_option("word", nf_input, "word file or inline 'n=..; ..'")->required();
  nf->add_option("-o,--output", nf_output, "output path (default stdout)");
  nf->add_flag("--expand", nf_expand, "re-render the canonical form as a word");

  // conj
  auto* conj = app.add_subcommand("conj", "decide conjugacy of two braids");
  std::string conj_x, conj_y, conj_mode = "auto", conj_output;
  std::size_t conj_budget = 200000;
  conj->add_option("x", conj_x)->required();
  conj->add_option("y", conj_y)->required();
  conj->add_option("--mode", conj_mode, "fast|exact|auto")
      ->check(CLI::IsMember({"fast", "exact", "auto"}));
  conj->add_option("--budget", conj_budget, "element budget for the exact route");
  conj->add_option("-o,--output", conj_output);

  // uss / rsss
  std::string set_x, set_policy = "restricted", set_output;
  std::size_t set_budget = 200000;
  auto add_set_cmd = [&](const char* name, const char* help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("x", set_x)->required();
    c->add_option("--policy", set_policy, "full|restricted")
        ->check(CLI::IsMember({"full", "restricted"}));
    c->add_option("--budget", set_budget, "element budget");
    c->add_option("-o,--output", set_output);
    return c;
  };
  auto* uss = add_set_cmd("uss", "generate the ultra summit set");
  auto* rsss = add_set_cmd("rsss", "generate the reduced super summit set");

  // pacycle
  auto* pacycle = app.add_subcommand("pacycle", "power-and-cycle search for a cyclically weighted conjugate");
  std::string pa_x, pa_output;
  long long pa_max_power = 0, pa_max_cyclings = 0;
  pacycle->add_option("x", pa_x)->required();
  pacycle->add_option("--max-power", pa_max_power, "power budget (default 2 D^2)");
  pacycle->add_option("--max-cyclings", pa_max_cyclings, "cycling budget per power (default n! len capped)");
  pacycle->add_option("-o,--output", pa_output);

  // dtable
  auto* dtable = app.add_subcommand("dtable", "descent-contribution bound table");
  std::string dt_nlist, dt_klist, dt_output, dt_format = "csv";
  dtable->add_option("--n-list", dt_nlist, "comma-separated braid indices");
  dtable->add_option("--k-list", dt_klist, "comma-separated factor counts");
  dtable->add_option("--format", dt_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  dtable->add_option("-o,--output", dt_output);

  // mc
  auto* mc = app.add_subcommand("mc", "Monte-Carlo experiment");
  std::string mc_name, mc_output, mc_format = "json";
  int mc_n = 6, mc_k = 5;
  long long mc_samples = 10000;
  std::optional<std::uint64_t> mc_seed;
  mc->add_option("--experiment", mc_name, "registry name")->required();
  mc->add_option("--n", mc_n)->required();
  mc->add_option("--k", mc_k)->required();
  mc->add_option("--samples", mc_samples);
  mc->add_option("--seed", mc_seed, "PRNG seed (generated and recorded if omitted)");
  mc->add_option("--format", mc_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  mc->add_option("-o,--output", mc_output);

  // probe
  auto* probe = app.add_subcommand("probe", "fast-path runtime scaling probe");
  int pr_n = 50, pr_k = 50, pr_trials = 5, pr_doublings = 1;
  std::optional<std::uint64_t> pr_seed;
  std::string pr_output;
  probe->add_option("--n", pr_n);
  probe->add_option("--k", pr_k);
  probe->add_option("--trials", pr_trials);
  probe->add_option("--doublings", pr_doublings);
  probe->add_option("--seed", pr_seed);
  probe->add_option("-o,--output", pr_output);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*nf) {
      const braid::CanonicalBraid x = load_braid(nf_input);
      if (nf_expand) {
        write_output(nf_output, braid::render_word(x.to_word()));
      } else {
        braid::Json j = braid::to_json(x);
        j["schema_version"] = braid::kSchemaVersion;
        write_output(nf_output, j.dump(2));
      }
      return kExitOk;
    }

    if (*conj) {
      const braid::CanonicalBraid x = load_braid(conj_x);
      const braid::CanonicalBraid y = load_braid(conj_y);
      const braid::DecisionMode mode = conj_mode == "fast"    ? braid::DecisionMode::Fast
                                       : conj_mode == "exact" ? braid::DecisionMode::Exact
                                                              : braid::DecisionMode::Auto;
      const braid::ConjugacyCertificate cert = braid::decide_conjugacy(x, y, mode, conj_budget);
      write_output(conj_output, braid::to_json(cert).dump(2));
      switch (cert.verdict) {
        case braid::Verdict::Conjugate: return kExitOk;
        case braid::Verdict::NotConjugate:
        case braid::Verdict::NotConjugateFast: return kExitNo;
        case braid::Verdict::Unresolved: return kExitUnresolved;
      }
    }

    if (*uss || *rsss) {
      const braid::CanonicalBraid x = load_braid(set_x);
      const braid::InvariantSetKind kind =
          *uss ? braid::InvariantSetKind::USS : braid::InvariantSetKind::RSSS;
      const braid::CandidatePolicy policy = set_policy == "full"
                                                ? braid::CandidatePolicy::Full
                                                : braid::CandidatePolicy::Restricted;
      const braid::InvariantSetResult r =
          braid::generate_invariant_set(x, kind, policy, set_budget);
      write_output(set_output, braid::to_json(r).dump(2));
      return r.budget_exhausted ? kExitUnresolved : kExitOk;
    }

    if (*pacycle) {
      const braid::CanonicalBraid x = load_braid(pa_x);
      braid::PowerCycleBudgets budgets;
      budgets.max_power = pa_max_power;
      budgets.max_cyclings = pa_max_cyclings;
      const auto r = braid::power_and_cycle(x, budgets);
      braid::Json j;
      j["schema_version"] = braid::kSchemaVersion;
      if (r) {
        j["found"] = true;
        j["M"] = r->power;
        j["N"] = r->cyclings;
        j["y"] = braid::to_json(r->value);
        j["witness"] = braid::render_word(r->witness.to_word());
      } else {
        j["found"] = false;
        j["budgets"] = {{"max_power", budgets.max_power}, {"max_cyclings", budgets.max_cyclings},
                        {"cycling_cap", budgets.cycling_cap}};
      }
      write_output(pa_output, j.dump(2));
      return r ? kExitOk : kExitUnresolved;
    }

    if (*dtable) {
      const std::vector<int> ns =
          dt_nlist.empty() ? braid::default_table_n() : parse_int_list(dt_nlist);
      const std::vector<int> ks =
          dt_klist.empty() ? braid::default_table_k() : parse_int_list(dt_klist);
      const braid::DescentTable t = braid::d_bound_table(ns, ks);
      write_output(dt_output, dt_format == "json" ? braid::to_json(t).dump(2) : braid::to_csv(t));
      return kExitOk;
    }

    if (*mc) {
      const std::uint64_t seed = ensure_seed(mc_seed);
      const braid::McResult r = braid::mc_experiment(mc_name, mc_n, mc_k, mc_samples, seed, jobs);
      if (mc_format == "csv") {
        write_output(mc_output, braid::mc_csv_header() + "\n" + braid::to_csv_row(r) + "\n");
      } else {
        write_output(mc_output, braid::to_json(r).dump(2));
      }
      return kExitOk;
    }

    if (*probe) {
      const std::uint64_t seed = ensure_seed(pr_seed);
      const braid::RuntimeProbeReport r =
          braid::runtime_probe(pr_n, pr_k, pr_trials, seed, pr_doublings);
      write_output(pr_output, braid::to_json(r).dump(2));
      return kExitOk;
    }
  } catch (const braid::ParseError& e) {
    std::cerr << "parse error: " << e.what() << std::endl;
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitUsage;
  }
  return kExitUsage;
}
