#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "epibf/analytic_bf.hpp"
#include "epibf/datasets.hpp"
#include "epibf/dic.hpp"
#include "epibf/evidence.hpp"
#include "epibf/likelihood.hpp"
#include "epibf/simulator.hpp"
#include "epibf/studies.hpp"

using nlohmann::json;
using namespace epibf;

namespace {

constexpr const char* kSchemaVersion = "1";

std::string default_out_dir() {
  const char* env = std::getenv("EPIBF_OUT_DIR");
  return env ? env : ".";
}

json prior_to_json(const GammaPrior& p) {
  return json{{"shape", p.shape}, {"rate", p.rate}};
}

json priors_to_json(const PriorSpec& p) {
  return json{{"beta", prior_to_json(p.beta)},
              {"gamma", prior_to_json(p.gamma)},
              {"delta", prior_to_json(p.delta)},
              {"b_rate", p.b_rate},
              {"iz_rate", p.iz_rate}};
}

PriorSpec load_priors(const std::string& path_or_empty, double prior_rate) {
  if (path_or_empty.empty()) return PriorSpec::exponential(prior_rate);
  std::ifstream in(path_or_empty);
  if (!in) throw std::runtime_error("cannot open priors file " + path_or_empty);
  json j;
  in >> j;
  PriorSpec p;
  auto read = [&](const char* key, GammaPrior& dst) {
    if (!j.contains(key)) return;
    dst.shape = j[key].value("shape", dst.shape);
    dst.rate = j[key].value("rate", dst.rate);
  };
  read("beta", p.beta);
  read("gamma", p.gamma);
  read("delta", p.delta);
  p.b_rate = j.value("b_rate", p.b_rate);
  p.iz_rate = j.value("iz_rate", p.iz_rate);
  p.check();
  return p;
}

json estimate_to_json(const EvidenceEstimate& est) {
  json temps = json::array();
  for (const auto& s : est.stats)
    temps.push_back({{"t", s.t},
                     {"mean", s.mean},
                     {"var", s.var},
                     {"se_mean", s.se_mean},
                     {"se_var", s.se_var}});
  return json{{"log_marginal", est.log_marginal},
              {"mc_se", est.mc_se},
              {"ladder", {{"r", est.ladder.r}, {"c", est.ladder.c}}},
              {"monotone_warning", est.monotone_warning},
              {"temperatures", temps}};
}

void write_result(const std::string& out_path, const json& result) {
  if (out_path.empty() || out_path == "-") {
    std::cout << result.dump(2) << std::endl;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << result.dump(2) << std::endl;
  std::cout << "wrote " << out_path << std::endl;
}

struct DataInput {
  EvidenceData data;
  std::string source;
};

DataInput load_removal_data(const std::string& file, bool use_abakaliki) {
  DataInput input;
  if (use_abakaliki) {
    const RemovalDataset d = abakaliki();
    input.data = EvidenceData::removals(d.removal_times, d.population_size);
    input.source = d.label;
    return input;
  }
  const LoadedData loaded = load_csv(file);
  if (std::holds_alternative<Outbreak>(loaded)) {
    input.data = EvidenceData::complete_outbreak(std::get<Outbreak>(loaded));
  } else {
    const auto& d = std::get<RemovalDataset>(loaded);
    input.data = EvidenceData::removals(d.removal_times, d.population_size);
  }
  input.source = file;
  return input;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian model choice for partially observed SIR epidemics"};
  app.require_subcommand(1);

  // ---- simulate ----
  auto* sim_cmd = app.add_subcommand("simulate", "simulate one outbreak");
  std::string sim_model = "standard", sim_out;
  double sim_beta = 1, sim_gamma = 1, sim_alpha = 0, sim_delta = 0,
         sim_p = -1, sim_b = 0;
  int sim_pop = 0;
  std::uint64_t sim_seed = 1;
  bool sim_condition = false;
  sim_cmd->add_option("--model", sim_model, "standard|gamma:<a>|power:<p>|expdecay");
  sim_cmd->add_option("--beta", sim_beta)->required();
  sim_cmd->add_option("--gamma", sim_gamma, "removal rate (Exp periods)");
  sim_cmd->add_option("--alpha", sim_alpha, "gamma period shape");
  sim_cmd->add_option("--delta", sim_delta, "gamma period rate");
  sim_cmd->add_option("--p", sim_p, "Y^p exponent");
  sim_cmd->add_option("--b", sim_b, "infection-rate decay");
  sim_cmd->add_option("--pop", sim_pop, "population size N")->required();
  sim_cmd->add_option("--seed", sim_seed);
  sim_cmd->add_flag("--condition", sim_condition,
                    "resample until a secondary infection occurred");
  sim_cmd->add_option("--out", sim_out, "output CSV");

  // ---- loglik ----
  auto* ll_cmd = app.add_subcommand("loglik",
                                    "augmented log-likelihood of complete data");
  std::string ll_data, ll_model = "standard";
  double ll_beta = 1, ll_rate = 1, ll_p = 1, ll_b = 0;
  ll_cmd->add_option("--data", ll_data)->required();
  ll_cmd->add_option("--model", ll_model);
  ll_cmd->add_option("--beta", ll_beta)->required();
  ll_cmd->add_option("--rate", ll_rate, "gamma or delta")->required();
  ll_cmd->add_option("--p", ll_p);
  ll_cmd->add_option("--b", ll_b);

  // ---- bf-complete ----
  auto* bfc_cmd =
      app.add_subcommand("bf-complete", "analytic Bayes factor, complete data");
  std::string bfc_data, bfc_comparison = "exp-gamma", bfc_priors, bfc_out;
  double bfc_alpha = 0, bfc_p = -1, bfc_prior_rate = 1;
  bool bfc_diffuse = false;
  bfc_cmd->add_option("--data", bfc_data)->required();
  bfc_cmd->add_option("--comparison", bfc_comparison, "exp-gamma|standard-power");
  bfc_cmd->add_option("--alpha", bfc_alpha, "gamma shape under m2");
  bfc_cmd->add_option("--p", bfc_p, "Y^p exponent under m2");
  bfc_cmd->add_option("--priors", bfc_priors, "priors JSON file");
  bfc_cmd->add_option("--prior-rate", bfc_prior_rate,
                      "rate of identical Exp priors");
  bfc_cmd->add_flag("--diffuse", bfc_diffuse, "diffuse-prior limit");
  bfc_cmd->add_option("--out", bfc_out);

  // ---- evidence ----
  auto* ev_cmd =
      app.add_subcommand("evidence", "power-posterior marginal likelihood");
  std::string ev_data, ev_model = "standard", ev_priors, ev_out, ev_curve,
              ev_mode = "independent";
  double ev_c = 5.0, ev_prior_rate = 1;
  int ev_r = 20, ev_iters = 27000, ev_burnin = 2000, ev_thin = 5, ev_pop = 0,
      ev_workers = 0;
  std::uint64_t ev_seed = 1;
  bool ev_abakaliki = false;
  ev_cmd->add_option("--data", ev_data, "removals CSV");
  ev_cmd->add_flag("--abakaliki", ev_abakaliki, "use the embedded dataset");
  ev_cmd->add_option("--pop", ev_pop, "population override");
  ev_cmd->add_option("--model", ev_model);
  ev_cmd->add_option("--priors", ev_priors, "priors JSON file");
  ev_cmd->add_option("--prior-rate", ev_prior_rate);
  ev_cmd->add_option("--r", ev_r);
  ev_cmd->add_option("--c", ev_c);
  ev_cmd->add_option("--iters", ev_iters);
  ev_cmd->add_option("--burnin", ev_burnin);
  ev_cmd->add_option("--thin", ev_thin);
  ev_cmd->add_option("--mode", ev_mode, "independent|sequential");
  ev_cmd->add_option("--workers", ev_workers);
  ev_cmd->add_option("--seed", ev_seed);
  ev_cmd->add_option("--out", ev_out, "result JSON");
  ev_cmd->add_option("--curve", ev_curve, "per-temperature CSV");

  // ---- dic ----
  auto* dic_cmd = app.add_subcommand("dic", "missing-data DIC6");
  std::string dic_data, dic_model = "standard", dic_priors, dic_out;
  double dic_prior_rate = 1;
  int dic_iters = 27000, dic_burnin = 2000, dic_thin = 5;
  std::uint64_t dic_seed = 1;
  bool dic_abakaliki = false;
  dic_cmd->add_option("--data", dic_data);
  dic_cmd->add_flag("--abakaliki", dic_abakaliki);
  dic_cmd->add_option("--model", dic_model);
  dic_cmd->add_option("--priors", dic_priors);
  dic_cmd->add_option("--prior-rate", dic_prior_rate);
  dic_cmd->add_option("--iters", dic_iters);
  dic_cmd->add_option("--burnin", dic_burnin);
  dic_cmd->add_option("--thin", dic_thin);
  dic_cmd->add_option("--seed", dic_seed);
  dic_cmd->add_option("--out", dic_out);

  // ---- reproduce ----
  auto* rep_cmd = app.add_subcommand("reproduce", "reproduce a published table");
  int rep_table = 0, rep_scale = 0, rep_workers = 0;
  std::uint64_t rep_seed = 1;
  std::string rep_out = default_out_dir();
  rep_cmd->add_option("--table", rep_table, "table number 1..7")->required();
  rep_cmd->add_option("--scale", rep_scale,
                      "replicates (tables 1-2) or iterations (tables 3-7)");
  rep_cmd->add_option("--seed", rep_seed);
  rep_cmd->add_option("--workers", rep_workers);
  rep_cmd->add_option("--out", rep_out, "output directory");

  // ---- dataset ----
  auto* ds_cmd = app.add_subcommand("dataset", "embedded datasets");
  std::string ds_name = "abakaliki", ds_out;
  ds_cmd->add_option("--name", ds_name);
  ds_cmd->add_option("--out", ds_out, "write as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*sim_cmd) {
      SimConfig cfg;
      cfg.model = parse_model(sim_model);
      cfg.params.beta = sim_beta;
      if (cfg.model.period == PeriodLaw::GammaKnownShape) {
        if (sim_alpha > 0) cfg.model.alpha = sim_alpha;
        cfg.params.removal_rate = sim_delta > 0 ? sim_delta : sim_gamma;
      } else {
        cfg.params.removal_rate = sim_gamma;
      }
      if (cfg.model.has_p()) cfg.params.p = sim_p >= 0 ? sim_p : cfg.model.p;
      if (cfg.model.has_b()) cfg.params.b = sim_b;
      cfg.population_size = sim_pop;
      cfg.seed = sim_seed;
      cfg.condition_on_secondary = sim_condition;
      const Outbreak ob = simulate(cfg);
      if (sim_out.empty()) {
        std::cout << "n_R = " << ob.n_r() << ", last removal = "
                  << ob.last_removal() << std::endl;
      } else {
        save_csv(sim_out, ob);
        std::cout << "wrote " << sim_out << " (n_R = " << ob.n_r() << ")"
                  << std::endl;
      }
    } else if (*ll_cmd) {
      const LoadedData loaded = load_csv(ll_data);
      if (!std::holds_alternative<Outbreak>(loaded))
        throw std::invalid_argument("loglik needs complete data");
      const auto& ob = std::get<Outbreak>(loaded);
      Params params{ll_beta, ll_rate, ll_p, ll_b};
      const double ll =
          log_augmented_likelihood(ob, parse_model(ll_model), params);
      std::cout << ll << std::endl;
    } else if (*bfc_cmd) {
      const LoadedData loaded = load_csv(bfc_data);
      if (!std::holds_alternative<Outbreak>(loaded))
        throw std::invalid_argument("bf-complete needs complete data");
      const auto& ob = std::get<Outbreak>(loaded);
      const PriorSpec priors = load_priors(bfc_priors, bfc_prior_rate);
      json result{{"version", kSchemaVersion},
                  {"comparison", bfc_comparison},
                  {"data", bfc_data},
                  {"n_r", ob.n_r()},
                  {"diffuse", bfc_diffuse}};
      if (bfc_comparison == "exp-gamma") {
        if (bfc_alpha < 1)
          throw std::invalid_argument("exp-gamma comparison needs --alpha >= 1");
        result["alpha"] = bfc_alpha;
        result["log_bf"] =
            bfc_diffuse
                ? log_bf_exp_vs_gamma_diffuse(ob, bfc_alpha)
                : log_bf_exp_vs_gamma(ob, bfc_alpha, priors.gamma, priors.delta);
        if (!bfc_diffuse) result["priors"] = priors_to_json(priors);
      } else if (bfc_comparison == "standard-power") {
        if (bfc_p < 0)
          throw std::invalid_argument("standard-power comparison needs --p");
        result["p"] = bfc_p;
        result["log_bf"] =
            bfc_diffuse ? log_bf_standard_vs_power_diffuse(ob, bfc_p)
                        : log_bf_standard_vs_power(ob, bfc_p, priors.beta);
        if (!bfc_diffuse) result["priors"] = priors_to_json(priors);
      } else {
        throw std::invalid_argument("unknown comparison " + bfc_comparison);
      }
      write_result(bfc_out, result);
    } else if (*ev_cmd) {
      if (!ev_abakaliki && ev_data.empty())
        throw std::invalid_argument("evidence needs --data or --abakaliki");
      DataInput input = load_removal_data(ev_data, ev_abakaliki);
      if (ev_pop > 0) input.data.population_size = ev_pop;
      const PriorSpec priors = load_priors(ev_priors, ev_prior_rate);
      const auto ladder = TemperatureLadder::build(ev_r, ev_c);
      McmcConfig cfg;
      cfg.iterations = ev_iters;
      cfg.burn_in = ev_burnin;
      cfg.thin = ev_thin;
      cfg.seed = ev_seed;
      const EvidenceMode mode = ev_mode == "sequential"
                                    ? EvidenceMode::SequentialWarmStart
                                    : EvidenceMode::Independent;
      const auto est =
          estimate_log_marginal(input.data, parse_model(ev_model), priors,
                                ladder, cfg, mode, ev_workers);
      json result{{"version", kSchemaVersion},
                  {"command", "evidence"},
                  {"data", input.source},
                  {"model", ev_model},
                  {"priors", priors_to_json(priors)},
                  {"seed", ev_seed},
                  {"mode", ev_mode},
                  {"config",
                   {{"iterations", ev_iters},
                    {"burn_in", ev_burnin},
                    {"thin", ev_thin}}},
                  {"estimate", estimate_to_json(est)}};
      write_result(ev_out, result);
      if (!ev_curve.empty()) emit_curve(est, ev_curve);
    } else if (*dic_cmd) {
      if (!dic_abakaliki && dic_data.empty())
        throw std::invalid_argument("dic needs --data or --abakaliki");
      const DataInput input = load_removal_data(dic_data, dic_abakaliki);
      const PriorSpec priors = load_priors(dic_priors, dic_prior_rate);
      McmcConfig cfg;
      cfg.iterations = dic_iters;
      cfg.burn_in = dic_burnin;
      cfg.thin = dic_thin;
      cfg.seed = dic_seed;
      const DicResult res = dic6(input.data, parse_model(dic_model), priors, cfg);
      json result{{"version", kSchemaVersion},
                  {"command", "dic"},
                  {"data", input.source},
                  {"model", dic_model},
                  {"priors", priors_to_json(priors)},
                  {"seed", dic_seed},
                  {"dic6", res.dic6},
                  {"first_run_mean", res.first_run_mean},
                  {"plugin_mean", res.plugin_mean},
                  {"theta_hat",
                   {{"beta", res.theta_hat.beta},
                    {"removal_rate", res.theta_hat.removal_rate},
                    {"p", res.theta_hat.p},
                    {"b", res.theta_hat.b}}},
                  {"z_hat", res.z_hat},
                  {"iz_hat", res.iz_hat}};
      write_result(dic_out, result);
    } else if (*rep_cmd) {
      StudyOptions opt;
      opt.scale = rep_scale;
      opt.seed = rep_seed;
      opt.out_dir = rep_out;
      opt.workers = rep_workers;
      std::filesystem::create_directories(opt.out_dir);
      const std::string path = reproduce_table(rep_table, opt);
      std::cout << "wrote " << path << std::endl;
    } else if (*ds_cmd) {
      if (ds_name != "abakaliki")
        throw std::invalid_argument("unknown dataset " + ds_name);
      const RemovalDataset d = abakaliki();
      if (ds_out.empty()) {
        for (double t : d.removal_times) std::cout << t << '\n';
        std::cout << "# population " << d.population_size << std::endl;
      } else {
        save_csv(ds_out, d);
        std::cout << "wrote " << ds_out << std::endl;
      }
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 0;
}
