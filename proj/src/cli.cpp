#include "lts/cli.hpp"

#include "lts/error.hpp"
#include "lts/io.hpp"
#include "lts/parallel.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

namespace lts {

namespace {

Json read_source(const std::string& source, bool is_name) {
  if (is_name && !std::filesystem::exists(source)) return Json(source);
  std::ifstream in(source);
  if (!in) throw CliError(ExitCode::MissingFile, "cannot open '" + source + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw CliError(ExitCode::MalformedJson, source + ": " + e.what());
  }
}

bool group_name(const std::string& s) { return catalog_component(s).has_value(); }
bool models_name(const std::string& s) { return catalog_model(s, 0).has_value(); }

void require_source(const std::string& source, bool is_name) {
  if (is_name) return;
  if (!std::filesystem::is_regular_file(source))
    throw CliError(ExitCode::MissingFile, "no such file '" + source + "'");
}

TwistedComponent load_component(const RunConfig& c) {
  TwistedComponent tc = component_from_json(read_source(c.group, group_name(c.group)));
  if (!c.theta) return tc;
  Json t = read_source(*c.theta, false);
  if (t.is_object()) {
    if (t.size() != 1 || !t.contains("theta")) throw Error(ErrorKind::MalformedInput, "theta file: expected {\"theta\": matrix}");
    t = Json(t["theta"]);
  }
  if (!tc.untwisted()) throw Error(ErrorKind::MalformedInput, "theta given both in the group file and by --theta");
  return component(tc.base, matrix_from_json(t));
}

// Generators of the finite part of the centre: V e_i / d_i from U A V = D.
std::vector<RatVec> center_generators(const RootDatum& d) {
  std::vector<RatVec> gens;
  if (d.semisimple_rank() == 0) return gens;
  const auto snf = smith_normal_form(IntMatrix::from_rows(d.simple_roots(), d.rank()));
  for (std::size_t i = 0; i < d.semisimple_rank(); ++i) {
    const std::int64_t di = snf.D(i, i);
    if (di <= 1) continue;
    RatVec g(d.rank());
    for (std::size_t k = 0; k < d.rank(); ++k) g[k] = Rational(snf.V(k, i), di);
    gens.push_back(reduce_mod_one(g));
  }
  return gens;
}

Json identity(const std::string& name, const std::string& lhs, const std::string& rhs, bool pass) {
  Json j;
  j["name"] = name;
  j["lhs"] = lhs;
  j["rhs"] = rhs;
  j["pass"] = pass;
  return j;
}

Json identity(const std::string& name, const GaussianRational& lhs, const GaussianRational& rhs) {
  return identity(name, to_string(lhs), to_string(rhs), lhs == rhs);
}

Json identity(const std::string& name, const Rational& lhs, const Rational& rhs) {
  return identity(name, to_string(lhs), to_string(rhs), lhs == rhs);
}

bool all_pass(const Json& identities) {
  for (const auto& i : identities)
    if (!i["pass"].get<bool>()) return false;
  return true;
}

std::string model_tag(const ParameterModel& m, Bits x) {
  return "m" + std::to_string(m.id()) + " x=" + bits_to_string(x, m.s_m().dimension + m.r().dimension);
}

// e = i and coset constancy for every x of every model with a dual group.
void phi_identities(const DiscreteModelSet& ms, SigmaTable& table, Json& out) {
  for (const auto& m : ms.models) {
    if (!m.dual_group()) continue;
    for (Bits x = 0; x < m.s_order(); ++x) {
      const Rational i = i_phi(m, x);
      out.push_back(identity("e_phi = i_phi [" + model_tag(m, x) + "]", e_phi(m, x, table), i));
      const Bits base = m.compose(0, m.r_part(x));
      if (base != x)
        out.push_back(identity("i_phi coset constancy [" + model_tag(m, x) + "]", i, i_phi(m, base)));
    }
  }
}

void chain_identities(const DiscreteModelSet& ms, const std::vector<EndoscopicDescriptor>& ds, const TestVector& f1,
                      const TestVector& f2, SigmaTable& table, Json& out) {
  const GaussianRational dp = discrete_part(ms, f1, f2);
  out.push_back(identity("discrete_part = stable_form", dp, stable_form(ms, f1, f2, table)));
  try {
    out.push_back(identity("endoscopic_form = discrete_part", endoscopic_form(ms, ds, f1, f2, table), dp));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InconsistentDescriptor) throw;
    out.push_back(identity("endoscopic_form = discrete_part", "InconsistentDescriptor", to_string(dp), false));
  }
}

void coefficient_identities(const DiscreteModelSet& ms, const std::vector<EndoscopicDescriptor>& ds,
                            SigmaTable& table, Json& out) {
  for (const auto& c : verify_descriptor_set(ms, ds).checks)
    out.push_back(identity("descriptor set: " + c.name, to_string(c.lhs), to_string(c.rhs), c.pass));
  for (const auto& d : ds) {
    const auto& m = ms.models[static_cast<std::size_t>(d.model)];
    const auto classes = elliptic_classes(m.dual_group()->components[d.x]);
    for (const auto& c : verify_coefficients(m, classes.at(d.class_index), d, table).checks)
      out.push_back(identity("coefficients [" + d.label + "]: " + c.name, to_string(c.lhs), to_string(c.rhs), c.pass));
  }
}

Json model_summary(const ParameterModel& m) {
  Json j;
  j["id"] = m.id();
  j["sM_dim"] = m.s_m().dimension;
  j["r_dim"] = m.r().dimension;
  j["dual_group"] = m.dual_group() ? Json(cartan_type(m.dual_group()->base)) : Json(nullptr);
  return j;
}

int emit(const Json& report, std::ostream& out) {
  out << report.dump(2) << '\n';
  return report["pass"].get<bool>() ? 0 : static_cast<int>(ExitCode::IdentityFailure);
}

int run_i_number(const RunConfig& c, std::ostream& out) {
  const auto tc = load_component(c);
  Json r;
  r["command"] = "i-number";
  r["group"] = cartan_type(tc.base);
  r["component"] = component_tag(tc);
  r["i"] = to_string(i_number(tc));
  out << r.dump(2) << '\n';
  return 0;
}

int run_elliptic(const RunConfig& c, std::ostream& out) {
  const auto tc = load_component(c);
  const auto classes = elliptic_classes(tc);
  if (c.format == "tsv") {
    out << "rep\torder\tpi0\tcentralizer\tcentral\n";
    for (const auto& s : classes) {
      std::string rep;
      for (std::size_t k = 0; k < s.rep.coords.size(); ++k) rep += (k ? "," : "") + to_string(s.rep.coords[k]);
      out << rep << '\t' << s.rep.order << '\t' << s.pi0 << '\t' << cartan_type(s.centralizer_datum) << '\t'
          << (s.central ? "true" : "false") << '\n';
    }
    return 0;
  }
  Json r;
  r["command"] = "elliptic";
  r["group"] = cartan_type(tc.base);
  r["component"] = component_tag(tc);
  r["classes"] = Json::array();
  for (const auto& s : classes) r["classes"].push_back(class_to_json(s));
  out << r.dump(2) << '\n';
  return 0;
}

int run_sigma(const RunConfig& c, std::ostream& out) {
  SigmaTable table;
  if (c.catalog) {
    out << "key\ttype\tsigma\n";
    for (const auto& name : catalog_datum_names()) {
      const auto d = *catalog_datum(name);
      out << canonical_key(d) << '\t' << cartan_type(d) << '\t' << to_string(sigma(d, table)) << '\n';
    }
    return 0;
  }
  const auto d = load_component(c).base;
  const Rational s = sigma(d, table);
  if (c.format == "tsv") {
    out << "key\ttype\tsigma\n" << canonical_key(d) << '\t' << cartan_type(d) << '\t' << to_string(s) << '\n';
    return 0;
  }
  Json r;
  r["command"] = "sigma";
  r["group"] = cartan_type(d);
  r["key"] = canonical_key(d);
  r["sigma"] = to_string(s);
  out << r.dump(2) << '\n';
  return 0;
}

int run_verify_ei(const RunConfig& c, std::ostream& out) {
  const auto tc = load_component(c);
  SigmaTable table;
  const auto rep = verify_ei(tc, table);
  Json r;
  r["command"] = "verify ei";
  r["group"] = cartan_type(tc.base);
  r["component"] = component_tag(tc);
  r["e"] = to_string(rep.e);
  r["i"] = to_string(rep.i);
  r["terms"] = Json::array();
  for (const auto& t : rep.terms) {
    Json j;
    j["rep"] = ratvec_to_json(t.rep.coords);
    j["pi0"] = t.pi0;
    j["centralizer"] = t.centralizer_type;
    j["sigma"] = to_string(t.sigma);
    r["terms"].push_back(j);
  }
  r["pass"] = rep.equal;
  return emit(r, out);
}

int run_central_quotient(const RunConfig& c, std::ostream& out) {
  const auto d = load_component(c).base;
  std::vector<RatVec> gens;
  if (c.generators) {
    Json g;
    const std::string& src = *c.generators;
    if (!src.empty() && src.front() == '[') {
      try {
        g = Json::parse(src);
      } catch (const Json::parse_error& e) {
        throw CliError(ExitCode::MalformedJson, std::string("--generators: ") + e.what());
      }
    } else {
      g = read_source(src, false);
    }
    if (!g.is_array()) throw Error(ErrorKind::MalformedInput, "generators: expected an array of rational vectors");
    for (const auto& v : g) gens.push_back(ratvec_from_json(v));
  } else {
    gens = center_generators(d);
  }
  const auto z = make_central_subgroup(d, gens);
  SigmaTable table;
  const auto rep = verify_central_quotient(d, z, table);
  Json r;
  r["command"] = "verify central-quotient";
  r["group"] = cartan_type(d);
  r["generators"] = Json::array();
  for (const auto& g : z.generators) r["generators"].push_back(ratvec_to_json(g));
  r["order"] = rep.order;
  r["quotient"] = cartan_type(quotient_by_central(d, z).datum);
  r["sigma"] = to_string(rep.sigma_d);
  r["sigma_quotient"] = to_string(rep.sigma_quotient);
  r["pass"] = rep.holds;
  return emit(r, out);
}

ModelFile load_models(const std::string& source) { return model_file_from_json(read_source(source, models_name(source))); }

int run_packets(const RunConfig& c, std::ostream& out) {
  const ModelFile file = load_models(c.models);
  const auto& ms = file.models;
  std::mt19937_64 rng(c.seed);
  std::vector<TestVector> vectors;
  for (int k = 0; k < c.trials; ++k) vectors.push_back(random_vector(ms, rng));
  SigmaTable table;
  Json r;
  r["command"] = "packets verify";
  r["seed"] = c.seed;
  r["trials"] = c.trials;
  r["models"] = Json::array();
  bool pass = true;
  for (const auto& m : ms.models) {
    Json j = model_summary(m);
    Json checks = Json::array();
    checks.push_back(identity("adjoint relations", "", "", verify_adjoint(m)));
    checks.push_back(identity("closed forms", "", "", routes_agree(m)));
    std::size_t bad = 0;
    for (const auto& f : vectors) {
      std::map<Tau, GaussianRational> theta;
      for (const auto& tau : m.taus()) theta[tau] = theta_transfer(m, tau, f);
      for (Bits x = 0; x < m.s_order(); ++x)
        if (invert_transfer(m, x, theta) != f.at(m.id(), x)) ++bad;
    }
    checks.push_back(identity("transfer round trip", std::to_string(bad) + " mismatches", "0 mismatches", bad == 0));
    phi_identities(DiscreteModelSet{{m}}, table, checks);
    if (m.dual_group()) {
      Json iphi;
      for (Bits x = 0; x < m.s_order(); ++x)
        iphi[bits_to_string(x, m.s_m().dimension + m.r().dimension)] = to_string(i_phi(m, x));
      j["i_phi"] = iphi;
    }
    j["checks"] = checks;
    pass = pass && all_pass(checks);
    r["models"].push_back(j);
  }
  r["pass"] = pass;
  return emit(r, out);
}

int run_stabilize(const RunConfig& c, std::ostream& out) {
  const ModelFile file = load_models(c.models);
  const auto& ms = file.models;
  const auto ds = file.descriptors ? *file.descriptors : default_descriptors(ms);
  SigmaTable table;
  Json r;
  r["command"] = "stabilize verify";
  r["seed"] = c.seed;
  r["trials"] = c.trials;
  r["models"] = Json::array();
  for (const auto& m : ms.models) r["models"].push_back(model_summary(m));

  Json fixture = Json::array();
  const auto one = constant_vector(ms, GaussianRational{1, 0});
  chain_identities(ms, ds, one, one, table, fixture);
  coefficient_identities(ms, ds, table, fixture);
  phi_identities(ms, table, fixture);
  bool pass = all_pass(fixture);
  r["fixture"] = fixture;

  std::mt19937_64 rng(c.seed);
  Json trials = Json::array();
  for (int k = 0; k < c.trials; ++k) {
    Json t;
    t["index"] = k;
    Json ids = Json::array();
    const auto f1 = random_vector(ms, rng);
    const auto f2 = random_vector(ms, rng);
    chain_identities(ms, ds, f1, f2, table, ids);
    DiscreteModelSet rs;
    rs.models.push_back(random_model(0, rng));
    const auto g1 = random_vector(rs, rng);
    const auto g2 = random_vector(rs, rng);
    const auto rds = default_descriptors(rs);
    Json rids = Json::array();
    chain_identities(rs, rds, g1, g2, table, rids);
    coefficient_identities(rs, rds, table, rids);
    phi_identities(rs, table, rids);
    t["identities"] = ids;
    t["random_model"] = model_summary(rs.models[0]);
    t["random_model_identities"] = rids;
    pass = pass && all_pass(ids) && all_pass(rids);
    trials.push_back(t);
  }
  r["random_trials"] = trials;
  r["pass"] = pass;
  return emit(r, out);
}

int run_report(const RunConfig& c, std::ostream& out) {
  SigmaTable table;
  Json r;
  r["command"] = "report";
  bool pass = true;
  r["sigma"] = Json::array();
  for (const auto& name : catalog_datum_names()) {
    const auto d = *catalog_datum(name);
    Json j;
    j["name"] = name;
    j["type"] = cartan_type(d);
    j["sigma"] = to_string(sigma(d, table));
    r["sigma"].push_back(j);
  }
  r["ei"] = Json::array();
  for (const auto& name : catalog_component_names()) {
    const auto tc = *catalog_component(name);
    const auto rep = verify_ei(tc, table);
    Json j;
    j["name"] = name;
    j["elliptic_classes"] = rep.terms.size();
    j["e"] = to_string(rep.e);
    j["i"] = to_string(rep.i);
    j["pass"] = rep.equal;
    pass = pass && rep.equal;
    r["ei"].push_back(j);
  }
  DiscreteModelSet ms;
  for (const auto& name : catalog_model_names())
    ms.models.push_back(*catalog_model(name, static_cast<int>(ms.models.size())));
  const auto ds = default_descriptors(ms);
  Json ids = Json::array();
  std::mt19937_64 rng(c.seed);
  const auto one = constant_vector(ms, GaussianRational{1, 0});
  chain_identities(ms, ds, one, one, table, ids);
  const auto f1 = random_vector(ms, rng);
  const auto f2 = random_vector(ms, rng);
  chain_identities(ms, ds, f1, f2, table, ids);
  phi_identities(ms, table, ids);
  r["stabilization"] = ids;
  r["pass"] = pass && all_pass(ids);
  return emit(r, out);
}

void error_object(std::ostream& os, const std::string& kind, const std::string& message) {
  Json e;
  e["error"]["kind"] = kind;
  e["error"]["message"] = message;
  os << e.dump(2) << '\n';
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig cfg;
  CLI::App app{"Exact spectral coefficients and stabilization identities", "lts"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--threads", cfg.threads, "worker threads for module internals (0: all cores)");

  auto group_opts = [&](CLI::App* s, bool theta) {
    s->add_option("--group", cfg.group, "group JSON file or catalog name")->required();
    if (theta) s->add_option("--theta", cfg.theta, "theta matrix JSON file");
  };
  auto seeded = [&](CLI::App* s, const char* models_flag) {
    s->add_option(models_flag, cfg.models, "model JSON file or catalog model name")->required();
    s->add_option("--trials", cfg.trials)->check(CLI::PositiveNumber);
    s->add_option("--seed", cfg.seed);
    s->add_option("--format", cfg.format)->check(CLI::IsMember({"json"}));
  };

  auto* inum = app.add_subcommand("i-number", "the number i for a group component");
  group_opts(inum, true);
  auto* ell = app.add_subcommand("elliptic", "elliptic semisimple classes");
  group_opts(ell, true);
  ell->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "tsv"}));
  auto* sig = app.add_subcommand("sigma", "sigma constant of a group, or the catalog table");
  auto* sig_group = sig->add_option("--group", cfg.group, "group JSON file or catalog name");
  auto* sig_cat = sig->add_flag("--catalog", cfg.catalog, "all built-in groups (TSV)");
  sig_group->excludes(sig_cat);
  sig->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "tsv"}));

  auto* ver = app.add_subcommand("verify", "identity checks");
  ver->require_subcommand(1, 1);
  auto* ver_ei = ver->add_subcommand("ei", "e = i");
  group_opts(ver_ei, true);
  auto* ver_cq = ver->add_subcommand("central-quotient", "sigma under a central quotient");
  group_opts(ver_cq, false);
  ver_cq->add_option("--generators", cfg.generators, "JSON file or inline JSON list of torus points");
  auto* ver_st = ver->add_subcommand("stabilization", "same as stabilize verify");
  seeded(ver_st, "--models");

  auto* pk = app.add_subcommand("packets", "packet algebra");
  pk->require_subcommand(1, 1);
  auto* pk_ver = pk->add_subcommand("verify", "transfer and adjoint factor checks");
  seeded(pk_ver, "--model");
  auto* st = app.add_subcommand("stabilize", "stabilization chain");
  st->require_subcommand(1, 1);
  auto* st_ver = st->add_subcommand("verify", "discrete part = stable form = endoscopic form");
  seeded(st_ver, "--models");
  auto* rep = app.add_subcommand("report", "catalog summary");
  rep->add_option("--seed", cfg.seed);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw CliError(ExitCode::Ok, app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw CliError(ExitCode::Ok, app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    throw CliError(ExitCode::UnknownSubcommand, e.what());
  }

  if (inum->parsed()) cfg.subcommand = "i-number";
  else if (ell->parsed()) cfg.subcommand = "elliptic";
  else if (sig->parsed()) cfg.subcommand = "sigma";
  else if (ver_ei->parsed()) cfg.subcommand = "verify ei";
  else if (ver_cq->parsed()) cfg.subcommand = "verify central-quotient";
  else if (ver_st->parsed() || st_ver->parsed()) cfg.subcommand = "stabilize verify";
  else if (pk_ver->parsed()) cfg.subcommand = "packets verify";
  else if (rep->parsed()) cfg.subcommand = "report";
  else throw CliError(ExitCode::UnknownSubcommand, "no subcommand");

  if (cfg.subcommand == "sigma" && !cfg.catalog && cfg.group.empty())
    throw CliError(ExitCode::UnknownSubcommand, "sigma: one of --group or --catalog is required");

  if (const char* env = std::getenv("LTS_THREADS")) {
    try {
      std::size_t pos = 0;
      const unsigned long v = std::stoul(env, &pos);
      if (pos != std::string(env).size()) throw std::invalid_argument(env);
      cfg.threads = static_cast<unsigned>(v);
    } catch (const std::exception&) {
      throw CliError(ExitCode::UnknownSubcommand, std::string("LTS_THREADS: not a thread count: ") + env);
    }
  }

  if (!cfg.group.empty()) require_source(cfg.group, group_name(cfg.group));
  if (cfg.theta) require_source(*cfg.theta, false);
  if (!cfg.models.empty()) require_source(cfg.models, models_name(cfg.models));
  if (cfg.generators && !cfg.generators->empty() && cfg.generators->front() != '[') require_source(*cfg.generators, false);
  return cfg;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  set_thread_count(c.threads);
  try {
    if (c.subcommand == "i-number") return run_i_number(c, out);
    if (c.subcommand == "elliptic") return run_elliptic(c, out);
    if (c.subcommand == "sigma") return run_sigma(c, out);
    if (c.subcommand == "verify ei") return run_verify_ei(c, out);
    if (c.subcommand == "verify central-quotient") return run_central_quotient(c, out);
    if (c.subcommand == "packets verify") return run_packets(c, out);
    if (c.subcommand == "stabilize verify") return run_stabilize(c, out);
    if (c.subcommand == "report") return run_report(c, out);
    throw CliError(ExitCode::UnknownSubcommand, "unknown subcommand '" + c.subcommand + "'");
  } catch (const CliError& e) {
    error_object(err, e.code() == ExitCode::MissingFile ? "MissingFile"
                      : e.code() == ExitCode::MalformedJson ? "MalformedJson"
                                                            : "UnknownSubcommand",
                 e.what());
    return static_cast<int>(e.code());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::MalformedInput) {
      error_object(err, "MalformedJson", e.what());
      return static_cast<int>(ExitCode::MalformedJson);
    }
    error_object(out, std::string(error_kind_name(e.kind())), e.what());
    return static_cast<int>(ExitCode::ModuleError);
  } catch (const std::overflow_error& e) {
    error_object(out, "Overflow", e.what());
    return static_cast<int>(ExitCode::ModuleError);
  }
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_args(args);
  } catch (const CliError& e) {
    if (e.code() == ExitCode::Ok) {
      out << e.what();
      return 0;
    }
    error_object(err, e.code() == ExitCode::MissingFile ? "MissingFile" : "UnknownSubcommand", e.what());
    return static_cast<int>(e.code());
  }
  return run(cfg, out, err);
}

}  // namespace lts
